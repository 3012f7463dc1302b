#pragma once

#include <string>
#include <vector>

namespace isolab {

struct CheckResult {
  std::string name;
  double value = 0;
  double bound = 0;
  bool lower_is_bound = false;  // true for order checks: pass iff value >= bound
  bool pass = false;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

// Desk-scale verification suite; names accepted by `isolab verify`:
//   christoffel duality weierstrass riccati minimal-pair bianchi
//   main-theorem curved-flat algebra determinism
CriterionResult verify_christoffel();       // 1
CriterionResult verify_duality();           // 2
CriterionResult verify_weierstrass();       // 3
CriterionResult verify_riccati();           // 4
CriterionResult verify_minimal_pair();      // 5
CriterionResult verify_bianchi_diagram();   // 6
CriterionResult verify_main_diagram();      // 7
CriterionResult verify_curved_flat();       // 8
CriterionResult verify_algebra();           // 9
CriterionResult verify_determinism();       // 10

std::vector<CriterionResult> verify_all();
CriterionResult verify_by_name(const std::string& name);
const std::vector<std::string>& verify_names();

}  // namespace isolab
