#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isolab {

// Tolerance class a residual is judged against (see runner defaults).
enum class TolClass { fd, ode, algebraic };

const char* tol_class_name(TolClass c);
TolClass tol_class_from_name(const std::string& name);

// Named diagnostic attached to every verification operation.
struct ResidualReport {
  std::string name;
  double max = 0;
  double mean = 0;
  double spacing = 0;
  std::optional<double> order_estimate;
  TolClass tol_class = TolClass::fd;
};

ResidualReport make_report(std::string name, std::span<const double> values, double spacing,
                           TolClass cls = TolClass::fd);

// order = log2(coarse/fine) for residuals from a run and its half-spacing rerun.
double order_from_pair(double coarse, double fine);

}  // namespace isolab
