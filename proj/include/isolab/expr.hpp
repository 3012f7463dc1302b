#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "isolab/errors.hpp"

namespace isolab {

using Complex = std::complex<double>;

// Holomorphic expression in one complex variable z.  Trees are immutable after
// construction; evaluation is pure, so fields can be sampled in parallel.
class Expr {
public:
  Expr() = default;

  Complex eval(Complex z) const;
  Expr derivative() const;
  std::string print() const;
  bool valid() const { return node_ != nullptr; }

  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const std::shared_ptr<const Node>& node() const { return node_; }

private:
  std::shared_ptr<const Node> node_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 'i' | 'z' | func '(' expr ')' | '(' expr ')' | '-' base
// Exponents are integers only; general powers are written exp(w*log(z)).
// Functions: exp log sin cos tan sinh cosh tanh sqrt.
Expr parse_expr(const std::string& text);

Expr expr_constant(Complex c);
Expr expr_variable();

// Named Weierstrass data sets used by the closed-form oracles.
struct NamedWeierstrass {
  std::string name;
  std::string g, h;
  std::string description;
};
const std::vector<NamedWeierstrass>& weierstrass_presets();

// ghat(z) = z - tanh(z - z0): the closed-form solution of the spectral
// Riccati flow for the Enneper data at t = 1/2.
Expr tanh_darboux_ghat(Complex z0);

}  // namespace isolab
