#include <cmath>
#include <random>

#include "doctest.h"
#include "isolab/expr.hpp"

using namespace isolab;

TEST_CASE("parse basics") {
  CHECK(parse_expr("z").eval({2, 3}) == Complex(2, 3));
  Expr e = parse_expr("z - tanh(z - 1)");
  CHECK(std::abs(e.eval(1.0) - Complex(1.0)) < 1e-15);  // tanh(0) = 0
  CHECK(std::abs(e.eval(0.0) - (0.0 - std::tanh(Complex(-1.0)))) < 1e-15);
  CHECK(std::abs(parse_expr("1+2*i").eval(0.0) - Complex(1, 2)) < 1e-15);
  CHECK_THROWS_AS(parse_expr("2i"), ParseError);  // implicit products are not in the grammar
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_expr("(");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse_expr("frobnicate(z)"), ParseError);
  CHECK_THROWS_AS(parse_expr("z +"), ParseError);
  CHECK_THROWS_AS(parse_expr("z ^ w"), ParseError);
}

TEST_CASE("evaluation oracles") {
  CHECK(std::abs(parse_expr("z^2").eval({1, 1}) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(parse_expr("exp(z)").eval({0, M_PI}) - Complex(-1, 0)) < 1e-14);
  double e2 = std::exp(2.0);
  CHECK(std::abs(parse_expr("tanh(z)").eval(1.0) - (e2 - 1) / (e2 + 1)) < 1e-15);
}

TEST_CASE("pole errors carry the point") {
  try {
    parse_expr("1/z").eval({0, 0});
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(e.at() == Complex(0, 0));
  }
  CHECK_THROWS_AS(parse_expr("log(z)").eval({0, 0}), PoleError);
  CHECK_THROWS_AS(parse_expr("z^-1").eval({0, 0}), PoleError);
}

TEST_CASE("analytic derivative") {
  CHECK(parse_expr("z^2").derivative().print() == "2*z");
  double t1 = std::tanh(1.0);
  CHECK(std::abs(parse_expr("tanh(z)").derivative().eval(1.0) - (1 - t1 * t1)) < 1e-15);
  CHECK(std::abs(parse_expr("tanh(z)").derivative().eval(1.0) - 0.41997434161402614) < 1e-12);
}

TEST_CASE("derivative matches central finite differences at O(h^2)") {
  const char* exprs[] = {"z^3 - 2*z",      "exp(z)*sin(z)", "tanh(z - 1)",
                         "1/(z + 4)",      "sqrt(z + 5)",   "log(z + 5)",
                         "cos(z)*sinh(z)", "z - tanh(z + 1)"};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (const char* s : exprs) {
    Expr e = parse_expr(s);
    Expr de = e.derivative();
    for (int k = 0; k < 20; ++k) {
      Complex z{u(rng), u(rng)};
      double h = 1e-5;
      Complex fd = (e.eval(z + Complex(h)) - e.eval(z - Complex(h))) / (2 * h);
      CHECK(std::abs(de.eval(z) - fd) < 1e-8);
    }
  }
}

TEST_CASE("sum and product rules") {
  Expr a = parse_expr("exp(z)"), b = parse_expr("z^2 + 1");
  Expr sum = parse_expr("exp(z) + z^2 + 1").derivative();
  Expr prod = parse_expr("exp(z)*(z^2 + 1)").derivative();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 50; ++k) {
    Complex z{u(rng), u(rng)};
    Complex da = a.derivative().eval(z), db = b.derivative().eval(z);
    CHECK(std::abs(sum.eval(z) - (da + db)) < 1e-10);
    CHECK(std::abs(prod.eval(z) - (da * b.eval(z) + a.eval(z) * db)) < 1e-10);
  }
}

TEST_CASE("print round-trips through the parser") {
  const char* exprs[] = {"z - tanh(z - 1)", "(1+2*i)*z^3 - z/(z+4)", "exp(z)*cos(z) - sqrt(z+9)",
                         "-z^2 + tan(z/4)"};
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (const char* s : exprs) {
    Expr e = parse_expr(s);
    Expr r = parse_expr(e.print());
    Expr dr = parse_expr(e.derivative().print());
    for (int k = 0; k < 100; ++k) {
      Complex z{u(rng), u(rng)};
      CHECK(std::abs(e.eval(z) - r.eval(z)) < 1e-14);
      CHECK(std::abs(e.derivative().eval(z) - dr.eval(z)) < 1e-14);
    }
  }
}

TEST_CASE("catalog presets") {
  bool found_enneper = false;
  for (const auto& p : weierstrass_presets())
    if (p.name == "enneper") {
      found_enneper = true;
      CHECK(std::abs(parse_expr(p.g).eval({0.5, 0.5}) - Complex(0.5, 0.5)) < 1e-15);
      CHECK(std::abs(parse_expr(p.h).eval({0.5, 0.5}) - Complex(1.0, 1.0)) < 1e-15);
    }
  CHECK(found_enneper);
  Expr ghat = tanh_darboux_ghat({-1, 0});
  CHECK(std::abs(ghat.eval(0.0) - (-std::tanh(1.0))) < 1e-15);
  CHECK(std::abs(ghat.eval(1.0) - (1.0 - std::tanh(2.0))) < 1e-15);
}
