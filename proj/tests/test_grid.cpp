#include <cmath>

#include "doctest.h"
#include "isolab/analytic.hpp"
#include "isolab/expr.hpp"
#include "isolab/grid.hpp"

using namespace isolab;

namespace {

ConformalGrid small_grid() { return {0.0, 0.0, 0.1, 0.1, 11, 11}; }

double field_max(const SampledField<double>& f) {
  double m = 0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("sampling expressions and catalog maps") {
  ConformalGrid g = small_grid();
  SampledField<Complex> z = sample(parse_expr("z"), g);
  CHECK(z.at(3, 7) == g.z(3, 7));

  SampledField<ImPoint> cyl = sample(catalog_surface("cylinder"), g);
  for (int q = 0; q < g.nv; ++q)
    for (int p = 0; p < g.nu; ++p)
      CHECK(cyl.at(p, q).norm() ==
            doctest::Approx(std::sqrt(1 + g.v(q) * g.v(q))).epsilon(1e-12));

  ConformalGrid with_zero{-0.2, -0.2, 0.1, 0.1, 5, 5};
  try {
    sample(parse_expr("1/z"), with_zero);
    FAIL("expected PoleOnGridError");
  } catch (const PoleOnGridError& e) {
    CHECK(e.node_p() == 2);
    CHECK(e.node_q() == 2);
  }
}

TEST_CASE("partial derivatives: exactness, convergence, boundaries") {
  ConformalGrid g = small_grid();
  SampledField<double> lin = sample_nodes<double>(g, [&](int p, int) { return g.u(p); });
  SampledField<double> du = partial(lin, Axis::u);
  for (double v : du.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  SampledField<double> cst = sample_nodes<double>(g, [](int, int) { return 4.2; });
  CHECK(field_max(partial(cst, Axis::v)) < 1e-13);

  auto err_at = [](const ConformalGrid& grid) {
    SampledField<double> s =
        sample_nodes<double>(grid, [&](int p, int) { return std::sin(grid.u(p)); });
    SampledField<double> ds = partial(s, Axis::u);
    double m = 0;
    for (int q = 0; q < grid.nv; ++q)
      for (int p = 0; p < grid.nu; ++p)
        m = std::max(m, std::abs(ds.at(p, q) - std::cos(grid.u(p))));
    return m;
  };
  double e1 = err_at(small_grid());
  double e2 = err_at(small_grid().refined());
  CHECK(e1 / e2 >= 3.5);

  SampledField<double> sq = sample_nodes<double>(g, [&](int p, int) { return g.u(p) * g.u(p); });
  SampledField<double> d2 = second_partial(sq, Axis::u);
  for (double v : d2.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("one-form integration: exact form, non-closed form, transposed path") {
  ConformalGrid g = small_grid();
  OneForm<double> duv(g);
  for (int q = 0; q < g.nv; ++q)
    for (int p = 0; p < g.nu; ++p) {
      duv.cu[g.index(p, q)] = g.v(q);  // d(uv) = v du + u dv
      duv.cv[g.index(p, q)] = g.u(p);
    }
  auto res = integrate_one_form(duv, 0.0);
  CHECK(res.closedness.max < 1e-12);
  CHECK(res.path_dependence < 1e-12);
  for (int q = 0; q < g.nv; ++q)
    for (int p = 0; p < g.nu; ++p)
      CHECK(res.field.at(p, q) == doctest::Approx(g.u(p) * g.v(q)).epsilon(1e-12));

  OneForm<double> vdu(g);
  for (int q = 0; q < g.nv; ++q)
    for (int p = 0; p < g.nu; ++p) vdu.cu[g.index(p, q)] = g.v(q);
  auto bad = integrate_one_form(vdu, 0.0);
  CHECK(bad.closedness.max == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("analytic Simpson integration beats trapezoid on smooth forms") {
  ConformalGrid g = small_grid();
  // alpha = d(sin u cosh v)
  std::function<void(double, double, double&, double&)> form = [](double u, double v, double& au,
                                                                  double& av) {
    au = std::cos(u) * std::cosh(v);
    av = std::sin(u) * std::sinh(v);
  };
  SampledField<double> F = integrate_form_analytic<double>(g, 0.0, form);
  double m = 0;
  for (int q = 0; q < g.nv; ++q)
    for (int p = 0; p < g.nu; ++p)
      m = std::max(m, std::abs(F.at(p, q) - std::sin(g.u(p)) * std::cosh(g.v(q))));
  CHECK(m < 1e-8);
}

TEST_CASE("cauchy-riemann residual of holomorphic samples converges") {
  auto residual = [](const ConformalGrid& grid) {
    return cauchy_riemann_residual(sample(parse_expr("exp(z)*cos(z)"), grid)).max;
  };
  double r1 = residual(small_grid());
  double r2 = residual(small_grid().refined());
  CHECK(r1 / r2 >= 3.5);
}

TEST_CASE("translation constancy") {
  ConformalGrid g = small_grid();
  SampledField<ImPoint> a = sample(catalog_surface("cylinder"), g);
  SampledField<ImPoint> b = map_field(a, [](const ImPoint& p) { return p + ImPoint{1, 2, 3}; });
  TranslationStat st = translation_constancy(b, a);
  CHECK((st.mean - ImPoint{1, 2, 3}).norm() < 1e-13);
  CHECK(st.deviation < 1e-13);

  st = translation_constancy(a, a);
  CHECK(st.mean.norm() < 1e-15);
  CHECK(st.deviation < 1e-15);

  SampledField<ImPoint> twice = map_field(a, [](const ImPoint& p) { return 2.0 * p; });
  CHECK(translation_constancy(twice, a).deviation > 0.1);
}

TEST_CASE("path integration escapes blow up cleanly") {
  ConformalGrid g{0, 0, 0.5, 0.5, 8, 8};
  auto rhs = [](double, double, double, double, const std::array<double, 1>& y,
                std::array<double, 1>& dy) { dy[0] = y[0] * y[0]; };
  PathOptions opt;
  opt.substeps_per_edge = 4;
  CHECK_THROWS_AS(integrate_path<1>(g, {2.0}, opt, rhs), EscapeError);
}

TEST_CASE("constant-coefficient linear flow matches exp") {
  // d a = -2 t c a dz with constant c: a = exp(-2 t c z)
  ConformalGrid g{0, 0, 0.05, 0.05, 11, 11};
  double t = 0.7;
  Complex cc{0.3, -0.4};
  auto rhs = [&](double, double, double tu, double tv, const std::array<double, 2>& y,
                 std::array<double, 2>& dy) {
    Complex a = unpack_complex(y.data());
    pack(-2.0 * t * cc * a * Complex(tu, tv), dy.data());
  };
  PathOptions opt;
  opt.substeps_per_edge = 5;
  std::array<double, 2> seed;
  pack(Complex(1.0), seed.data());
  auto states = integrate_path<2>(g, seed, opt, rhs);
  double m = 0;
  for (int q = 0; q < g.nv; ++q)
    for (int p = 0; p < g.nu; ++p) {
      Complex expect = std::exp(-2.0 * t * cc * g.z(p, q));
      m = std::max(m, std::abs(unpack_complex(states[g.index(p, q)].data()) - expect));
    }
  CHECK(m < 1e-10);
}
