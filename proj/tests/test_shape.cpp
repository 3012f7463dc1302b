#include <cmath>

#include "doctest.h"
#include "isolab/analytic.hpp"
#include "isolab/shape.hpp"

using namespace isolab;

namespace {

ConformalGrid patch() { return {0.2, 0.2, 0.05, 0.05, 21, 21}; }

double vmax(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("plane") {
  ShapeData sd = shape_analysis(sample(catalog_surface("plane"), patch()));
  CHECK(vmax(sd.H) < 1e-10);
  CHECK(vmax(sd.K) < 1e-10);
  for (const ImPoint& n : sd.normal) CHECK(std::abs(std::abs(n.x3) - 1.0) < 1e-12);
}

TEST_CASE("cylinder: principal curvatures {-1, 0} with outward normal") {
  SampledField<ImPoint> f = sample(catalog_surface("cylinder"), patch());
  ShapeData sd = shape_analysis(f);
  for (int i = 0; i < f.grid.count(); ++i) {
    CHECK(sd.kappa1[i] == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-6));
    CHECK(sd.kappa2[i] == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(std::abs(sd.H[i] + 0.5) < 1e-6);
    CHECK(std::abs(sd.K[i]) < 1e-6);
    // outward normal: aligned with (cos u, sin u, 0)
    const ImPoint& p = f.values[i];
    CHECK(dot(sd.normal[i], {p.x1, p.x2, 0}) > 0.99);
  }
}

TEST_CASE("mercator sphere: K = 1, |H| = 1, conformality O(h^2)") {
  auto run = [](const ConformalGrid& g) {
    ShapeData sd = shape_analysis(sample(catalog_surface("mercator-sphere"), g));
    double kerr = 0, herr = 0;
    for (std::size_t i = 0; i < sd.K.size(); ++i) {
      kerr = std::max(kerr, std::abs(sd.K[i] - 1.0));
      herr = std::max(herr, std::abs(std::abs(sd.H[i]) - 1.0));
    }
    return std::array<double, 3>{kerr, herr, vmax(sd.conformality)};
  };
  auto base = run(patch());
  auto fine = run(patch().refined());
  CHECK(base[0] < 5e-3);
  CHECK(base[1] < 5e-3);
  CHECK(base[2] < 5e-3);
  CHECK(base[0] / fine[0] >= 3.5);
  CHECK(base[2] / fine[2] >= 3.5);
}

TEST_CASE("curvature identities") {
  ShapeData sd = shape_analysis(sample(catalog_surface("enneper"), {0, 0, 0.05, 0.05, 21, 21}));
  for (std::size_t i = 0; i < sd.H.size(); ++i) {
    CHECK(sd.H[i] * sd.H[i] - sd.K[i] >= -1e-8);
    CHECK(std::abs(sd.kappa1[i] * sd.kappa2[i] - sd.K[i]) <=
          1e-8 * (1 + std::abs(sd.K[i])));
    CHECK(std::abs(sd.kappa1[i] + sd.kappa2[i] - 2 * sd.H[i]) <=
          1e-8 * (1 + std::abs(sd.H[i])));
  }
}

TEST_CASE("degenerate immersion reports the node") {
  ConformalGrid g{0, 0, 0.1, 0.1, 5, 5};
  SampledField<ImPoint> flat = sample_nodes<ImPoint>(g, [](int, int) { return ImPoint{}; });
  CHECK_THROWS_AS(shape_analysis(flat), DegenerateMetricError);
}

TEST_CASE("mean curvature with a prescribed normal flips the sign") {
  SampledField<ImPoint> f = sample(catalog_surface("mercator-sphere"), patch());
  ShapeData sd = shape_analysis(f);
  SampledField<ImPoint> inward = map_field(f, [](const ImPoint& p) { return -p; });
  std::vector<double> h = mean_curvature_with_normal(sd, inward);
  for (double v : h) CHECK(v == doctest::Approx(1.0).epsilon(5e-3));
}
