#include "isolab/analytic.hpp"

#include <cmath>

namespace isolab {

namespace {

AnalyticSurface make_plane() {
  AnalyticSurface s;
  s.name = "plane";
  s.value = [](double u, double v) { return ImPoint{u, v, 0}; };
  s.deriv_u = [](double, double) { return ImPoint{1, 0, 0}; };
  s.deriv_v = [](double, double) { return ImPoint{0, 1, 0}; };
  return s;
}

AnalyticSurface make_cylinder() {
  AnalyticSurface s;
  s.name = "cylinder";
  s.value = [](double u, double v) { return ImPoint{std::cos(u), std::sin(u), v}; };
  s.deriv_u = [](double u, double) { return ImPoint{-std::sin(u), std::cos(u), 0}; };
  s.deriv_v = [](double, double) { return ImPoint{0, 0, 1}; };
  return s;
}

AnalyticSurface make_mercator_sphere() {
  AnalyticSurface s;
  s.name = "mercator-sphere";
  s.value = [](double u, double v) {
    double sv = 1.0 / std::cosh(v);
    return ImPoint{sv * std::cos(u), sv * std::sin(u), std::tanh(v)};
  };
  s.deriv_u = [](double u, double v) {
    double sv = 1.0 / std::cosh(v);
    return ImPoint{-sv * std::sin(u), sv * std::cos(u), 0};
  };
  s.deriv_v = [](double u, double v) {
    double sv = 1.0 / std::cosh(v), tv = std::tanh(v);
    return ImPoint{-sv * tv * std::cos(u), -sv * tv * std::sin(u), sv * sv};
  };
  return s;
}

AnalyticSurface make_catenoid() {
  AnalyticSurface s;
  s.name = "catenoid";
  s.value = [](double u, double v) {
    return ImPoint{-std::cosh(v) * std::cos(u), -std::cosh(v) * std::sin(u), v};
  };
  s.deriv_u = [](double u, double v) {
    return ImPoint{std::cosh(v) * std::sin(u), -std::cosh(v) * std::cos(u), 0};
  };
  s.deriv_v = [](double u, double v) {
    return ImPoint{-std::sinh(v) * std::cos(u), -std::sinh(v) * std::sin(u), 1};
  };
  return s;
}

AnalyticSurface make_enneper() {
  AnalyticSurface s;
  s.name = "enneper";
  s.value = [](double u, double v) {
    Complex z(u, v);
    Complex z3 = z * z * z;
    return ImPoint{(z * z).real(), (z - z3 / 3.0).real(), (z + z3 / 3.0).imag()};
  };
  s.deriv_u = [](double u, double v) {
    Complex z(u, v);
    Complex a = 2.0 * z, b = 1.0 - z * z, c = 1.0 + z * z;
    return ImPoint{a.real(), b.real(), c.imag()};
  };
  s.deriv_v = [](double u, double v) {
    Complex z(u, v);
    Complex a = 2.0 * z, b = 1.0 - z * z, c = 1.0 + z * z;
    return ImPoint{-a.imag(), -b.imag(), c.real()};
  };
  return s;
}

// Unit-sphere Gauss map of the Enneper surface, n = ((1-r^2), -2u, 2v)/(1+r^2).
AnalyticSurface make_enneper_gauss() {
  AnalyticSurface s;
  s.name = "enneper-gauss";
  s.value = [](double u, double v) {
    double r2 = u * u + v * v, d = 1.0 + r2;
    return ImPoint{(1.0 - r2) / d, -2.0 * u / d, 2.0 * v / d};
  };
  s.deriv_u = [](double u, double v) {
    double r2 = u * u + v * v, d2 = (1.0 + r2) * (1.0 + r2);
    return ImPoint{-4.0 * u / d2, (-2.0 - 2.0 * r2 + 4.0 * u * u) / d2, -4.0 * u * v / d2};
  };
  s.deriv_v = [](double u, double v) {
    double r2 = u * u + v * v, d2 = (1.0 + r2) * (1.0 + r2);
    return ImPoint{-4.0 * v / d2, 4.0 * u * v / d2, (2.0 + 2.0 * r2 - 4.0 * v * v) / d2};
  };
  return s;
}

}  // namespace

const std::vector<std::string>& catalog_surface_names() {
  static const std::vector<std::string> names = {"plane",    "cylinder", "mercator-sphere",
                                                 "catenoid", "enneper",  "enneper-gauss"};
  return names;
}

std::string catalog_surface_description(const std::string& name) {
  if (name == "plane") return "flat plane (u, v, 0)";
  if (name == "cylinder") return "unit cylinder (cos u, sin u, v)";
  if (name == "mercator-sphere") return "unit sphere in Mercator coordinates";
  if (name == "catenoid") return "catenoid (-cosh v cos u, -cosh v sin u, v)";
  if (name == "enneper") return "Enneper minimal surface, closed form";
  if (name == "enneper-gauss") return "unit-sphere Gauss map of the Enneper surface";
  throw ValidationError("unknown catalog surface '" + name + "'");
}

AnalyticSurface catalog_surface(const std::string& name) {
  if (name == "plane") return make_plane();
  if (name == "cylinder") return make_cylinder();
  if (name == "mercator-sphere") return make_mercator_sphere();
  if (name == "catenoid") return make_catenoid();
  if (name == "enneper") return make_enneper();
  if (name == "enneper-gauss") return make_enneper_gauss();
  throw ValidationError("unknown catalog surface '" + name + "'");
}

AnalyticSurface scaled(const AnalyticSurface& s, double factor, const std::string& name) {
  AnalyticSurface out;
  out.name = name;
  auto val = s.value, du = s.deriv_u, dv = s.deriv_v;
  out.value = [val, factor](double u, double v) { return factor * val(u, v); };
  out.deriv_u = [du, factor](double u, double v) { return factor * du(u, v); };
  out.deriv_v = [dv, factor](double u, double v) { return factor * dv(u, v); };
  return out;
}

AnalyticSurface catalog_formula_dual(const std::string& name) {
  if (name == "cylinder") {
    AnalyticSurface s;
    s.name = "cylinder-dual";
    s.value = [](double u, double v) { return ImPoint{-std::cos(u), -std::sin(u), v}; };
    s.deriv_u = [](double u, double) { return ImPoint{std::sin(u), -std::cos(u), 0}; };
    s.deriv_v = [](double, double) { return ImPoint{0, 0, 1}; };
    return s;
  }
  if (name == "mercator-sphere") return make_catenoid();
  if (name == "catenoid") return make_mercator_sphere();
  if (name == "plane") {
    AnalyticSurface s;
    s.name = "plane-dual";
    s.value = [](double u, double v) { return ImPoint{-u, v, 0}; };
    s.deriv_u = [](double, double) { return ImPoint{-1, 0, 0}; };
    s.deriv_v = [](double, double) { return ImPoint{0, 1, 0}; };
    return s;
  }
  // The Gauss map is twice the formula dual for the Enneper data g = z, h = 2z.
  if (name == "enneper") return scaled(make_enneper_gauss(), 0.5, "enneper-dual");
  throw ValidationError("no closed-form dual for catalog surface '" + name + "'");
}

SampledField<ImPoint> sample(const AnalyticSurface& s, const ConformalGrid& grid) {
  grid.validate();
  return sample_nodes<ImPoint>(grid, [&](int p, int q) { return s.value(grid.u(p), grid.v(q)); });
}

AnalyticSurface mobius_image(const MobiusMap& mu, const AnalyticSurface& s) {
  AnalyticSurface out;
  out.name = s.name + "|mobius";
  auto base = s;
  out.value = [mu, base](double u, double v) { return mobius_apply_finite(mu, base.value(u, v)); };
  auto push = [mu, base](double u, double v, const ImPoint& w) {
    Quaternion x(base.value(u, v));
    Quaternion den = mu.c * x + mu.d;
    if (den.norm2() == 0.0) throw DomainError("Moebius derivative at a pole");
    ImPoint img = mobius_apply_finite(mu, base.value(u, v));
    Quaternion d = (mu.a - Quaternion(img) * mu.c) * Quaternion(w) * den.inverse();
    return d.vec();
  };
  out.deriv_u = [push, base](double u, double v) { return push(u, v, base.deriv_u(u, v)); };
  out.deriv_v = [push, base](double u, double v) { return push(u, v, base.deriv_v(u, v)); };
  return out;
}

AnalyticSurface translated(const AnalyticSurface& s, const ImPoint& offset) {
  AnalyticSurface out = s;
  auto base_value = s.value;
  out.value = [base_value, offset](double u, double v) { return base_value(u, v) + offset; };
  return out;
}

FormValue christoffel_form(const AnalyticSurface& s, double u, double v) {
  ImPoint fu = s.deriv_u(u, v), fv = s.deriv_v(u, v);
  double E = 0.5 * (fu.norm2() + fv.norm2());
  if (E == 0.0) throw DomainError("degenerate metric in dual form");
  return {(-1.0 / E) * fu, (1.0 / E) * fv};
}

}  // namespace isolab
