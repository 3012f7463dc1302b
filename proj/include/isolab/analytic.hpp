#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "isolab/grid.hpp"
#include "isolab/quaternion.hpp"

namespace isolab {

// A surface patch with closed-form value and first derivatives, evaluatable at
// arbitrary (u,v).  The ODE integrations use these to keep their coefficient
// data exact between grid nodes.
struct AnalyticSurface {
  std::string name;
  std::function<ImPoint(double, double)> value;
  std::function<ImPoint(double, double)> deriv_u;
  std::function<ImPoint(double, double)> deriv_v;
};

// Catalog: plane, cylinder, mercator-sphere, catenoid, enneper.
AnalyticSurface catalog_surface(const std::string& name);
const std::vector<std::string>& catalog_surface_names();
std::string catalog_surface_description(const std::string& name);

// Closed-form Christoffel dual of a catalog surface in the formula
// normalization (the one integrating -(1/E)(f_u du - f_v dv) produces).
AnalyticSurface catalog_formula_dual(const std::string& name);

SampledField<ImPoint> sample(const AnalyticSurface& s, const ConformalGrid& grid);

// Exact pushforward: value mu(f), derivative dmu_x(w) = (a - mu(x) c) w (c x + d)^-1.
AnalyticSurface mobius_image(const MobiusMap& mu, const AnalyticSurface& s);

AnalyticSurface translated(const AnalyticSurface& s, const ImPoint& offset);

// Coefficients of the dual form -(1/E)(f_u du - f_v dv) at a point,
// E = (|f_u|^2 + |f_v|^2)/2.
struct FormValue {
  ImPoint cu, cv;
};
FormValue christoffel_form(const AnalyticSurface& s, double u, double v);

// --- grid-path ODE integration ----------------------------------------------
//
// All path integrations share one convention: seed at node (0,0), first column
// bottom-to-top, then every row left-to-right.  The transposed order (seed row
// first, then columns) is used for path-independence diagnostics.

struct PathOptions {
  int substeps_per_edge = 1;
  double escape_norm = 1e8;   // blow-up threshold on any state component
  bool transposed = false;
};

// rhs(u, v, tu, tv, y, dy): derivative of the state along the unit direction
// (tu, tv) in parameter space.
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_path(const ConformalGrid& g,
                                                  const std::array<double, N>& seed,
                                                  const PathOptions& opt, Rhs&& rhs) {
  using State = std::array<double, N>;
  auto axpy = [](State& y, double a, const State& x) {
    for (std::size_t i = 0; i < N; ++i) y[i] += a * x[i];
  };
  auto step = [&](double u, double v, double tu, double tv, double h, State y) {
    State k1, k2, k3, k4, tmp;
    rhs(u, v, tu, tv, y, k1);
    tmp = y;
    axpy(tmp, h / 2, k1);
    rhs(u + tu * h / 2, v + tv * h / 2, tu, tv, tmp, k2);
    tmp = y;
    axpy(tmp, h / 2, k2);
    rhs(u + tu * h / 2, v + tv * h / 2, tu, tv, tmp, k3);
    tmp = y;
    axpy(tmp, h, k3);
    rhs(u + tu * h, v + tv * h, tu, tv, tmp, k4);
    axpy(y, h / 6, k1);
    axpy(y, h / 3, k2);
    axpy(y, h / 3, k3);
    axpy(y, h / 6, k4);
    return y;
  };
  int nsub = opt.substeps_per_edge > 0 ? opt.substeps_per_edge : 1;
  auto edge = [&](int p, int q, bool along_u, const State& y0) {
    State y = y0;
    double u = g.u(p), v = g.v(q);
    double tu = along_u ? 1.0 : 0.0, tv = along_u ? 0.0 : 1.0;
    double h = (along_u ? g.du : g.dv) / nsub;
    for (int s = 0; s < nsub; ++s) y = step(u + tu * s * h, v + tv * s * h, tu, tv, h, y);
    return y;
  };
  std::vector<State> out(g.count());
  out[g.index(0, 0)] = seed;
  auto check = [&](int p, int q) {
    for (double c : out[g.index(p, q)])
      if (!std::isfinite(c) || std::abs(c) > opt.escape_norm)
        throw EscapeError("path integration escaped working scale", p, q);
  };
  if (!opt.transposed) {
    for (int q = 1; q < g.nv; ++q) {
      out[g.index(0, q)] = edge(0, q - 1, false, out[g.index(0, q - 1)]);
      check(0, q);
    }
    parallel_for(g.nv, [&](int q) {
      for (int p = 1; p < g.nu; ++p) {
        out[g.index(p, q)] = edge(p - 1, q, true, out[g.index(p - 1, q)]);
        check(p, q);
      }
    });
  } else {
    for (int p = 1; p < g.nu; ++p) {
      out[g.index(p, 0)] = edge(p - 1, 0, true, out[g.index(p - 1, 0)]);
      check(p, 0);
    }
    parallel_for(g.nu, [&](int p) {
      for (int q = 1; q < g.nv; ++q) {
        out[g.index(p, q)] = edge(p, q - 1, false, out[g.index(p, q - 1)]);
        check(p, q);
      }
    });
  }
  return out;
}

// State packing helpers for mixed quaternionic/complex systems.
inline void pack(const ImPoint& p, double* dst) { dst[0] = p.x1; dst[1] = p.x2; dst[2] = p.x3; }
inline ImPoint unpack_impoint(const double* src) { return {src[0], src[1], src[2]}; }
inline void pack(Complex c, double* dst) { dst[0] = c.real(); dst[1] = c.imag(); }
inline Complex unpack_complex(const double* src) { return {src[0], src[1]}; }

}  // namespace isolab
