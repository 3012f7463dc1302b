#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include "isolab/errors.hpp"
#include "isolab/parallel.hpp"
#include "isolab/quaternion.hpp"
#include "isolab/report.hpp"

namespace isolab {

// Rectangular (u,v) lattice; node (p,q) sits at (u0 + p du, v0 + q dv) and
// carries the complex label z = u + iv.
struct ConformalGrid {
  double u0 = 0, v0 = 0;
  double du = 0.05, dv = 0.05;
  int nu = 3, nv = 3;

  double u(int p) const { return u0 + p * du; }
  double v(int q) const { return v0 + q * dv; }
  Complex z(int p, int q) const { return {u(p), v(q)}; }
  int index(int p, int q) const { return q * nu + p; }
  int count() const { return nu * nv; }
  double spacing() const { return du > dv ? du : dv; }

  // Same rectangle at half spacing (node counts 2n-1 hit the same endpoints).
  ConformalGrid refined() const { return {u0, v0, du / 2, dv / 2, 2 * nu - 1, 2 * nv - 1}; }

  bool matches(const ConformalGrid& o) const {
    return u0 == o.u0 && v0 == o.v0 && du == o.du && dv == o.dv && nu == o.nu && nv == o.nv;
  }

  void validate() const {
    if (nu < 3 || nv < 3) throw ValidationError("grid node counts must be >= 3");
    if (du <= 0 || dv <= 0) throw ValidationError("grid spacings must be positive");
  }
};

template <class T>
struct SampledField {
  ConformalGrid grid;
  std::vector<T> values;

  SampledField() = default;
  explicit SampledField(const ConformalGrid& g) : grid(g), values(g.count()) {}

  T& at(int p, int q) { return values[grid.index(p, q)]; }
  const T& at(int p, int q) const { return values[grid.index(p, q)]; }
};

// alpha = cu du + cv dv with per-node coefficients.
template <class T>
struct OneForm {
  ConformalGrid grid;
  std::vector<T> cu, cv;

  OneForm() = default;
  explicit OneForm(const ConformalGrid& g) : grid(g), cu(g.count()), cv(g.count()) {}
};

enum class Axis { u, v };

// --- payload helpers -------------------------------------------------------

inline double payload_norm(double v) { return std::abs(v); }
inline double payload_norm(const Complex& v) { return std::abs(v); }
inline double payload_norm(const ImPoint& v) { return v.norm(); }
inline double payload_norm(const Quaternion& v) { return v.norm(); }

template <class T, class F>
SampledField<T> sample_nodes(const ConformalGrid& grid, F&& fn) {
  SampledField<T> out(grid);
  parallel_for(grid.count(), [&](int i) {
    int p = i % grid.nu, q = i / grid.nu;
    out.values[i] = fn(p, q);
  });
  return out;
}

template <class T, class F>
SampledField<T> map_field(const SampledField<T>& f, F&& fn) {
  SampledField<T> out(f.grid);
  parallel_for(f.grid.count(), [&](int i) { out.values[i] = fn(f.values[i]); });
  return out;
}

// Node-wise evaluation of a catalog map (u,v) -> R^3.
SampledField<ImPoint> sample(const std::function<ImPoint(double, double)>& map,
                             const ConformalGrid& grid);

// Node-wise evaluation of a holomorphic expression at z = u + iv; a pole on
// the grid is reported with its node index.
class Expr;
SampledField<Complex> sample(const Expr& e, const ConformalGrid& grid);

// --- finite differences -----------------------------------------------------

// Central differences in the interior, second-order one-sided at the boundary.
template <class T>
SampledField<T> partial(const SampledField<T>& f, Axis axis) {
  const ConformalGrid& g = f.grid;
  if (g.nu < 3 || g.nv < 3) throw ValidationError("partial requires nu, nv >= 3");
  SampledField<T> out(g);
  double h = axis == Axis::u ? g.du : g.dv;
  int n = axis == Axis::u ? g.nu : g.nv;
  auto get = [&](int along, int other) -> const T& {
    return axis == Axis::u ? f.at(along, other) : f.at(other, along);
  };
  auto set = [&](int along, int other, const T& val) {
    if (axis == Axis::u)
      out.at(along, other) = val;
    else
      out.at(other, along) = val;
  };
  int m = axis == Axis::u ? g.nv : g.nu;
  parallel_for(m, [&](int other) {
    set(0, other, (-3.0 * get(0, other) + 4.0 * get(1, other) - get(2, other)) * (0.5 / h));
    for (int k = 1; k + 1 < n; ++k)
      set(k, other, (get(k + 1, other) - get(k - 1, other)) * (0.5 / h));
    set(n - 1, other,
        (3.0 * get(n - 1, other) - 4.0 * get(n - 2, other) + get(n - 3, other)) * (0.5 / h));
  });
  return out;
}

// Second derivative along one axis, second-order including boundaries.
template <class T>
SampledField<T> second_partial(const SampledField<T>& f, Axis axis) {
  const ConformalGrid& g = f.grid;
  int n = axis == Axis::u ? g.nu : g.nv;
  if (n < 4) throw ValidationError("second_partial requires >= 4 nodes along the axis");
  SampledField<T> out(g);
  double h = axis == Axis::u ? g.du : g.dv;
  double ih2 = 1.0 / (h * h);
  auto get = [&](int along, int other) -> const T& {
    return axis == Axis::u ? f.at(along, other) : f.at(other, along);
  };
  auto set = [&](int along, int other, const T& val) {
    if (axis == Axis::u)
      out.at(along, other) = val;
    else
      out.at(other, along) = val;
  };
  int m = axis == Axis::u ? g.nv : g.nu;
  parallel_for(m, [&](int other) {
    set(0, other,
        (2.0 * get(0, other) - 5.0 * get(1, other) + 4.0 * get(2, other) - get(3, other)) * ih2);
    for (int k = 1; k + 1 < n; ++k)
      set(k, other, (get(k + 1, other) - 2.0 * get(k, other) + get(k - 1, other)) * ih2);
    set(n - 1, other,
        (2.0 * get(n - 1, other) - 5.0 * get(n - 2, other) + 4.0 * get(n - 3, other) -
         get(n - 4, other)) * ih2);
  });
  return out;
}

// --- 1-form integration -----------------------------------------------------

template <class T>
struct IntegrationResult {
  SampledField<T> field;
  ResidualReport closedness;      // max plaquette circulation / (du dv)
  double path_dependence = 0;     // max deviation against the transposed path
};

namespace detail {

// Trapezoid sweep: seed column bottom-to-top, then rows left-to-right.
// The transposed order runs the seed row first, then columns.
template <class T>
SampledField<T> integrate_trapezoid(const OneForm<T>& a, const T& base, bool transposed) {
  const ConformalGrid& g = a.grid;
  SampledField<T> F(g);
  F.at(0, 0) = base;
  if (!transposed) {
    for (int q = 1; q < g.nv; ++q)
      F.at(0, q) = F.at(0, q - 1) +
                   (a.cv[g.index(0, q - 1)] + a.cv[g.index(0, q)]) * (0.5 * g.dv);
    parallel_for(g.nv, [&](int q) {
      for (int p = 1; p < g.nu; ++p)
        F.at(p, q) = F.at(p - 1, q) +
                     (a.cu[g.index(p - 1, q)] + a.cu[g.index(p, q)]) * (0.5 * g.du);
    });
  } else {
    for (int p = 1; p < g.nu; ++p)
      F.at(p, 0) = F.at(p - 1, 0) +
                   (a.cu[g.index(p - 1, 0)] + a.cu[g.index(p, 0)]) * (0.5 * g.du);
    parallel_for(g.nu, [&](int p) {
      for (int q = 1; q < g.nv; ++q)
        F.at(p, q) = F.at(p, q - 1) +
                     (a.cv[g.index(p, q - 1)] + a.cv[g.index(p, q)]) * (0.5 * g.dv);
    });
  }
  return F;
}

}  // namespace detail

template <class T>
IntegrationResult<T> integrate_one_form(const OneForm<T>& a, const T& base) {
  const ConformalGrid& g = a.grid;
  IntegrationResult<T> res;
  res.field = detail::integrate_trapezoid(a, base, false);
  SampledField<T> alt = detail::integrate_trapezoid(a, base, true);
  for (int i = 0; i < g.count(); ++i) {
    T diff = res.field.values[i] - alt.values[i];
    res.path_dependence = std::max(res.path_dependence, payload_norm(diff));
  }
  // Plaquette circulation with midpoint-averaged edge values, per unit area.
  std::vector<double> circ((g.nu - 1) * (g.nv - 1));
  parallel_for(static_cast<int>(circ.size()), [&](int i) {
    int p = i % (g.nu - 1), q = i / (g.nu - 1);
    T loop = (a.cu[g.index(p, q)] + a.cu[g.index(p + 1, q)]) * (0.5 * g.du) +
             (a.cv[g.index(p + 1, q)] + a.cv[g.index(p + 1, q + 1)]) * (0.5 * g.dv) -
             (a.cu[g.index(p, q + 1)] + a.cu[g.index(p + 1, q + 1)]) * (0.5 * g.du) -
             (a.cv[g.index(p, q)] + a.cv[g.index(p, q + 1)]) * (0.5 * g.dv);
    circ[i] = payload_norm(loop) / (g.du * g.dv);
  });
  res.closedness = make_report("closedness", circ, g.spacing(), TolClass::fd);
  return res;
}

// High-order route for analytically known forms: composite Simpson per edge.
template <class T>
SampledField<T> integrate_form_analytic(
    const ConformalGrid& g, const T& base,
    const std::function<void(double, double, T&, T&)>& form) {
  SampledField<T> F(g);
  F.at(0, 0) = base;
  auto edge = [&](double ua, double va, double ub, double vb) {
    T a0{}, a1{}, am{}, dummy{};
    bool along_u = va == vb;
    if (along_u) {
      form(ua, va, a0, dummy);
      form(0.5 * (ua + ub), va, am, dummy);
      form(ub, vb, a1, dummy);
      return (a0 + 4.0 * am + a1) * ((ub - ua) / 6.0);
    }
    form(ua, va, dummy, a0);
    form(ua, 0.5 * (va + vb), dummy, am);
    form(ub, vb, dummy, a1);
    return (a0 + 4.0 * am + a1) * ((vb - va) / 6.0);
  };
  for (int q = 1; q < g.nv; ++q)
    F.at(0, q) = F.at(0, q - 1) + edge(g.u(0), g.v(q - 1), g.u(0), g.v(q));
  parallel_for(g.nv, [&](int q) {
    for (int p = 1; p < g.nu; ++p)
      F.at(p, q) = F.at(p - 1, q) + edge(g.u(p - 1), g.v(q), g.u(p), g.v(q));
  });
  return F;
}

// Cauchy-Riemann residual |w_v - i w_u| of a complex field; O(h^2) for samples
// of holomorphic functions.
ResidualReport cauchy_riemann_residual(const SampledField<Complex>& w);

// "Up to translation" comparison: mean of A - B and the max node deviation
// from that mean.  Adding a constant to either field leaves the deviation
// unchanged.
struct TranslationStat {
  ImPoint mean;
  double deviation = 0;
};
TranslationStat translation_constancy(const SampledField<ImPoint>& a,
                                      const SampledField<ImPoint>& b);

}  // namespace isolab
