#include "isolab/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace isolab {

namespace {

double vector_median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

struct MetricData {
  SampledField<ImPoint> fu, fv;
  std::vector<double> E;
};

MetricData conformal_metric(const SampledField<ImPoint>& f) {
  MetricData m;
  m.fu = partial(f, Axis::u);
  m.fv = partial(f, Axis::v);
  int n = f.grid.count();
  m.E.resize(n);
  std::vector<double> scale(n);
  for (int i = 0; i < n; ++i) {
    m.E[i] = 0.5 * (m.fu.values[i].norm2() + m.fv.values[i].norm2());
    scale[i] = m.fu.values[i].norm() * m.fv.values[i].norm();
  }
  double eps = 1e-10 * vector_median(scale);
  for (int i = 0; i < n; ++i)
    if (m.E[i] <= eps)
      throw DegenerateMetricError("metric coefficient E ~ 0", i % f.grid.nu, i / f.grid.nu);
  return m;
}

}  // namespace

double field_scale(const SampledField<ImPoint>& f) {
  ImPoint centroid{};
  for (const ImPoint& p : f.values) centroid += p;
  centroid = centroid / static_cast<double>(f.values.size());
  std::vector<double> dev(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) dev[i] = (f.values[i] - centroid).norm();
  double s = vector_median(dev);
  return s > 0 ? s : 1.0;
}

DualResult christoffel_dual(const SampledField<ImPoint>& f, const ImPoint& base) {
  MetricData m = conformal_metric(f);
  const ConformalGrid& g = f.grid;
  OneForm<ImPoint> form(g);
  parallel_for(g.count(), [&](int i) {
    form.cu[i] = (-1.0 / m.E[i]) * m.fu.values[i];
    form.cv[i] = (1.0 / m.E[i]) * m.fv.values[i];
  });
  auto integ = integrate_one_form(form, base);
  ShapeData sd = shape_analysis(f);
  DualResult res;
  res.field = std::move(integ.field);
  res.closedness = integ.closedness;
  res.closedness.name = "christoffel_dual_closedness";
  res.path_dependence = integ.path_dependence;
  res.conformality = make_report("conformality", sd.conformality, g.spacing(), TolClass::fd);
  res.curvature_line = make_report("curvature_line", sd.curvature_line, g.spacing(), TolClass::fd);
  return res;
}

PairingReport christoffel_pairing(const SampledField<ImPoint>& f,
                                  const SampledField<ImPoint>& fstar) {
  if (!f.grid.matches(fstar.grid)) throw ValidationError("pairing requires matching grids");
  const ConformalGrid& g = f.grid;
  SampledField<ImPoint> fu = partial(f, Axis::u), fv = partial(f, Axis::v);
  SampledField<ImPoint> su = partial(fstar, Axis::u), sv = partial(fstar, Axis::v);
  ShapeData sd = shape_analysis(f);

  int n = g.count();
  std::vector<double> r_su(n), r_sv(n), r_vec(n), r_norm(n);
  std::vector<ImPoint> mixed(n);
  for (int i = 0; i < n; ++i) {
    Quaternion uu = mul(fu.values[i], su.values[i]);
    Quaternion vv = mul(fv.values[i], sv.values[i]);
    Quaternion uv = mul(fu.values[i], sv.values[i]) + mul(fv.values[i], su.values[i]);
    r_su[i] = uu.scalar() - 1.0;
    r_sv[i] = vv.scalar() + 1.0;
    r_vec[i] = std::max(uu.vec().norm(), vv.vec().norm());
    mixed[i] = 0.5 * uv.vec();
  }
  // The pairing normal is the default normal up to a global sign.
  double align = 0;
  for (int i = 0; i < n; ++i) align += dot(mixed[i], sd.normal[i]);
  double sign = align >= 0 ? 1.0 : -1.0;
  for (int i = 0; i < n; ++i) r_norm[i] = (mixed[i] - sign * sd.normal[i]).norm();

  PairingReport rep;
  rep.scalar_u = make_report("pairing_scalar_u", r_su, g.spacing(), TolClass::fd);
  rep.scalar_v = make_report("pairing_scalar_v", r_sv, g.spacing(), TolClass::fd);
  rep.vector_parts = make_report("pairing_vector_parts", r_vec, g.spacing(), TolClass::fd);
  rep.normal_term = make_report("pairing_normal_term", r_norm, g.spacing(), TolClass::fd);
  rep.normal_sign = sign;
  return rep;
}

GoursatResult goursat(const SampledField<ImPoint>& f, const MobiusMap& mu, const ImPoint& base,
                      const ImPoint& dual_base) {
  DualResult d1 = christoffel_dual(f, dual_base);
  const ConformalGrid& g = f.grid;
  SampledField<ImPoint> m(g);
  parallel_for(g.count(), [&](int i) {
    ExtPoint r = mobius_apply(mu, ExtPoint::finite(d1.field.values[i]));
    if (r.infinite)
      throw PoleOnGridError("Moebius image of the dual hit infinity", i % g.nu, i / g.nu);
    m.values[i] = r.p;
  });
  DualResult d2 = christoffel_dual(m, base);
  GoursatResult res;
  res.field = std::move(d2.field);
  res.dual = std::move(d1.field);
  res.mobius_dual = std::move(m);
  res.dual_closedness = d1.closedness;
  res.dual_closedness.name = "goursat_dual_closedness";
  res.result_closedness = d2.closedness;
  res.result_closedness.name = "goursat_result_closedness";
  return res;
}

namespace {

// Shared tail: plaquette inconsistency and central-difference Riccati defect
// against given value/form fields.
DarbouxResult finish_darboux(SampledField<ImPoint> fhat, const SampledField<ImPoint>& alt,
                             const SampledField<ImPoint>& f, const OneForm<ImPoint>& dual_form,
                             double t) {
  const ConformalGrid& g = fhat.grid;
  int n = g.count();
  std::vector<double> plaq(n);
  for (int i = 0; i < n; ++i) plaq[i] = (fhat.values[i] - alt.values[i]).norm();

  SampledField<ImPoint> hu = partial(fhat, Axis::u), hv = partial(fhat, Axis::v);
  std::vector<double> defect(n);
  parallel_for(n, [&](int i) {
    ImPoint d = fhat.values[i] - f.values[i];
    ImPoint ru = t * sandwich(d, dual_form.cu[i]);
    ImPoint rv = t * sandwich(d, dual_form.cv[i]);
    defect[i] = std::max((hu.values[i] - ru).norm(), (hv.values[i] - rv).norm());
  });

  DarbouxResult res;
  res.field = std::move(fhat);
  res.plaquette_inconsistency =
      make_report("darboux_plaquette_inconsistency", plaq, g.spacing(), TolClass::ode);
  res.riccati_defect = make_report("darboux_riccati_defect", defect, g.spacing(), TolClass::fd);
  return res;
}

}  // namespace

DarbouxResult darboux_transform(const SampledField<ImPoint>& f,
                                const SampledField<ImPoint>& fstar, const DarbouxParams& params) {
  params.validate();
  if (!f.grid.matches(fstar.grid)) throw ValidationError("darboux requires matching grids");
  const ConformalGrid& g = f.grid;
  OneForm<ImPoint> form(g);
  {
    SampledField<ImPoint> su = partial(fstar, Axis::u), sv = partial(fstar, Axis::v);
    form.cu = std::move(su.values);
    form.cv = std::move(sv.values);
  }
  double t = params.t;
  // Edge-local linear interpolation of f and the coefficient form.
  auto rhs = [&](double u, double v, double tu, double tv, const std::array<double, 3>& y,
                 std::array<double, 3>& dy) {
    ImPoint fh = unpack_impoint(y.data());
    double pf = (u - g.u0) / g.du, qf = (v - g.v0) / g.dv;
    ImPoint fval, coeff;
    if (tu != 0.0) {
      int q = static_cast<int>(std::lround(qf));
      int p = std::clamp(static_cast<int>(std::floor(pf + 1e-9)), 0, g.nu - 2);
      double s = std::clamp(pf - p, 0.0, 1.0);
      int i0 = g.index(p, q), i1 = g.index(p + 1, q);
      fval = (1 - s) * f.values[i0] + s * f.values[i1];
      coeff = (1 - s) * form.cu[i0] + s * form.cu[i1];
    } else {
      int p = static_cast<int>(std::lround(pf));
      int q = std::clamp(static_cast<int>(std::floor(qf + 1e-9)), 0, g.nv - 2);
      double s = std::clamp(qf - q, 0.0, 1.0);
      int i0 = g.index(p, q), i1 = g.index(p, q + 1);
      fval = (1 - s) * f.values[i0] + s * f.values[i1];
      coeff = (1 - s) * form.cv[i0] + s * form.cv[i1];
    }
    ImPoint d = fh - fval;
    pack(t * sandwich(d, coeff), dy.data());
    (void)tv;
  };
  PathOptions opt;
  std::array<double, 3> seed;
  pack(params.seed, seed.data());
  auto states = integrate_path<3>(g, seed, opt, rhs);
  opt.transposed = true;
  auto states_t = integrate_path<3>(g, seed, opt, rhs);
  SampledField<ImPoint> fhat(g), alt(g);
  for (int i = 0; i < g.count(); ++i) {
    fhat.values[i] = unpack_impoint(states[i].data());
    alt.values[i] = unpack_impoint(states_t[i].data());
  }
  return finish_darboux(std::move(fhat), alt, f, form, t);
}

DarbouxResult darboux_transform(const AnalyticSurface& s, const ConformalGrid& grid,
                                const DarbouxParams& params, const PathOptions& opt_in,
                                const AnalyticSurface* dual_override) {
  params.validate();
  grid.validate();
  double t = params.t;
  auto form_at = [&](double u, double v) -> FormValue {
    if (dual_override) return {dual_override->deriv_u(u, v), dual_override->deriv_v(u, v)};
    return christoffel_form(s, u, v);
  };
  auto rhs = [&](double u, double v, double tu, double tv, const std::array<double, 3>& y,
                 std::array<double, 3>& dy) {
    ImPoint fh = unpack_impoint(y.data());
    ImPoint d = fh - s.value(u, v);
    FormValue fm = form_at(u, v);
    ImPoint coeff = tu * fm.cu + tv * fm.cv;
    pack(t * sandwich(d, coeff), dy.data());
  };
  PathOptions opt = opt_in;
  opt.transposed = false;
  std::array<double, 3> seed;
  pack(params.seed, seed.data());
  auto states = integrate_path<3>(grid, seed, opt, rhs);
  opt.transposed = true;
  auto states_t = integrate_path<3>(grid, seed, opt, rhs);

  SampledField<ImPoint> fhat(grid), alt(grid), f(grid);
  OneForm<ImPoint> form(grid);
  for (int i = 0; i < grid.count(); ++i) {
    int p = i % grid.nu, q = i / grid.nu;
    fhat.values[i] = unpack_impoint(states[i].data());
    alt.values[i] = unpack_impoint(states_t[i].data());
    f.values[i] = s.value(grid.u(p), grid.v(q));
    FormValue fm = form_at(grid.u(p), grid.v(q));
    form.cu[i] = fm.cu;
    form.cv[i] = fm.cv;
  }
  return finish_darboux(std::move(fhat), alt, f, form, t);
}

SampledField<ImPoint> bianchi_dual(const SampledField<ImPoint>& fstar,
                                   const SampledField<ImPoint>& f,
                                   const SampledField<ImPoint>& fhat, double t) {
  if (t == 0.0) throw ValidationError("bianchi_dual requires t != 0");
  if (!f.grid.matches(fstar.grid) || !f.grid.matches(fhat.grid))
    throw ValidationError("bianchi_dual requires matching grids");
  const ConformalGrid& g = f.grid;
  double thr = 1e-10 * field_scale(f);
  SampledField<ImPoint> out(g);
  parallel_for(g.count(), [&](int i) {
    ImPoint d = fhat.values[i] - f.values[i];
    if (d.norm() < thr)
      throw CoincidenceError("fhat coincides with f", i % g.nu, i / g.nu);
    out.values[i] = fstar.values[i] + (1.0 / t) * inverse(d);
  });
  return out;
}

}  // namespace isolab
