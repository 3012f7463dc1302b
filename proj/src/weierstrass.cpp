#include "isolab/weierstrass.hpp"

#include <algorithm>
#include <cmath>

#include "isolab/shape.hpp"

namespace isolab {

namespace {

double vector_median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

int pick_substeps(const ConformalGrid& g, int requested) {
  if (requested > 0) return requested;
  return std::max(1, static_cast<int>(std::ceil(g.spacing() / 0.01)));
}

// Eq.-(8)-style integrand coefficients for data values (g, w) at a point.
void surface_form(Complex gz, Complex w, ImPoint& au, ImPoint& av) {
  Complex gw = gz * w;
  Complex bw = (1.0 - gz * gz) * w;
  Complex cw = (1.0 + gz * gz) * w;
  au = {2.0 * gw.real(), bw.real(), cw.imag()};
  av = {-2.0 * gw.imag(), -bw.imag(), cw.real()};
}

}  // namespace

WeierstrassData make_weierstrass(const Expr& g, const Expr& h) {
  WeierstrassData d;
  d.g = g;
  d.h = h;
  d.dg = g.derivative();
  d.dh = h.derivative();
  return d;
}

WeierstrassData make_weierstrass(const std::string& g, const std::string& h) {
  return make_weierstrass(parse_expr(g), parse_expr(h));
}

ImPoint gauss_point(Complex g) {
  double n2 = std::norm(g);
  double d = 1.0 + n2;
  return {(1.0 - n2) / d, -2.0 * g.real() / d, 2.0 * g.imag() / d};
}

SampledField<ImPoint> gauss_from_g(const SampledField<Complex>& g_field) {
  SampledField<ImPoint> out(g_field.grid);
  parallel_for(g_field.grid.count(), [&](int i) { out.values[i] = gauss_point(g_field.values[i]); });
  return out;
}

SurfaceResult weierstrass_surface(const WeierstrassData& data, const ConformalGrid& grid,
                                  const ImPoint& f0) {
  grid.validate();
  std::function<void(double, double, ImPoint&, ImPoint&)> form = [&](double u, double v,
                                                                     ImPoint& au, ImPoint& av) {
    Complex z(u, v);
    surface_form(data.g_at(z), data.omega_at(z), au, av);
  };
  SurfaceResult res;
  res.field = integrate_form_analytic<ImPoint>(grid, f0, form);

  OneForm<ImPoint> nodal(grid);
  SampledField<Complex> q(grid);
  parallel_for(grid.count(), [&](int i) {
    int p = i % grid.nu;
    Complex z = grid.z(p, i / grid.nu);
    surface_form(data.g_at(z), data.omega_at(z), nodal.cu[i], nodal.cv[i]);
    q.values[i] = data.q_at(z);
  });
  res.closedness = integrate_one_form(nodal, f0).closedness;
  res.closedness.name = "weierstrass_closedness";
  res.q_cr = cauchy_riemann_residual(q);
  res.q_cr.name = "weierstrass_q_cauchy_riemann";
  return res;
}

HoloRiccatiResult holomorphic_riccati(const WeierstrassData& data, double t, Complex ghat_seed,
                                      const ConformalGrid& grid, int substeps_per_edge) {
  if (t == 0.0) throw ValidationError("holomorphic_riccati requires t != 0");
  grid.validate();
  auto rhs = [&](double u, double v, double tu, double tv, const std::array<double, 2>& y,
                 std::array<double, 2>& dy) {
    Complex z(u, v);
    Complex gh = unpack_complex(y.data());
    Complex diff = gh - data.g_at(z);
    Complex dz_dir(tu, tv);  // dz along the edge direction
    pack(2.0 * t * diff * diff * data.omega_at(z) * dz_dir, dy.data());
  };
  PathOptions opt;
  opt.substeps_per_edge = pick_substeps(grid, substeps_per_edge);
  std::array<double, 2> seed;
  pack(ghat_seed, seed.data());
  auto states = integrate_path<2>(grid, seed, opt, rhs);
  opt.transposed = true;
  auto states_t = integrate_path<2>(grid, seed, opt, rhs);

  HoloRiccatiResult res;
  res.ghat = SampledField<Complex>(grid);
  std::vector<double> path_diff(grid.count()), identity(grid.count());
  for (int i = 0; i < grid.count(); ++i) {
    Complex gh = unpack_complex(states[i].data());
    res.ghat.values[i] = gh;
    path_diff[i] = std::abs(gh - unpack_complex(states_t[i].data()));
    Complex z = grid.z(i % grid.nu, i / grid.nu);
    Complex diff = gh - data.g_at(z);
    Complex dghat = 2.0 * t * diff * diff * data.omega_at(z);
    identity[i] = std::abs(data.dg_at(z) * dghat - t * diff * diff * data.q_at(z));
  }
  res.path_independence =
      make_report("riccati_path_independence", path_diff, grid.spacing(), TolClass::ode);
  res.transform_identity =
      make_report("riccati_transform_identity", identity, grid.spacing(), TolClass::algebraic);
  return res;
}

DualDataResult dual_data(const WeierstrassData& data, const SampledField<Complex>& ghat,
                         double t) {
  if (t == 0.0) throw ValidationError("dual_data requires t != 0");
  const ConformalGrid& g = ghat.grid;
  std::vector<double> gmag(g.count());
  for (int i = 0; i < g.count(); ++i)
    gmag[i] = std::abs(data.g_at(g.z(i % g.nu, i / g.nu)));
  double eps = 1e-8 * (vector_median(gmag) + 1.0);

  DualDataResult res;
  res.ghat = ghat;
  res.omega_hat = SampledField<Complex>(g);
  res.q_hat = SampledField<Complex>(g);
  std::vector<double> rel(g.count());
  for (int i = 0; i < g.count(); ++i) {
    int p = i % g.nu, q = i / g.nu;
    Complex z = g.z(p, q);
    Complex diff = ghat.values[i] - data.g_at(z);
    if (std::abs(diff) < eps)
      throw SingularDataError("ghat meets g (umbilic / end of the transform)", p, q);
    Complex d2 = diff * diff;
    res.omega_hat.values[i] = data.dg_at(z) / (2.0 * t * d2);
    Complex dghat = 2.0 * t * d2 * data.omega_at(z);
    res.q_hat.values[i] = 2.0 * res.omega_hat.values[i] * dghat;
    Complex qz = data.q_at(z);
    rel[i] = std::abs(res.q_hat.values[i] - qz) / std::max(std::abs(qz), 1e-30);
  }
  res.qhat_vs_q = make_report("qhat_vs_q_relative", rel, g.spacing(), TolClass::algebraic);
  return res;
}

MinimalPairResult minimal_darboux_pair(const WeierstrassData& data, double t, Complex ghat_seed,
                                       const ConformalGrid& grid, const ImPoint& f0,
                                       int substeps_per_edge) {
  if (t == 0.0) throw ValidationError("minimal_darboux_pair requires t != 0");
  grid.validate();
  SurfaceResult surf = weierstrass_surface(data, grid, f0);

  // ghat and the rebuilt surface of (ghat, omega_hat) ride the same path so
  // the rebuilt integrand is evaluated at the exact flow values.
  auto rhs = [&](double u, double v, double tu, double tv, const std::array<double, 5>& y,
                 std::array<double, 5>& dy) {
    Complex z(u, v);
    Complex gh = unpack_complex(y.data());
    Complex diff = gh - data.g_at(z);
    Complex dz_dir(tu, tv);
    pack(2.0 * t * diff * diff * data.omega_at(z) * dz_dir, dy.data());
    Complex d2 = diff * diff;
    if (d2 == Complex(0, 0)) throw PoleError("ghat met g during integration", z);
    Complex omega_hat = data.dg_at(z) / (2.0 * t * d2);
    ImPoint au, av;
    surface_form(gh, omega_hat, au, av);
    pack(tu * au + tv * av, dy.data() + 2);
  };
  PathOptions opt;
  opt.substeps_per_edge = pick_substeps(grid, substeps_per_edge);
  std::array<double, 5> seed{};
  pack(ghat_seed, seed.data());
  auto states = integrate_path<5>(grid, seed, opt, rhs);

  MinimalPairResult out;
  MinimalPair& pair = out.pair;
  pair.t = t;
  pair.f = surf.field;
  pair.g = SampledField<Complex>(grid);
  pair.ghat = SampledField<Complex>(grid);
  out.fhat_rebuilt = SampledField<ImPoint>(grid);
  for (int i = 0; i < grid.count(); ++i) {
    pair.g.values[i] = data.g_at(grid.z(i % grid.nu, i / grid.nu));
    pair.ghat.values[i] = unpack_complex(states[i].data());
    out.fhat_rebuilt.values[i] = unpack_impoint(states[i].data() + 2);
  }
  DualDataResult dual = dual_data(data, pair.ghat, t);
  pair.omega_hat = dual.omega_hat;
  pair.n = gauss_from_g(pair.g);
  pair.nhat = gauss_from_g(pair.ghat);

  // Positioning from the pair formula fhat = f + (1/t)(nhat - n)^-1.
  pair.fhat = SampledField<ImPoint>(grid);
  for (int i = 0; i < grid.count(); ++i) {
    ImPoint dn = pair.nhat.values[i] - pair.n.values[i];
    if (dn.norm() < 1e-12)
      throw SingularDataError("Gauss maps coincide", i % grid.nu, i / grid.nu);
    pair.fhat.values[i] = pair.f.values[i] + (1.0 / t) * inverse(dn);
  }

  int count = grid.count();
  double spacing = grid.spacing();
  std::vector<ResidualReport>& reports = out.reports;
  reports.push_back(surf.closedness);
  reports.push_back(surf.q_cr);
  reports.push_back(dual.qhat_vs_q);

  // (a) quaternionic spectral equation with the Gauss map as the dual.
  {
    SampledField<ImPoint> hu = partial(pair.fhat, Axis::u), hv = partial(pair.fhat, Axis::v);
    SampledField<ImPoint> nu = partial(pair.n, Axis::u), nv = partial(pair.n, Axis::v);
    std::vector<double> defect(count);
    parallel_for(count, [&](int i) {
      ImPoint d = pair.fhat.values[i] - pair.f.values[i];
      defect[i] = std::max((hu.values[i] - t * sandwich(d, nu.values[i])).norm(),
                           (hv.values[i] - t * sandwich(d, nv.values[i])).norm());
    });
    reports.push_back(make_report("riccati_defect_f_star_n", defect, spacing, TolClass::fd));
  }

  // (b) the rebuilt surface agrees with the positioned one up to translation.
  {
    TranslationStat st = translation_constancy(out.fhat_rebuilt, pair.fhat);
    std::vector<double> one = {st.deviation};
    reports.push_back(make_report("rebuilt_translation", one, spacing, TolClass::fd));
  }

  // (c) the sphere specialization of the mean-curvature identity:
  // <fhat - f, n> = H* / (2t) with H* the dual sphere's curvature for the
  // consistent normal -n.
  {
    ShapeData nsd = shape_analysis(pair.n);
    SampledField<ImPoint> minus_n = map_field(pair.n, [](const ImPoint& p) { return -p; });
    std::vector<double> hstar = mean_curvature_with_normal(nsd, minus_n);
    std::vector<double> resid(count);
    for (int i = 0; i < count; ++i) {
      ImPoint d = pair.fhat.values[i] - pair.f.values[i];
      resid[i] = dot(d, pair.n.values[i]) - hstar[i] / (2.0 * t);
    }
    reports.push_back(make_report("sphere_lemma", resid, spacing, TolClass::fd));
  }

  // (d) -j ghat is a spectral transform of -j g with the prescribed dual form
  // d(h j): the degenerate pair behind the construction.
  {
    SampledField<ImPoint> A(grid), B(grid);
    OneForm<ImPoint> dhj(grid);
    for (int i = 0; i < count; ++i) {
      Complex z = grid.z(i % grid.nu, i / grid.nu);
      A.values[i] = embed_complex(-std::conj(pair.ghat.values[i]));
      B.values[i] = embed_complex(-std::conj(pair.g.values[i]));
      Complex dh = data.dh.eval(z);
      dhj.cu[i] = embed_complex(dh);
      dhj.cv[i] = embed_complex(Complex(0, 1) * dh);
    }
    SampledField<ImPoint> au = partial(A, Axis::u), av = partial(A, Axis::v);
    std::vector<double> defect(count);
    parallel_for(count, [&](int i) {
      ImPoint d = A.values[i] - B.values[i];
      defect[i] = std::max((au.values[i] - t * sandwich(d, dhj.cu[i])).norm(),
                           (av.values[i] - t * sandwich(d, dhj.cv[i])).norm());
    });
    reports.push_back(make_report("degenerate_pairing", defect, spacing, TolClass::fd));
  }

  // Record the empirical alignment between the immersion normal and
  // gauss_from_g; the orientation convention leaves the global sign free.
  {
    ShapeData fsd = shape_analysis(pair.f);
    double align = 0;
    for (int i = 0; i < count; ++i) align += dot(fsd.normal[i], pair.n.values[i]);
    out.gauss_sign = align >= 0 ? 1.0 : -1.0;
  }
  return out;
}

}  // namespace isolab
