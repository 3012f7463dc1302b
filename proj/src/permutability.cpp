#include "isolab/permutability.hpp"

#include <cmath>

#include "isolab/shape.hpp"

namespace isolab {

std::vector<ResidualReport> DiagramReport::flattened(double spacing) const {
  std::vector<ResidualReport> out = arrows;
  for (const auto& [cname, stat] : closures) {
    ResidualReport r;
    r.name = cname;
    r.max = r.mean = stat.deviation;
    r.spacing = spacing;
    r.tol_class = TolClass::fd;
    out.push_back(r);
  }
  return out;
}

namespace {

void append_pairing(std::vector<ResidualReport>& arrows, const PairingReport& pr,
                    const std::string& prefix) {
  for (ResidualReport r : {pr.scalar_u, pr.scalar_v, pr.vector_parts, pr.normal_term}) {
    r.name = prefix + "_" + r.name;
    arrows.push_back(r);
  }
}

// Defect of the side equation d a = t (a - b) db* (a - b) from central
// differences of a against the given coefficient form.
ResidualReport side_riccati_defect(const std::string& name, const SampledField<ImPoint>& a,
                                   const SampledField<ImPoint>& b, const OneForm<ImPoint>& bform,
                                   double t) {
  const ConformalGrid& g = a.grid;
  SampledField<ImPoint> au = partial(a, Axis::u), av = partial(a, Axis::v);
  std::vector<double> defect(g.count());
  parallel_for(g.count(), [&](int i) {
    ImPoint d = a.values[i] - b.values[i];
    defect[i] = std::max((au.values[i] - t * sandwich(d, bform.cu[i])).norm(),
                         (av.values[i] - t * sandwich(d, bform.cv[i])).norm());
  });
  return make_report(name, defect, g.spacing(), TolClass::fd);
}

OneForm<ImPoint> sampled_derivative_form(const AnalyticSurface& s, const ConformalGrid& g) {
  OneForm<ImPoint> form(g);
  parallel_for(g.count(), [&](int i) {
    int p = i % g.nu, q = i / g.nu;
    form.cu[i] = s.deriv_u(g.u(p), g.v(q));
    form.cv[i] = s.deriv_v(g.u(p), g.v(q));
  });
  return form;
}

}  // namespace

DiagramReport verify_bianchi(const AnalyticSurface& f, double t, const ImPoint& seed,
                             const ConformalGrid& grid, const PathOptions& opt,
                             const AnalyticSurface* dual_override) {
  grid.validate();
  DiagramReport rep;
  rep.name = "bianchi";

  SampledField<ImPoint> f_field = sample(f, grid);

  SampledField<ImPoint> fstar_field;
  if (dual_override) {
    fstar_field = sample(*dual_override, grid);
  } else {
    DualResult dual = christoffel_dual(f_field, {});
    fstar_field = std::move(dual.field);
    ResidualReport r = dual.closedness;
    r.name = "dual_closedness";
    rep.arrows.push_back(r);
  }

  DarbouxParams params{t, seed};
  DarbouxResult dx = darboux_transform(f, grid, params, opt, dual_override);
  rep.arrows.push_back(dx.plaquette_inconsistency);

  SampledField<ImPoint> fhatstar = bianchi_dual(fstar_field, f_field, dx.field, t);

  // (a) fhat* is a dual of fhat.
  append_pairing(rep.arrows, christoffel_pairing(dx.field, fhatstar), "inner");

  // (b) fhat* satisfies the f*-side flow with df taken exactly.
  OneForm<ImPoint> df = sampled_derivative_form(f, grid);
  rep.arrows.push_back(side_riccati_defect("inner_fstar_riccati", fhatstar, fstar_field, df, t));

  // (c) the diagram closes: integrating the dual of fhat reproduces fhat*.
  DualResult dual_of_fhat = christoffel_dual(dx.field, fhatstar.values[0]);
  rep.closures.emplace_back("close_dual_of_fhat_vs_bianchi",
                            translation_constancy(dual_of_fhat.field, fhatstar));
  return rep;
}

SampledField<ImPoint> gd_transform(const SampledField<ImPoint>& Gf,
                                   const SampledField<ImPoint>& mu_fstar,
                                   const SampledField<ImPoint>& mu_fhatstar, double t) {
  if (t == 0.0) throw ValidationError("gd_transform requires t != 0");
  if (!Gf.grid.matches(mu_fstar.grid) || !Gf.grid.matches(mu_fhatstar.grid))
    throw ValidationError("gd_transform requires matching grids");
  const ConformalGrid& g = Gf.grid;
  double thr = 1e-10 * field_scale(mu_fstar);
  SampledField<ImPoint> out(g);
  parallel_for(g.count(), [&](int i) {
    ImPoint d = mu_fhatstar.values[i] - mu_fstar.values[i];
    if (d.norm() < thr)
      throw CoincidenceError("mu o fhat* coincides with mu o f*", i % g.nu, i / g.nu);
    out.values[i] = Gf.values[i] + (1.0 / t) * inverse(d);
  });
  return out;
}

DiagramReport verify_main_theorem(const AnalyticSurface& f, const AnalyticSurface& fstar,
                                  const MobiusMap& mu, double t, const ImPoint& seed,
                                  const ConformalGrid& grid, const PathOptions& opt) {
  grid.validate();
  DiagramReport rep;
  rep.name = "main_theorem";

  SampledField<ImPoint> f_field = sample(f, grid);
  SampledField<ImPoint> fstar_field = sample(fstar, grid);
  append_pairing(rep.arrows, christoffel_pairing(f_field, fstar_field), "upper_input_pair");

  // Upper quadrilateral: mu o f* and its dual G_mu(f).
  AnalyticSurface mu_fstar = mobius_image(mu, fstar);
  SampledField<ImPoint> mu_fstar_field = sample(mu_fstar, grid);
  DualResult Gf = christoffel_dual(mu_fstar_field, {});
  {
    ResidualReport r = Gf.closedness;
    r.name = "upper_goursat_closedness";
    rep.arrows.push_back(r);
  }

  // fhat = D_t(f) with exact coefficients.
  DarbouxParams params{t, seed};
  DarbouxResult dx = darboux_transform(f, grid, params, opt);
  rep.arrows.push_back(dx.plaquette_inconsistency);

  // Inner quadrilateral.
  SampledField<ImPoint> fhatstar = bianchi_dual(fstar_field, f_field, dx.field, t);
  append_pairing(rep.arrows, christoffel_pairing(dx.field, fhatstar), "inner");
  OneForm<ImPoint> df = sampled_derivative_form(f, grid);
  rep.arrows.push_back(side_riccati_defect("inner_fstar_riccati", fhatstar, fstar_field, df, t));

  SampledField<ImPoint> mu_fhatstar(grid);
  parallel_for(grid.count(), [&](int i) {
    ExtPoint r = mobius_apply(mu, ExtPoint::finite(fhatstar.values[i]));
    if (r.infinite)
      throw PoleOnGridError("mu o fhat* hit infinity", i % grid.nu, i / grid.nu);
    mu_fhatstar.values[i] = r.p;
  });

  // Left quadrilateral: mu(fhat*) = D_t(mu(f*)) with matched seeds; both the
  // values of mu o f* and its dual form are exact, so only ODE error remains.
  {
    DarbouxParams p2{t, mu_fhatstar.values[0]};
    DarbouxResult direct = darboux_transform(mu_fstar, grid, p2, opt);
    std::vector<double> diff(grid.count());
    for (int i = 0; i < grid.count(); ++i)
      diff[i] = (direct.field.values[i] - mu_fhatstar.values[i]).norm();
    ResidualReport r = make_report("left_mobius_invariance", diff, grid.spacing(), TolClass::ode);
    rep.arrows.push_back(r);
  }

  // Permutability formula and its two independent counterparts.
  SampledField<ImPoint> fdagger = gd_transform(Gf.field, mu_fstar_field, mu_fhatstar, t);

  {
    // Direct spectral transform of G_mu(f): G is co-integrated from its exact
    // differential (the dual form of mu o f*), the unknown rides along.
    auto rhs = [&](double u, double v, double tu, double tv, const std::array<double, 6>& y,
                   std::array<double, 6>& dy) {
      FormValue dual_form = christoffel_form(mu_fstar, u, v);
      ImPoint dG = tu * dual_form.cu + tv * dual_form.cv;
      pack(dG, dy.data());
      ImPoint G = unpack_impoint(y.data());
      ImPoint Y = unpack_impoint(y.data() + 3);
      // d(mu o f*) = d G* exactly
      ImPoint coeff = tu * mu_fstar.deriv_u(u, v) + tv * mu_fstar.deriv_v(u, v);
      pack(t * sandwich(Y - G, coeff), dy.data() + 3);
    };
    std::array<double, 6> s0{};
    pack(Gf.field.values[0], s0.data());
    pack(fdagger.values[0], s0.data() + 3);
    PathOptions o = opt;
    o.transposed = false;
    auto states = integrate_path<6>(grid, s0, o, rhs);
    SampledField<ImPoint> direct(grid);
    for (int i = 0; i < grid.count(); ++i) direct.values[i] = unpack_impoint(states[i].data() + 3);
    rep.closures.emplace_back("close_gd_vs_direct_darboux",
                              translation_constancy(direct, fdagger));
  }

  {
    DualResult dual_back = christoffel_dual(mu_fhatstar, fdagger.values[0]);
    rep.closures.emplace_back("close_gd_vs_dual_of_mu_fhatstar",
                              translation_constancy(dual_back.field, fdagger));
  }
  return rep;
}

SampledField<ImPoint> consistent_normal(const SampledField<ImPoint>& f,
                                        const SampledField<ImPoint>& fhat,
                                        const SampledField<ImPoint>& n) {
  SampledField<ImPoint> out(f.grid);
  parallel_for(f.grid.count(), [&](int i) {
    ImPoint d = fhat.values[i] - f.values[i];
    double n2 = d.norm2();
    if (n2 == 0.0)
      throw CoincidenceError("fhat coincides with f", i % f.grid.nu, i / f.grid.nu);
    out.values[i] = (1.0 / n2) * sandwich(d, n.values[i]);
  });
  return out;
}

ResidualReport lemma_residual(const SampledField<ImPoint>& f, const SampledField<ImPoint>& fstar,
                              const SampledField<ImPoint>& fhat, double t) {
  if (t == 0.0) throw ValidationError("lemma_residual requires t != 0");
  ShapeData sd_f = shape_analysis(f);
  ShapeData sd_star = shape_analysis(fstar);
  ShapeData sd_hat = shape_analysis(fhat);

  SampledField<ImPoint> n(f.grid);
  n.values = sd_f.normal;
  SampledField<ImPoint> nhat = consistent_normal(f, fhat, n);
  SampledField<ImPoint> nstar = map_field(n, [](const ImPoint& p) { return -p; });

  std::vector<double> Hhat = mean_curvature_with_normal(sd_hat, nhat);
  std::vector<double> Hstar = mean_curvature_with_normal(sd_star, nstar);

  std::vector<double> resid(f.grid.count());
  for (int i = 0; i < f.grid.count(); ++i) {
    ImPoint d = fhat.values[i] - f.values[i];
    resid[i] = Hhat[i] * d.norm2() - 2.0 * dot(d, n.values[i]) + Hstar[i] / t;
  }
  return make_report("lemma_residual", resid, f.grid.spacing(), TolClass::fd);
}

}  // namespace isolab
