#include "isolab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "isolab/analytic.hpp"
#include "isolab/curved_flat.hpp"
#include "isolab/expr.hpp"
#include "isolab/obj_io.hpp"
#include "isolab/permutability.hpp"
#include "isolab/runner.hpp"
#include "isolab/transforms.hpp"
#include "isolab/weierstrass.hpp"

namespace isolab {

namespace {

constexpr double kOrderFd = 1.8;
const double kOrderOde = std::log2(3.5);

ConformalGrid sphere_patch_grid() { return {0.2, 0.2, 0.05, 0.05, 21, 21}; }
ConformalGrid unit_square_grid() { return {0.0, 0.0, 0.05, 0.05, 21, 21}; }

void check_upper(CriterionResult& c, const std::string& name, double value, double bound) {
  c.checks.push_back({name, value, bound, false, value <= bound});
}

void check_lower(CriterionResult& c, const std::string& name, double value, double bound) {
  c.checks.push_back({name, value, bound, true, value >= bound});
}

double dual_deviation(const std::string& surface_name, const ConformalGrid& grid) {
  SampledField<ImPoint> f = sample(catalog_surface(surface_name), grid);
  DualResult d = christoffel_dual(f, {});
  SampledField<ImPoint> expected = sample(catalog_formula_dual(surface_name), grid);
  return translation_constancy(d.field, expected).deviation;
}

double involution_deviation(const AnalyticSurface& s, const ConformalGrid& grid) {
  SampledField<ImPoint> f = sample(s, grid);
  DualResult d1 = christoffel_dual(f, {});
  DualResult d2 = christoffel_dual(d1.field, {});
  return translation_constancy(d2.field, f).deviation;
}

const ImPoint kBianchiSeed{0.0, 0.0, 2.0};
const ImPoint kMainSeed{0.0, 0.0, 2.0};

}  // namespace

CriterionResult verify_christoffel() {
  CriterionResult c{1, "Christoffel closed forms (sphere -> catenoid, cylinder -> reflection)", {}};
  ConformalGrid g = sphere_patch_grid();
  double dev_sphere = dual_deviation("mercator-sphere", g);
  double dev_sphere_fine = dual_deviation("mercator-sphere", g.refined());
  check_upper(c, "sphere_dual_vs_catenoid", dev_sphere, 5e-3);
  check_lower(c, "sphere_dual_order", order_from_pair(dev_sphere, dev_sphere_fine), kOrderFd);
  double dev_cyl = dual_deviation("cylinder", g);
  double dev_cyl_fine = dual_deviation("cylinder", g.refined());
  check_upper(c, "cylinder_dual_vs_reflection", dev_cyl, 5e-3);
  check_lower(c, "cylinder_dual_order", order_from_pair(dev_cyl, dev_cyl_fine), kOrderFd);
  return c;
}

CriterionResult verify_duality() {
  CriterionResult c{2, "Duality involution f** = f up to translation", {}};
  ConformalGrid g = sphere_patch_grid();
  check_upper(c, "sphere", involution_deviation(catalog_surface("mercator-sphere"), g), 5e-3);
  check_upper(c, "cylinder", involution_deviation(catalog_surface("cylinder"), g), 5e-3);
  check_upper(c, "enneper",
              involution_deviation(catalog_surface("enneper"), unit_square_grid()), 5e-3);
  return c;
}

CriterionResult verify_weierstrass() {
  CriterionResult c{3, "Weierstrass oracle: Enneper surface and minimality", {}};
  WeierstrassData data = make_weierstrass("z", "2*z");
  auto h_max = [&](const ConformalGrid& g) {
    SurfaceResult r = weierstrass_surface(data, g, {});
    ShapeData sd = shape_analysis(r.field);
    double m = 0;
    for (double h : sd.H) m = std::max(m, std::abs(h));
    return m;
  };
  ConformalGrid g = unit_square_grid();
  SurfaceResult r = weierstrass_surface(data, g, {});
  SampledField<ImPoint> closed = sample(catalog_surface("enneper"), g);
  double dev = 0;
  for (int i = 0; i < g.count(); ++i)
    dev = std::max(dev, (r.field.values[i] - closed.values[i]).norm());
  check_upper(c, "enneper_vs_closed_form", dev, 1e-4);
  double h0 = h_max(g), h1 = h_max(g.refined());
  check_upper(c, "max_mean_curvature", h0, 5e-3);
  check_lower(c, "mean_curvature_order", order_from_pair(h0, h1), kOrderFd);
  return c;
}

CriterionResult verify_riccati() {
  CriterionResult c{4, "Spectral Riccati oracle: ghat = z - tanh(z+1) at t = 1/2", {}};
  WeierstrassData data = make_weierstrass("z", "2*z");
  ConformalGrid g = unit_square_grid();
  double t = 0.5;
  Complex seed = -std::tanh(1.0);
  HoloRiccatiResult hr = holomorphic_riccati(data, t, seed, g, 5);  // step 0.01

  Expr ghat_exact = tanh_darboux_ghat(Complex(-1.0, 0.0));
  Expr dghat_exact = ghat_exact.derivative();
  double dev = 0, eq9 = 0;
  for (int i = 0; i < g.count(); ++i) {
    Complex z = g.z(i % g.nu, i / g.nu);
    dev = std::max(dev, std::abs(hr.ghat.values[i] - ghat_exact.eval(z)));
    Complex diff = hr.ghat.values[i] - data.g_at(z);
    eq9 = std::max(eq9, std::abs(data.dg_at(z) * dghat_exact.eval(z) -
                                 t * diff * diff * data.q_at(z)));
  }
  check_upper(c, "ghat_vs_closed_form", dev, 1e-6);
  check_upper(c, "transform_identity_defect", eq9, 1e-8);
  DualDataResult dd = dual_data(data, hr.ghat, t);
  check_upper(c, "qhat_vs_q_relative", dd.qhat_vs_q.max, 1e-10);
  return c;
}

CriterionResult verify_minimal_pair() {
  CriterionResult c{5, "Minimal spectral pair: defect, positioning, rebuild", {}};
  WeierstrassData data = make_weierstrass("z", "2*z");
  ConformalGrid g = unit_square_grid();
  double t = 0.5;
  Complex seed = -std::tanh(1.0);
  auto report_max = [](const MinimalPairResult& mp, const std::string& name) {
    for (const auto& r : mp.reports)
      if (r.name == name) return r.max;
    throw Error("missing report " + name);
  };
  MinimalPairResult mp = minimal_darboux_pair(data, t, seed, g, {}, 5);
  MinimalPairResult mp_fine = minimal_darboux_pair(data, t, seed, g.refined(), {}, 5);
  double defect = report_max(mp, "riccati_defect_f_star_n");
  double defect_fine = report_max(mp_fine, "riccati_defect_f_star_n");
  check_upper(c, "riccati_defect_f_star_n", defect, 5e-3);
  check_lower(c, "riccati_defect_order", order_from_pair(defect, defect_fine), kOrderFd);
  check_upper(c, "sphere_lemma", report_max(mp, "sphere_lemma"), 5e-3);
  check_upper(c, "rebuilt_translation", report_max(mp, "rebuilt_translation"), 5e-3);
  return c;
}

CriterionResult verify_bianchi_diagram() {
  CriterionResult c{6, "Bianchi permutability on the sphere patch, t = 0.3", {}};
  ConformalGrid g = sphere_patch_grid();
  AnalyticSurface sphere = catalog_surface("mercator-sphere");
  PathOptions opt;
  opt.substeps_per_edge = 10;
  DiagramReport rep = verify_bianchi(sphere, 0.3, kBianchiSeed, g, opt);
  for (const auto& arrow : rep.arrows) check_upper(c, arrow.name, arrow.max, 5e-3);
  double dev = rep.closures.at(0).second.deviation;
  check_upper(c, "diagram_deviation", dev, 5e-3);
  DiagramReport fine = verify_bianchi(sphere, 0.3, kBianchiSeed, g.refined(), opt);
  check_lower(c, "diagram_order",
              order_from_pair(dev, fine.closures.at(0).second.deviation), kOrderFd);
  return c;
}

CriterionResult verify_main_diagram() {
  CriterionResult c{7, "Permutability theorem on the sphere patch, mu = inversion at 3i", {}};
  ConformalGrid g = sphere_patch_grid();
  AnalyticSurface sphere = catalog_surface("mercator-sphere");
  AnalyticSurface dual = catalog_formula_dual("mercator-sphere");
  MobiusMap mu = MobiusMap::inversion({3, 0, 0});
  PathOptions opt;
  opt.substeps_per_edge = 10;
  DiagramReport rep = verify_main_theorem(sphere, dual, mu, 0.4, kMainSeed, g, opt);
  DiagramReport fine = verify_main_theorem(sphere, dual, mu, 0.4, kMainSeed, g.refined(), opt);
  for (const auto& [name, stat] : rep.closures) {
    check_upper(c, name, stat.deviation, 1e-2);
    for (const auto& [fname, fstat] : fine.closures)
      if (fname == name)
        check_lower(c, name + "_order", order_from_pair(stat.deviation, fstat.deviation),
                    kOrderFd);
  }
  for (const auto& arrow : rep.arrows)
    if (arrow.name == "left_mobius_invariance")
      check_upper(c, arrow.name, arrow.max, 1e-6);
  return c;
}

CriterionResult verify_curved_flat() {
  CriterionResult c{8, "Curved-flat frame: factors, system residual, connection", {}};
  WeierstrassData data = make_weierstrass("z", "2*z");
  ConformalGrid g = unit_square_grid();
  double t = 0.5;
  Complex seed = -std::tanh(1.0);

  FactorsResult fac = integrating_factors(data, t, seed, 1.0, 1.0, g, 5);
  double dev_ahat = 0, dev_a = 0;
  for (int i = 0; i < g.count(); ++i) {
    Complex z = g.z(i % g.nu, i / g.nu);
    Complex ahat_exact = std::cosh(z + 1.0) / std::cosh(Complex(1.0));
    Complex a_exact = std::sinh(Complex(1.0)) / std::sinh(z + 1.0);
    dev_ahat = std::max(dev_ahat, std::abs(fac.ahat.values[i] - ahat_exact));
    dev_a = std::max(dev_a, std::abs(fac.a.values[i] - a_exact));
  }
  check_upper(c, "ahat_vs_cosh_closed_form", dev_ahat, 1e-6);
  check_upper(c, "a_vs_sinh_closed_form", dev_a, 1e-6);

  auto residuals = [&](const ConformalGrid& grid) {
    MinimalPairResult mp = minimal_darboux_pair(data, t, seed, grid, {}, 5);
    FactorsResult f2 = integrating_factors(data, t, seed, 1.0, 1.0, grid, 5);
    FrameField fr = frame(mp.pair.g, f2.ghat, f2.a, f2.ahat);
    SampledField<Complex> omega(grid);
    for (int i = 0; i < grid.count(); ++i)
      omega.values[i] = data.omega_at(grid.z(i % grid.nu, i / grid.nu));
    return curved_flat_residual(fr, omega, mp.pair.omega_hat, t);
  };
  CurvedFlatReports base = residuals(g);
  CurvedFlatReports fine = residuals(g.refined());
  check_upper(c, "curved_flat_system", base.system_residual.max, 5e-3);
  check_lower(c, "curved_flat_system_order",
              order_from_pair(base.system_residual.max, fine.system_residual.max), kOrderFd);
  check_upper(c, "connection_diagonal", base.connection_diagonal.max, 5e-3);
  return c;
}

CriterionResult verify_algebra() {
  CriterionResult c{9, "Quaternion and Moebius algebra on 1000 random samples", {}};
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  auto rand_quat = [&] { return Quaternion{unif(rng), unif(rng), unif(rng), unif(rng)}; };
  auto rand_pt = [&] { return ImPoint{unif(rng), unif(rng), unif(rng)}; };

  double norm_mult = 0, hamilton = 0, invol = 0, formula = 0, equator = 0, sphere_plane = 0,
         homo = 0;
  MobiusMap io = iota();
  for (int k = 0; k < 1000; ++k) {
    Quaternion p = rand_quat(), q = rand_quat();
    norm_mult = std::max(norm_mult,
                         std::abs((p * q).norm() - p.norm() * q.norm()) /
                             std::max(1.0, p.norm() * q.norm()));
    ImPoint a = rand_pt(), b = rand_pt();
    Quaternion ab = mul(a, b);
    hamilton = std::max(hamilton, std::abs(ab.scalar() + dot(a, b)));
    hamilton = std::max(hamilton, (ab.vec() - cross(a, b)).norm());

    ImPoint x = rand_pt();
    if ((x + ImPoint{1, 0, 0}).norm() < 0.3) continue;  // keep clear of the pole of iota
    ExtPoint once = mobius_apply(io, ExtPoint::finite(x));
    if (!once.infinite) {
      ExtPoint twice = mobius_apply(io, once);
      if (!twice.infinite)
        invol = std::max(invol, (twice.p - x).norm() / std::max(1.0, x.norm()));
      // direct formula -i - 2 (i + x)^-1
      ImPoint direct = ImPoint{-1, 0, 0} - 2.0 * inverse(x + ImPoint{1, 0, 0});
      formula = std::max(formula, (once.p - direct).norm() / std::max(1.0, direct.norm()));
    }
    // equator of S^2 in span{j,k} stays fixed; sphere points land in {i}-perp
    double th = unif(rng);
    ImPoint eq{0, std::cos(th), std::sin(th)};
    equator = std::max(equator, (mobius_apply_finite(io, eq) - eq).norm());
    ImPoint s = rand_pt();
    if (s.norm() > 1e-3) {
      s = s / s.norm();
      if ((s + ImPoint{1, 0, 0}).norm() > 0.3)
        sphere_plane = std::max(sphere_plane, std::abs(mobius_apply_finite(io, s).x1));
    }

    // Random words in generators that preserve Im H + {infinity}: translations,
    // conjugation-rotations, real scalings, inversions and iota.
    auto rand_generator = [&]() -> MobiusMap {
      switch (rng() % 5) {
        case 0: return MobiusMap::translation(rand_pt());
        case 1: {
          Quaternion r = rand_quat();
          if (r.norm() < 0.1) r = Quaternion(1.0);
          return {r, Quaternion(0.0), Quaternion(0.0), r};
        }
        case 2: return {Quaternion(1.0 + std::abs(unif(rng))), Quaternion(0.0), Quaternion(0.0),
                        Quaternion(1.0)};
        case 3: return MobiusMap::inversion(rand_pt());
        default: return io;
      }
    };
    MobiusMap m1 = mobius_compose(rand_generator(), rand_generator());
    MobiusMap m2 = mobius_compose(rand_generator(), rand_generator());
    auto well_conditioned = [](const MobiusMap& m, const ImPoint& pt) {
      Quaternion den = m.c * Quaternion(pt) + m.d;
      double scale = m.c.norm() * pt.norm() + m.d.norm();
      return den.norm() > 0.05 * scale && scale > 0;
    };
    if (well_conditioned(m2, x)) {
      ExtPoint inner = mobius_apply(m2, ExtPoint::finite(x));
      if (!inner.infinite && well_conditioned(m1, inner.p) &&
          well_conditioned(mobius_compose(m1, m2), x)) {
        ExtPoint chained = mobius_apply(m1, inner);
        ExtPoint composed = mobius_apply(mobius_compose(m1, m2), ExtPoint::finite(x));
        if (!chained.infinite && !composed.infinite) {
          double scale = std::max(1.0, chained.p.norm());
          homo = std::max(homo, (chained.p - composed.p).norm() / scale);
        }
      }
    }
  }
  check_upper(c, "norm_multiplicativity", norm_mult, 1e-10);
  check_upper(c, "hamilton_dot_cross", hamilton, 1e-10);
  check_upper(c, "iota_involution", invol, 1e-10);
  check_upper(c, "iota_formula", formula, 1e-10);
  check_upper(c, "iota_fixed_equator", equator, 1e-10);
  check_upper(c, "iota_sphere_to_plane", sphere_plane, 1e-10);
  check_upper(c, "mobius_composition", homo, 1e-10);
  return c;
}

namespace {

std::string read_bytes(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

RunConfig study_config(const std::string& dir, const std::string& tag) {
  RunConfig c;
  c.surface.g = "z";
  c.surface.h = "2*z";
  c.grid = unit_square_grid();
  c.transform.kind = TransformKind::minimal_darboux;
  c.transform.t = 0.5;
  c.transform.g_hat_seed = -std::tanh(1.0);
  c.numeric.refine = 1;
  c.numeric.substeps = 2;
  c.output.obj = dir + "/" + tag + ".obj";
  c.output.csv = dir + "/" + tag + ".csv";
  return c;
}

}  // namespace

CriterionResult verify_determinism() {
  CriterionResult c{10, "Byte-identical reruns and convergence orders by class", {}};
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "isolab_verify_determinism";
  fs::create_directories(dir);

  RunConfig cfg_a = study_config(dir.string(), "a");
  RunConfig cfg_b = study_config(dir.string(), "b");
  RunOutcome a = run(cfg_a);
  RunOutcome b = run(cfg_b);
  double csv_same = read_bytes(cfg_a.output.csv) == read_bytes(cfg_b.output.csv) ? 0 : 1;
  double obj_same = 0;
  for (const char* name : {"f", "fhat", "fhat_rebuilt"}) {
    std::string pa = dir.string() + "/a." + name + ".obj";
    std::string pb = dir.string() + "/b." + name + ".obj";
    if (read_bytes(pa) != read_bytes(pb)) obj_same = 1;
  }
  check_upper(c, "csv_byte_identical", csv_same, 0);
  check_upper(c, "obj_byte_identical", obj_same, 0);

  // Order-by-class study: the minimal-darboux run plus the main-theorem
  // diagram, integration substeps fixed so everything scales with the grid.
  std::vector<ResidualReport> reports = a.artifacts.reports;
  {
    RunConfig cfg = cfg_a;
    cfg.surface = SurfaceSpec{};
    cfg.surface.catalog = "mercator-sphere";
    cfg.grid = sphere_patch_grid();
    cfg.transform = TransformSpec{};
    cfg.transform.kind = TransformKind::verify_main;
    cfg.transform.t = 0.4;
    cfg.transform.seed = kMainSeed;
    cfg.transform.mu.inversion_center = ImPoint{3, 0, 0};
    cfg.numeric.refine = 1;
    cfg.numeric.substeps = 2;
    cfg.output = OutputSpec{};
    RunOutcome mt = run(cfg);
    for (const auto& r : mt.artifacts.reports) reports.push_back(r);
  }
  double fd_worst = 10, ode_worst = 10;
  for (const auto& r : reports) {
    if (!r.order_estimate) continue;
    if (r.tol_class == TolClass::fd) fd_worst = std::min(fd_worst, *r.order_estimate);
    if (r.tol_class == TolClass::ode) ode_worst = std::min(ode_worst, *r.order_estimate);
  }
  check_lower(c, "fd_class_worst_order", fd_worst, kOrderFd);
  check_lower(c, "ode_class_worst_order", ode_worst, kOrderOde);
  return c;
}

std::vector<CriterionResult> verify_all() {
  return {verify_christoffel(),    verify_duality(),     verify_weierstrass(),
          verify_riccati(),        verify_minimal_pair(), verify_bianchi_diagram(),
          verify_main_diagram(),   verify_curved_flat(),  verify_algebra(),
          verify_determinism()};
}

const std::vector<std::string>& verify_names() {
  static const std::vector<std::string> names = {
      "christoffel", "duality",      "weierstrass", "riccati",     "minimal-pair",
      "bianchi",     "main-theorem", "curved-flat", "algebra",     "determinism"};
  return names;
}

CriterionResult verify_by_name(const std::string& name) {
  if (name == "christoffel") return verify_christoffel();
  if (name == "duality") return verify_duality();
  if (name == "weierstrass") return verify_weierstrass();
  if (name == "riccati") return verify_riccati();
  if (name == "minimal-pair") return verify_minimal_pair();
  if (name == "bianchi") return verify_bianchi_diagram();
  if (name == "main-theorem") return verify_main_diagram();
  if (name == "curved-flat") return verify_curved_flat();
  if (name == "algebra") return verify_algebra();
  if (name == "determinism") return verify_determinism();
  throw ValidationError("unknown verification '" + name + "'");
}

}  // namespace isolab
