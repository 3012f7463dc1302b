#include "isolab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isolab/analytic.hpp"
#include "isolab/curved_flat.hpp"
#include "isolab/expr.hpp"
#include "isolab/obj_io.hpp"
#include "isolab/permutability.hpp"
#include "isolab/transforms.hpp"
#include "isolab/weierstrass.hpp"

namespace isolab {

namespace {

int verify_substeps(const RunConfig& c, const ConformalGrid& g) {
  if (c.numeric.substeps > 0) return c.numeric.substeps;
  return std::max(1, static_cast<int>(std::ceil(g.spacing() / 0.005)));
}

int flow_substeps(const RunConfig& c, const ConformalGrid& g) {
  if (c.numeric.substeps > 0) return c.numeric.substeps;
  return std::max(1, static_cast<int>(std::ceil(g.spacing() / 0.01)));
}

struct BaseSurface {
  SampledField<ImPoint> field;
  std::vector<ResidualReport> reports;
  bool has_weierstrass = false;
  WeierstrassData data;
  bool has_analytic = false;
  AnalyticSurface analytic;
};

BaseSurface build_surface(const RunConfig& c, const ConformalGrid& grid) {
  BaseSurface s;
  if (!c.surface.is_weierstrass()) {
    s.analytic = catalog_surface(c.surface.catalog);
    s.has_analytic = true;
    s.field = sample(s.analytic, grid);
    return s;
  }
  s.data = make_weierstrass(c.surface.g, c.surface.h);
  s.has_weierstrass = true;
  SurfaceResult r = weierstrass_surface(s.data, grid, {});
  s.field = std::move(r.field);
  s.reports.push_back(r.closedness);
  s.reports.push_back(r.q_cr);
  return s;
}

void require_weierstrass(const BaseSurface& s, const char* kind) {
  if (!s.has_weierstrass)
    throw ValidationError(std::string(kind) + " requires Weierstrass surface data (g, h)");
}

void require_catalog(const BaseSurface& s, const char* kind) {
  if (!s.has_analytic)
    throw ValidationError(std::string(kind) + " requires a catalog surface");
}

}  // namespace

RunArtifacts execute(const RunConfig& c, const ConformalGrid& grid) {
  RunArtifacts art;
  BaseSurface base = build_surface(c, grid);
  for (const auto& r : base.reports) art.reports.push_back(r);
  art.surfaces.emplace_back("f", base.field);
  const TransformSpec& t = c.transform;

  switch (t.kind) {
    case TransformKind::christoffel: {
      DualResult d = christoffel_dual(base.field, {});
      art.reports.push_back(d.closedness);
      art.reports.push_back(d.conformality);
      art.reports.push_back(d.curvature_line);
      PairingReport pr = christoffel_pairing(base.field, d.field);
      art.reports.push_back(pr.scalar_u);
      art.reports.push_back(pr.scalar_v);
      art.reports.push_back(pr.vector_parts);
      art.reports.push_back(pr.normal_term);
      art.surfaces.emplace_back("fstar", std::move(d.field));
      break;
    }
    case TransformKind::goursat: {
      GoursatResult g = goursat(base.field, t.mu.build(), {});
      art.reports.push_back(g.dual_closedness);
      art.reports.push_back(g.result_closedness);
      art.surfaces.emplace_back("fstar", std::move(g.dual));
      art.surfaces.emplace_back("mu_fstar", std::move(g.mobius_dual));
      art.surfaces.emplace_back("goursat", std::move(g.field));
      break;
    }
    case TransformKind::darboux: {
      DualResult d = christoffel_dual(base.field, {});
      art.reports.push_back(d.closedness);
      DarbouxResult dx = darboux_transform(base.field, d.field, {t.t, t.seed});
      art.reports.push_back(dx.plaquette_inconsistency);
      art.reports.push_back(dx.riccati_defect);
      art.surfaces.emplace_back("fstar", std::move(d.field));
      art.surfaces.emplace_back("fhat", std::move(dx.field));
      break;
    }
    case TransformKind::minimal_darboux: {
      require_weierstrass(base, "minimal-darboux");
      MinimalPairResult mp = minimal_darboux_pair(base.data, t.t, t.g_hat_seed, grid, {},
                                                  flow_substeps(c, grid));
      for (const auto& r : mp.reports) art.reports.push_back(r);
      art.surfaces.emplace_back("fhat", mp.pair.fhat);
      art.surfaces.emplace_back("fhat_rebuilt", mp.fhat_rebuilt);
      break;
    }
    case TransformKind::verify_bianchi: {
      require_catalog(base, "verify-bianchi");
      PathOptions opt;
      opt.substeps_per_edge = verify_substeps(c, grid);
      DiagramReport rep = verify_bianchi(base.analytic, t.t, t.seed, grid, opt);
      for (const auto& r : rep.flattened(grid.spacing())) art.reports.push_back(r);
      break;
    }
    case TransformKind::verify_main: {
      require_catalog(base, "verify-main");
      AnalyticSurface dual = catalog_formula_dual(c.surface.catalog);
      PathOptions opt;
      opt.substeps_per_edge = verify_substeps(c, grid);
      DiagramReport rep =
          verify_main_theorem(base.analytic, dual, t.mu.build(), t.t, t.seed, grid, opt);
      for (const auto& r : rep.flattened(grid.spacing())) art.reports.push_back(r);
      break;
    }
    case TransformKind::curved_flat: {
      require_weierstrass(base, "curved-flat");
      int sub = flow_substeps(c, grid);
      MinimalPairResult mp =
          minimal_darboux_pair(base.data, t.t, t.g_hat_seed, grid, {}, sub);
      for (const auto& r : mp.reports) art.reports.push_back(r);
      FactorsResult fac =
          integrating_factors(base.data, t.t, t.g_hat_seed, 1.0, 1.0, grid, sub);
      art.reports.push_back(fac.path_independence);
      FrameField fr = frame(mp.pair.g, fac.ghat, fac.a, fac.ahat);
      SampledField<Complex> omega(grid);
      for (int i = 0; i < grid.count(); ++i)
        omega.values[i] = base.data.omega_at(grid.z(i % grid.nu, i / grid.nu));
      CurvedFlatReports cf = curved_flat_residual(fr, omega, mp.pair.omega_hat, t.t);
      art.reports.push_back(cf.system_residual);
      art.reports.push_back(cf.connection_diagonal);
      art.reports.push_back(cf.det_identity);
      art.surfaces.emplace_back("fhat", mp.pair.fhat);
      break;
    }
  }
  return art;
}

double default_tolerance(TolClass cls) {
  switch (cls) {
    case TolClass::fd: return 1e-2;
    case TolClass::ode: return 1e-6;
    case TolClass::algebraic: return 1e-10;
  }
  return 1e-2;
}

double tolerance_for(const RunConfig& c, TolClass cls) {
  auto it = c.numeric.tolerances.find(tol_class_name(cls));
  if (it != c.numeric.tolerances.end()) return it->second;
  return default_tolerance(cls);
}

namespace {

std::string obj_path_for(const std::string& base, const std::string& name) {
  std::string stem = base;
  const std::string ext = ".obj";
  if (stem.size() >= ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0)
    stem.resize(stem.size() - ext.size());
  return stem + "." + name + ".obj";
}

}  // namespace

RunOutcome run(const RunConfig& c) {
  RunOutcome out;
  out.artifacts = execute(c, c.grid);

  // Order estimates from half-spacing reruns; integration substep counts stay
  // fixed so every error source scales with the grid.
  if (c.numeric.refine > 0) {
    RunConfig fixed = c;
    if (fixed.numeric.substeps == 0) {
      bool verify_kind = c.transform.kind == TransformKind::verify_bianchi ||
                         c.transform.kind == TransformKind::verify_main;
      fixed.numeric.substeps =
          verify_kind ? verify_substeps(c, c.grid) : flow_substeps(c, c.grid);
    }
    std::vector<std::vector<ResidualReport>> levels;
    levels.push_back(out.artifacts.reports);
    ConformalGrid grid = c.grid;
    for (int r = 0; r < c.numeric.refine; ++r) {
      grid = grid.refined();
      levels.push_back(execute(fixed, grid).reports);
    }
    const std::vector<ResidualReport>& coarse = levels[levels.size() - 2];
    const std::vector<ResidualReport>& fine = levels.back();
    for (ResidualReport& base : out.artifacts.reports) {
      auto find = [&base](const std::vector<ResidualReport>& v) -> const ResidualReport* {
        for (const ResidualReport& r : v)
          if (r.name == base.name) return &r;
        return nullptr;
      };
      const ResidualReport* a = find(coarse);
      const ResidualReport* b = find(fine);
      if (a && b) {
        double ord = order_from_pair(a->max, b->max);
        if (std::isfinite(ord)) base.order_estimate = ord;
      }
    }
  }

  if (!c.output.obj.empty())
    for (const auto& [name, field] : out.artifacts.surfaces)
      export_obj(field, obj_path_for(c.output.obj, name));
  if (!c.output.csv.empty()) write_report_csv(out.artifacts.reports, c.output.csv);

  out.ok = true;
  for (const ResidualReport& r : out.artifacts.reports) {
    double tol = tolerance_for(c, r.tol_class);
    bool pass = r.max <= tol;
    out.ok = out.ok && pass;
    std::ostringstream line;
    line << (pass ? "  ok   " : "  FAIL ") << r.name << "  max=" << r.max << "  mean=" << r.mean
         << "  class=" << tol_class_name(r.tol_class) << "  tol=" << tol;
    if (r.order_estimate) line << "  order=" << *r.order_estimate;
    out.lines.push_back(line.str());
  }
  return out;
}

}  // namespace isolab
