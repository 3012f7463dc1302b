#pragma once

#include "isolab/analytic.hpp"
#include "isolab/grid.hpp"
#include "isolab/transforms.hpp"

namespace isolab {

// Per-arrow residuals of a commuting diagram plus the "up to translation"
// closure statistics.  Arrow names follow the quadrilaterals of the
// permutability proof (upper / inner / left / close).
struct DiagramReport {
  std::string name;
  std::vector<ResidualReport> arrows;
  std::vector<std::pair<std::string, TranslationStat>> closures;

  // Closure deviations flattened into reports for CSV output.
  std::vector<ResidualReport> flattened(double spacing) const;
};

// Builds f* (dual), fhat (spectral transform), fhat* = f* + (1/t)(fhat-f)^-1
// and checks that fhat* is a dual of fhat, satisfies the f*-side flow
// d fhat* = t(fhat*-f*) df (fhat*-f*), and closes the diagram up to
// translation against the integrated dual of fhat.
// dual_override replaces the Christoffel-formula dual (value and form) by a
// prescribed one, e.g. the Gauss map of a minimal surface.
DiagramReport verify_bianchi(const AnalyticSurface& f, double t, const ImPoint& seed,
                             const ConformalGrid& grid, const PathOptions& opt,
                             const AnalyticSurface* dual_override = nullptr);

// G_mu(fhat) = G_mu(f) + (1/t) (mu o fhat* - mu o f*)^-1, node-wise.
SampledField<ImPoint> gd_transform(const SampledField<ImPoint>& Gf,
                                   const SampledField<ImPoint>& mu_fstar,
                                   const SampledField<ImPoint>& mu_fhatstar, double t);

// Full diagram: f* (analytic dual), mu o f*, G_mu(f) = (mu o f*)*,
// fhat = D_t(f), fhat* by the inner quadrilateral, mu o fhat* checked against
// D_t(mu o f*), and the gd_transform output compared against the direct
// spectral transform of G_mu(f) and against the dual of mu o fhat*.
DiagramReport verify_main_theorem(const AnalyticSurface& f, const AnalyticSurface& fstar,
                                  const MobiusMap& mu, double t, const ImPoint& seed,
                                  const ConformalGrid& grid, const PathOptions& opt);

// Node-wise residual of
//   0 = Hhat |fhat-f|^2 - 2 <fhat-f, n> + (1/t) H*
// with n from shape_analysis(f), Hhat evaluated with the consistent normal
// nhat = -(fhat-f)^-1 n (fhat-f) and H* with n* = -n.
ResidualReport lemma_residual(const SampledField<ImPoint>& f, const SampledField<ImPoint>& fstar,
                              const SampledField<ImPoint>& fhat, double t);

// The consistent normal field -(fhat-f)^-1 n (fhat-f).
SampledField<ImPoint> consistent_normal(const SampledField<ImPoint>& f,
                                        const SampledField<ImPoint>& fhat,
                                        const SampledField<ImPoint>& n);

}  // namespace isolab
