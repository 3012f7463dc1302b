#pragma once

#include "isolab/analytic.hpp"
#include "isolab/grid.hpp"
#include "isolab/shape.hpp"

namespace isolab {

// Spectral parameter and initial point of a Darboux transform; together they
// realize the (1+3)-parameter family.
struct DarbouxParams {
  double t = 0;
  ImPoint seed;

  void validate() const {
    if (t == 0.0) throw ValidationError("Darboux spectral parameter t must be nonzero");
  }
};

struct DualResult {
  SampledField<ImPoint> field;
  ResidualReport closedness;
  double path_dependence = 0;
  // Attached immersion diagnostics of the input (the precondition is
  // diagnosed, not assumed).
  ResidualReport conformality;
  ResidualReport curvature_line;
};

// Integrates -(1/E)(f_u du - f_v dv) from finite differences of f, anchored at
// f*(origin) = base.
DualResult christoffel_dual(const SampledField<ImPoint>& f, const ImPoint& base);

// Residuals of the dual-pairing identities for a formula-normalized pair:
//   scalar(f_u f*_u) = 1, scalar(f_v f*_v) = -1,
//   vector(f_u f*_u) = vector(f_v f*_v) = 0,
//   f_u f*_v + f_v f*_u = 2n  (n resolved against the default normal, sign
//   recorded once per run).
struct PairingReport {
  ResidualReport scalar_u, scalar_v, vector_parts, normal_term;
  double normal_sign = 1;
};
PairingReport christoffel_pairing(const SampledField<ImPoint>& f,
                                  const SampledField<ImPoint>& fstar);

struct GoursatResult {
  SampledField<ImPoint> field;        // (mu o f*)*
  SampledField<ImPoint> dual;         // f*
  SampledField<ImPoint> mobius_dual;  // mu o f*
  ResidualReport dual_closedness;
  ResidualReport result_closedness;
};

// The intermediate dual is anchored at dual_base; the transform depends on
// that choice, which is part of the Goursat family.
GoursatResult goursat(const SampledField<ImPoint>& f, const MobiusMap& mu, const ImPoint& base,
                      const ImPoint& dual_base = {});

struct DarbouxResult {
  SampledField<ImPoint> field;
  ResidualReport plaquette_inconsistency;  // rows-first vs columns-first
  ResidualReport riccati_defect;           // |d fhat - t (fhat-f) df* (fhat-f)| by central differences
};

// Grid-data route: the coefficient 1-form comes from central differences of
// fstar and is linearly interpolated along each edge.
DarbouxResult darboux_transform(const SampledField<ImPoint>& f,
                                const SampledField<ImPoint>& fstar, const DarbouxParams& params);

// Closed-form route: coefficients evaluated exactly at the RK4 stage points.
// dual_override supplies the paired dual directly (e.g. the Gauss map of a
// minimal surface); by default the dual form comes from Christoffel's formula
// applied to s.
DarbouxResult darboux_transform(const AnalyticSurface& s, const ConformalGrid& grid,
                                const DarbouxParams& params, const PathOptions& opt,
                                const AnalyticSurface* dual_override = nullptr);

// fhat* = f* + (1/t)(fhat - f)^-1, node-wise.
SampledField<ImPoint> bianchi_dual(const SampledField<ImPoint>& fstar,
                                   const SampledField<ImPoint>& f,
                                   const SampledField<ImPoint>& fhat, double t);

// Grid-median of |f - centroid|: the translation-invariant size used by
// coincidence thresholds.
double field_scale(const SampledField<ImPoint>& f);

}  // namespace isolab
