#pragma once

#include "isolab/grid.hpp"

namespace isolab {

// Per-node first/second fundamental forms and derived curvature data of an
// immersed ImPoint field, with the diagnostics used throughout:
//   conformality  |E - G| / E  and  |F| / E
//   curvature-line alignment  |M| / sqrt(|L N| + eps)
struct ShapeData {
  ConformalGrid grid;
  std::vector<double> E, F, G;     // first fundamental form
  std::vector<double> L, M, N;     // second fundamental form
  std::vector<ImPoint> normal;     // f_u x f_v / |f_u x f_v|
  std::vector<double> H, K;
  std::vector<double> kappa1, kappa2;
  std::vector<double> conformality;      // max(|E-G|, |F|) / E
  std::vector<double> curvature_line;    // |M| / sqrt(|L N| + eps)
};

ShapeData shape_analysis(const SampledField<ImPoint>& f);

// Mean curvature of f evaluated with the prescribed unit normal field: the
// discrete H sign is flipped wherever the default normal disagrees.
std::vector<double> mean_curvature_with_normal(const ShapeData& sd,
                                               const SampledField<ImPoint>& normal);

}  // namespace isolab
