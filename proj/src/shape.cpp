#include "isolab/shape.hpp"

#include <algorithm>
#include <cmath>

namespace isolab {

namespace {

double grid_median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

}  // namespace

ShapeData shape_analysis(const SampledField<ImPoint>& f) {
  const ConformalGrid& g = f.grid;
  SampledField<ImPoint> fu = partial(f, Axis::u);
  SampledField<ImPoint> fv = partial(f, Axis::v);
  SampledField<ImPoint> fuu = second_partial(f, Axis::u);
  SampledField<ImPoint> fvv = second_partial(f, Axis::v);
  SampledField<ImPoint> fuv = partial(fu, Axis::v);

  std::vector<double> cross_norm(g.count()), uv_scale(g.count());
  for (int i = 0; i < g.count(); ++i) {
    cross_norm[i] = cross(fu.values[i], fv.values[i]).norm();
    uv_scale[i] = fu.values[i].norm() * fv.values[i].norm();
  }
  double eps_immersion = 1e-10 * grid_median(uv_scale);
  for (int i = 0; i < g.count(); ++i) {
    if (cross_norm[i] <= eps_immersion)
      throw DegenerateMetricError("degenerate immersion, |f_u x f_v| ~ 0", i % g.nu, i / g.nu);
  }

  ShapeData sd;
  sd.grid = g;
  int n = g.count();
  sd.E.resize(n); sd.F.resize(n); sd.G.resize(n);
  sd.L.resize(n); sd.M.resize(n); sd.N.resize(n);
  sd.normal.resize(n);
  sd.H.resize(n); sd.K.resize(n);
  sd.kappa1.resize(n); sd.kappa2.resize(n);
  sd.conformality.resize(n);
  sd.curvature_line.resize(n);

  parallel_for(n, [&](int i) {
    const ImPoint &au = fu.values[i], &av = fv.values[i];
    double E = dot(au, au), F = dot(au, av), G = dot(av, av);
    ImPoint nrm = cross(au, av) / cross_norm[i];
    double L = dot(fuu.values[i], nrm);
    double M = dot(fuv.values[i], nrm);
    double N = dot(fvv.values[i], nrm);
    double det1 = E * G - F * F;
    double H = (L * G - 2 * M * F + N * E) / (2 * det1);
    double K = (L * N - M * M) / det1;
    double disc = std::sqrt(std::max(0.0, H * H - K));
    sd.E[i] = E; sd.F[i] = F; sd.G[i] = G;
    sd.L[i] = L; sd.M[i] = M; sd.N[i] = N;
    sd.normal[i] = nrm;
    sd.H[i] = H;
    sd.K[i] = K;
    sd.kappa1[i] = H + disc;
    sd.kappa2[i] = H - disc;
    sd.conformality[i] = std::max(std::abs(E - G), std::abs(F)) / E;
    sd.curvature_line[i] = std::abs(M) / std::sqrt(std::abs(L * N) + 1e-12);
  });
  return sd;
}

std::vector<double> mean_curvature_with_normal(const ShapeData& sd,
                                               const SampledField<ImPoint>& normal) {
  std::vector<double> out(sd.H.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = dot(sd.normal[i], normal.values[i]) >= 0 ? 1.0 : -1.0;
    out[i] = s * sd.H[i];
  }
  return out;
}

}  // namespace isolab
