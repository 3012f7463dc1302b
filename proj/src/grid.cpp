#include "isolab/grid.hpp"

#include "isolab/expr.hpp"

namespace isolab {

SampledField<ImPoint> sample(const std::function<ImPoint(double, double)>& map,
                             const ConformalGrid& grid) {
  grid.validate();
  return sample_nodes<ImPoint>(grid, [&](int p, int q) { return map(grid.u(p), grid.v(q)); });
}

SampledField<Complex> sample(const Expr& e, const ConformalGrid& grid) {
  grid.validate();
  return sample_nodes<Complex>(grid, [&](int p, int q) {
    try {
      return e.eval(grid.z(p, q));
    } catch (const PoleError& err) {
      throw PoleOnGridError(err.what(), p, q);
    }
  });
}

TranslationStat translation_constancy(const SampledField<ImPoint>& a,
                                      const SampledField<ImPoint>& b) {
  if (!a.grid.matches(b.grid))
    throw ValidationError("translation_constancy requires matching grids");
  TranslationStat st;
  for (std::size_t i = 0; i < a.values.size(); ++i) st.mean += a.values[i] - b.values[i];
  st.mean = st.mean / static_cast<double>(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    st.deviation = std::max(st.deviation, (a.values[i] - b.values[i] - st.mean).norm());
  return st;
}

ResidualReport cauchy_riemann_residual(const SampledField<Complex>& w) {
  SampledField<Complex> wu = partial(w, Axis::u);
  SampledField<Complex> wv = partial(w, Axis::v);
  std::vector<double> r(w.grid.count());
  parallel_for(w.grid.count(), [&](int i) {
    r[i] = std::abs(wv.values[i] - Complex(0, 1) * wu.values[i]);
  });
  return make_report("cauchy_riemann", r, w.grid.spacing(), TolClass::fd);
}

}  // namespace isolab
