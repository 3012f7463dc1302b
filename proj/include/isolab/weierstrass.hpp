#pragma once

#include "isolab/analytic.hpp"
#include "isolab/expr.hpp"
#include "isolab/grid.hpp"

namespace isolab {

// Weierstrass data (g, h) with the derived quantities omega = dh/2 and
// q = dh dg, kept as closed-form evaluators so 2 omega dg = dh dg = q holds by
// construction.
struct WeierstrassData {
  Expr g, h, dg, dh;

  Complex g_at(Complex z) const { return g.eval(z); }
  Complex dg_at(Complex z) const { return dg.eval(z); }
  Complex omega_at(Complex z) const { return 0.5 * dh.eval(z); }
  Complex q_at(Complex z) const { return dh.eval(z) * dg.eval(z); }
};

WeierstrassData make_weierstrass(const Expr& g, const Expr& h);
WeierstrassData make_weierstrass(const std::string& g, const std::string& h);

// n = ((1-|g|^2) i - 2 j g) / (1+|g|^2); with g = g1 + g2 i the components are
// ((1-|g|^2), -2 g1, 2 g2)/(1+|g|^2), the sign of the k part fixed by
// j g = g1 j - g2 k.
ImPoint gauss_point(Complex g);
SampledField<ImPoint> gauss_from_g(const SampledField<Complex>& g_field);

struct SurfaceResult {
  SampledField<ImPoint> field;
  ResidualReport closedness;  // of the node-sampled integrand
  ResidualReport q_cr;        // Cauchy-Riemann residual of q
};

// Integrates df = 2Re(g w) i + Re((1-g^2) w) j + Im((1+g^2) w) k, w = dh/2,
// with f(origin) = f0.  The quadrature evaluates the integrand analytically
// (Simpson per edge); the closedness report is the usual nodal diagnostic.
SurfaceResult weierstrass_surface(const WeierstrassData& data, const ConformalGrid& grid,
                                  const ImPoint& f0);

struct HoloRiccatiResult {
  SampledField<Complex> ghat;
  ResidualReport path_independence;
  // |dg dghat - t (ghat-g)^2 q| with dghat taken from the flow itself; this
  // pins the omega-route against the q-route of the data equivalences.
  ResidualReport transform_identity;
};

// d ghat = 2 t (ghat - g)^2 omega along the standard grid path.
// substeps_per_edge == 0 picks enough substeps for a step <= 0.01.
HoloRiccatiResult holomorphic_riccati(const WeierstrassData& data, double t, Complex ghat_seed,
                                      const ConformalGrid& grid, int substeps_per_edge = 0);

struct DualDataResult {
  SampledField<Complex> ghat;
  SampledField<Complex> omega_hat;  // dg / (2 t (ghat-g)^2), coefficient of dz
  SampledField<Complex> q_hat;      // 2 omega_hat dghat
  ResidualReport qhat_vs_q;         // relative
};

DualDataResult dual_data(const WeierstrassData& data, const SampledField<Complex>& ghat,
                         double t);

struct MinimalPair {
  SampledField<ImPoint> f, fhat;
  SampledField<ImPoint> n, nhat;
  SampledField<Complex> g, ghat, omega_hat;
  double t = 0;
};

struct MinimalPairResult {
  MinimalPair pair;
  SampledField<ImPoint> fhat_rebuilt;  // independent integration of (ghat, omega_hat)
  std::vector<ResidualReport> reports;
  double gauss_sign = 1;  // alignment of the surface normal with gauss_from_g
};

// Builds the positioned pair fhat = f + (1/t)(nhat - n)^-1 and verifies it:
//   riccati_defect_f_star_n   |d fhat - t(fhat-f) dn (fhat-f)|          (fd)
//   rebuilt_translation       deviation of the (ghat, omega_hat) surface (fd)
//   sphere_lemma              |<fhat-f, n> - H*/(2t)|                   (fd)
//   degenerate_pairing        -j ghat as a spectral transform of -j g   (fd)
MinimalPairResult minimal_darboux_pair(const WeierstrassData& data, double t, Complex ghat_seed,
                                       const ConformalGrid& grid, const ImPoint& f0,
                                       int substeps_per_edge = 0);

}  // namespace isolab
