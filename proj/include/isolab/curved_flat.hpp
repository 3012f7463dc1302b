#pragma once

#include <string>

#include "isolab/grid.hpp"
#include "isolab/weierstrass.hpp"

namespace isolab {

struct Mat2c {
  Complex m00, m01, m10, m11;

  Mat2c operator+(const Mat2c& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2c operator-(const Mat2c& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  Mat2c operator*(const Mat2c& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Complex det() const { return m00 * m11 - m01 * m10; }
  Mat2c inverse() const {
    Complex d = det();
    if (d == Complex(0, 0)) throw DomainError("singular 2x2 matrix");
    return {m11 / d, -m01 / d, -m10 / d, m00 / d};
  }
  double norm() const {
    return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
  }
};

inline Mat2c operator*(double s, const Mat2c& m) {
  return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
}
inline double payload_norm(const Mat2c& m) { return m.norm(); }

// Frame with columns (g a, a) and (ghat ahat, ahat); det = a ahat (g - ghat).
struct FrameField {
  SampledField<Mat2c> phi;
  SampledField<Complex> a, ahat, g, ghat;
};

struct FactorsResult {
  SampledField<Complex> a, ahat, ghat;
  ResidualReport path_independence;
};

// Integrating factors of the linearized spectral flow:
//   d ahat + 2 t omega (ghat - g) ahat = 0
//   d a    + 2 t omega_hat (g - ghat) a = 0
// integrated jointly with ghat so the coefficients stay exact.
FactorsResult integrating_factors(const WeierstrassData& data, double t, Complex ghat_seed,
                                  Complex a0, Complex ahat0, const ConformalGrid& grid,
                                  int substeps_per_edge = 0);

FrameField frame(const SampledField<Complex>& g, const SampledField<Complex>& ghat,
                 const SampledField<Complex>& a, const SampledField<Complex>& ahat);

struct CurvedFlatReports {
  ResidualReport system_residual;       // |dPhi + t Phi N|
  ResidualReport connection_diagonal;   // diagonal of Phi^-1 dPhi + t N
  ResidualReport det_identity;          // det Phi vs a ahat (g - ghat)
};

// N is strictly off-diagonal with
//   N12 = 2 a^-1 omega (ghat - g) ahat,  N21 = 2 ahat^-1 omega_hat (g - ghat) a
// (coefficients of dz; the v-components carry the factor i).
CurvedFlatReports curved_flat_residual(const FrameField& fr, const SampledField<Complex>& omega,
                                       const SampledField<Complex>& omega_hat, double t);

// Per-node pairs of unit-sphere points, the boundary data of the Poincare
// ball.  CSV schema: u,v,nx,ny,nz,nhx,nhy,nhz.  The OBJ output draws one
// polyline segment from n to nhat per node.
void poincare_pair_export(const SampledField<ImPoint>& n, const SampledField<ImPoint>& nhat,
                          const std::string& csv_path, const std::string& obj_path);

struct PointPair {
  double u, v;
  ImPoint n, nhat;
};
std::vector<PointPair> poincare_pair_import(const std::string& csv_path);

}  // namespace isolab
