#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

#include "isolab/errors.hpp"

namespace isolab {

using Complex = std::complex<double>;

// Point of R^3 identified with the imaginary quaternion x1 i + x2 j + x3 k.
struct ImPoint {
  double x1 = 0, x2 = 0, x3 = 0;

  constexpr ImPoint() = default;
  constexpr ImPoint(double a, double b, double c) : x1(a), x2(b), x3(c) {}

  constexpr ImPoint operator+(const ImPoint& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
  constexpr ImPoint operator-(const ImPoint& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
  constexpr ImPoint operator-() const { return {-x1, -x2, -x3}; }
  constexpr ImPoint& operator+=(const ImPoint& o) { x1 += o.x1; x2 += o.x2; x3 += o.x3; return *this; }
  constexpr ImPoint& operator-=(const ImPoint& o) { x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; return *this; }

  double norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
  constexpr double norm2() const { return x1 * x1 + x2 * x2 + x3 * x3; }
};

constexpr ImPoint operator*(double s, const ImPoint& p) { return {s * p.x1, s * p.x2, s * p.x3}; }
constexpr ImPoint operator*(const ImPoint& p, double s) { return s * p; }
constexpr ImPoint operator/(const ImPoint& p, double s) { return {p.x1 / s, p.x2 / s, p.x3 / s}; }

constexpr double dot(const ImPoint& a, const ImPoint& b) {
  return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

constexpr ImPoint cross(const ImPoint& a, const ImPoint& b) {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}

// Inverse of an imaginary quaternion stays imaginary: p^-1 = -p / |p|^2.
inline ImPoint inverse(const ImPoint& p) {
  double n2 = p.norm2();
  if (n2 == 0.0) throw DomainError("inverse of zero imaginary quaternion");
  return {-p.x1 / n2, -p.x2 / n2, -p.x3 / n2};
}

// Embedding of C into span{j,k}: w |-> (Re w) j + (Im w) k.  With the Hamilton
// relations this is w * j for w = Re w + (Im w) i, and j * w = conj(w) * j.
constexpr ImPoint embed_complex(Complex w) { return {0.0, w.real(), w.imag()}; }
constexpr Complex jk_part(const ImPoint& p) { return {p.x2, p.x3}; }

// Hamilton quaternion w + x i + y j + z k, with i j = k, j k = i, k i = j.
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(double real) : w(real) {}
  constexpr explicit Quaternion(const ImPoint& p) : w(0), x(p.x1), y(p.x2), z(p.x3) {}

  constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  Quaternion inverse() const {
    double n2 = norm2();
    if (n2 == 0.0) throw DomainError("inverse of zero quaternion");
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  constexpr double scalar() const { return w; }
  constexpr ImPoint vec() const { return {x, y, z}; }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }
inline Quaternion mul(const ImPoint& p, const ImPoint& q) { return Quaternion(p) * Quaternion(q); }

// s m s for imaginary s, m; the product is imaginary again, so the (roundoff)
// scalar part is dropped.
inline ImPoint sandwich(const ImPoint& s, const ImPoint& m) {
  return (Quaternion(s) * Quaternion(m) * Quaternion(s)).vec();
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const ImPoint& p);

// One-point compactification R^3 + {infinity}; infinity is a value produced by
// Moebius denominators, not an error.
struct ExtPoint {
  bool infinite = false;
  ImPoint p;

  static constexpr ExtPoint infinity() { return {true, {}}; }
  static constexpr ExtPoint finite(const ImPoint& q) { return {false, q}; }
};

// x |-> (a x + b)(c x + d)^-1 with quaternion coefficients.
struct MobiusMap {
  Quaternion a, b, c, d;

  static constexpr MobiusMap identity() {
    return {Quaternion(1.0), Quaternion(0.0), Quaternion(0.0), Quaternion(1.0)};
  }
  // x |-> (x - center)^-1
  static MobiusMap inversion(const ImPoint& center) {
    return {Quaternion(0.0), Quaternion(1.0), Quaternion(1.0), -Quaternion(center)};
  }
  static MobiusMap translation(const ImPoint& offset) {
    return {Quaternion(1.0), Quaternion(offset), Quaternion(0.0), Quaternion(1.0)};
  }
};

// iota(x) = -i - 2(i + x)^-1, coefficients (-i, -1, 1, i).  Restricts to the
// stereographic projection on the unit sphere and to its inverse on {i}^perp.
MobiusMap iota();

ExtPoint mobius_apply(const MobiusMap& m, const ExtPoint& x);
ImPoint mobius_apply_finite(const MobiusMap& m, const ImPoint& x);  // throws on infinity

MobiusMap mobius_compose(const MobiusMap& m1, const MobiusMap& m2);

// Equality up to a common real factor.
bool mobius_projectively_equal(const MobiusMap& m1, const MobiusMap& m2, double tol = 1e-12);

}  // namespace isolab
