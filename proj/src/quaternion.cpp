#include "isolab/quaternion.hpp"

#include <algorithm>
#include <ostream>

namespace isolab {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.w << " + " << q.x << "i + " << q.y << "j + " << q.z << "k)";
}

std::ostream& operator<<(std::ostream& os, const ImPoint& p) {
  return os << "(" << p.x1 << ", " << p.x2 << ", " << p.x3 << ")";
}

MobiusMap iota() {
  return {Quaternion(0, -1, 0, 0), Quaternion(-1.0), Quaternion(1.0), Quaternion(0, 1, 0, 0)};
}

namespace {

// Moebius values of imaginary arguments can pick up a rounding-level scalar
// part; project it away but refuse results that are genuinely non-imaginary.
ImPoint project_imaginary(const Quaternion& q) {
  double mag = q.norm();
  if (std::abs(q.w) > 1e-8 * mag)
    throw DomainError("Moebius image is not imaginary: scalar part " + std::to_string(q.w));
  return q.vec();
}

}  // namespace

ExtPoint mobius_apply(const MobiusMap& m, const ExtPoint& x) {
  double coeff_scale = m.a.norm() + m.b.norm() + m.c.norm() + m.d.norm();
  if (x.infinite) {
    if (m.c.norm() <= 1e-14 * coeff_scale) return ExtPoint::infinity();
    return ExtPoint::finite(project_imaginary(m.a * m.c.inverse()));
  }
  Quaternion xq(x.p);
  Quaternion den = m.c * xq + m.d;
  double den_scale = m.c.norm() * x.p.norm() + m.d.norm();
  if (den.norm() < 1e-14 * den_scale || den_scale == 0.0) return ExtPoint::infinity();
  Quaternion num = m.a * xq + m.b;
  return ExtPoint::finite(project_imaginary(num * den.inverse()));
}

ImPoint mobius_apply_finite(const MobiusMap& m, const ImPoint& x) {
  ExtPoint r = mobius_apply(m, ExtPoint::finite(x));
  if (r.infinite) throw DomainError("Moebius image at infinity");
  return r.p;
}

MobiusMap mobius_compose(const MobiusMap& m1, const MobiusMap& m2) {
  return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
          m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

bool mobius_projectively_equal(const MobiusMap& m1, const MobiusMap& m2, double tol) {
  const Quaternion* c1[4] = {&m1.a, &m1.b, &m1.c, &m1.d};
  const Quaternion* c2[4] = {&m2.a, &m2.b, &m2.c, &m2.d};
  int lead = 0;
  for (int i = 1; i < 4; ++i)
    if (c1[i]->norm2() > c1[lead]->norm2()) lead = i;
  double n2 = c1[lead]->norm2();
  if (n2 == 0.0) return false;
  // Best real factor aligning the leading coefficients.
  const Quaternion &p = *c1[lead], &q = *c2[lead];
  double lambda = (p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z) / n2;
  double scale = 0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, std::max(c1[i]->norm(), c2[i]->norm()));
  for (int i = 0; i < 4; ++i) {
    Quaternion diff = *c2[i] - lambda * (*c1[i]);
    if (diff.norm() > tol * scale) return false;
  }
  return true;
}

}  // namespace isolab
