#include <array>
#include <random>

#include "doctest.h"
#include "isolab/quaternion.hpp"

using namespace isolab;

namespace {

// Independent oracle: left-multiplication by p as a 4x4 real matrix.
Quaternion matrix_mul(const Quaternion& p, const Quaternion& q) {
  const double m[4][4] = {{p.w, -p.x, -p.y, -p.z},
                          {p.x, p.w, -p.z, p.y},
                          {p.y, p.z, p.w, -p.x},
                          {p.z, -p.y, p.x, p.w}};
  const double v[4] = {q.w, q.x, q.y, q.z};
  double r[4] = {0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
  return {r[0], r[1], r[2], r[3]};
}

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

const Quaternion I{0, 1, 0, 0}, J{0, 0, 1, 0}, K{0, 0, 0, 1};

}  // namespace

TEST_CASE("unit relations and hand products") {
  CHECK(qdist(I * J, K) == 0);
  CHECK(qdist(J * K, I) == 0);
  CHECK(qdist(K * I, J) == 0);
  CHECK(qdist(I * I, Quaternion(-1.0)) == 0);
  Quaternion one_plus_i{1, 1, 0, 0}, one_minus_i{1, -1, 0, 0};
  CHECK(qdist(one_plus_i * one_minus_i, Quaternion(2.0)) == 0);
  CHECK(qdist(one_plus_i * one_minus_i, matrix_mul(one_plus_i, one_minus_i)) < 1e-15);
}

TEST_CASE("multiplication agrees with the matrix representation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 500; ++k) {
    Quaternion p{u(rng), u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng), u(rng)};
    CHECK(qdist(p * q, matrix_mul(p, q)) < 1e-12);
  }
}

TEST_CASE("norm multiplicativity and imaginary dot/cross split") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 1000; ++k) {
    Quaternion p{u(rng), u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng), u(rng)};
    CHECK(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-12 * (1 + p.norm() * q.norm()));
    ImPoint a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
    Quaternion ab = mul(a, b);
    CHECK(std::abs(ab.scalar() + dot(a, b)) < 1e-12);
    CHECK((ab.vec() - cross(a, b)).norm() < 1e-12);
  }
}

TEST_CASE("inverse") {
  CHECK((Quaternion(I).inverse() - (-I)).norm() < 1e-15);
  CHECK((Quaternion(2.0).inverse() - Quaternion(0.5)).norm() < 1e-15);
  Quaternion ipj = I + J;
  CHECK(qdist(ipj.inverse(), -0.5 * ipj) < 1e-15);
  CHECK(qdist(ipj * ipj.inverse(), Quaternion(1.0)) < 1e-15);
  CHECK_THROWS_AS(Quaternion(0.0).inverse(), DomainError);
  CHECK_THROWS_AS(inverse(ImPoint{}), DomainError);
}

TEST_CASE("mobius_apply basics") {
  MobiusMap id = MobiusMap::identity();
  ExtPoint r = mobius_apply(id, ExtPoint::finite({0, 1, 0}));
  CHECK(!r.infinite);
  CHECK((r.p - ImPoint{0, 1, 0}).norm() < 1e-15);

  MobiusMap inv0{Quaternion(0.0), Quaternion(1.0), Quaternion(1.0), Quaternion(0.0)};
  r = mobius_apply(inv0, ExtPoint::finite({1, 0, 0}));
  CHECK((r.p - ImPoint{-1, 0, 0}).norm() < 1e-15);

  // infinity as input and output
  r = mobius_apply(inv0, ExtPoint::finite({0, 0, 0}));
  CHECK(r.infinite);
  r = mobius_apply(inv0, ExtPoint::infinity());
  CHECK(!r.infinite);
  CHECK(r.p.norm() < 1e-15);
  r = mobius_apply(MobiusMap::translation({1, 2, 3}), ExtPoint::infinity());
  CHECK(r.infinite);
}

TEST_CASE("iota: coefficients, special values, involution, equator") {
  MobiusMap io = iota();
  CHECK(qdist(io.a, -I) == 0);
  CHECK(qdist(io.b, Quaternion(-1.0)) == 0);
  CHECK(qdist(io.c, Quaternion(1.0)) == 0);
  CHECK(qdist(io.d, I) == 0);

  CHECK((mobius_apply_finite(io, {0, 0, 0}) - ImPoint{1, 0, 0}).norm() < 1e-15);
  CHECK((mobius_apply_finite(io, {0, 1, 0}) - ImPoint{0, 1, 0}).norm() < 1e-15);
  CHECK(mobius_apply_finite(io, {1, 0, 0}).norm() < 1e-15);
  CHECK(mobius_apply(io, ExtPoint::finite({-1, 0, 0})).infinite);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 1000; ++k) {
    ImPoint x{u(rng), u(rng), u(rng)};
    if ((x + ImPoint{1, 0, 0}).norm() < 0.2) continue;
    ImPoint once = mobius_apply_finite(io, x);
    ImPoint direct = ImPoint{-1, 0, 0} - 2.0 * inverse(x + ImPoint{1, 0, 0});
    CHECK((once - direct).norm() < 1e-12 * (1 + direct.norm()));
    ImPoint twice = mobius_apply_finite(io, once);
    CHECK((twice - x).norm() < 1e-12 * (1 + x.norm()));
  }
  // unit sphere lands in {i}-perp
  for (int k = 0; k < 500; ++k) {
    ImPoint x{u(rng), u(rng), u(rng)};
    if (x.norm() < 1e-2) continue;
    x = x / x.norm();
    if ((x + ImPoint{1, 0, 0}).norm() < 0.2) continue;
    CHECK(std::abs(mobius_apply_finite(io, x).x1) < 1e-10);
  }
}

TEST_CASE("composition is the coefficient-matrix product") {
  MobiusMap inv0{Quaternion(0.0), Quaternion(1.0), Quaternion(1.0), Quaternion(0.0)};
  MobiusMap io = iota();
  CHECK(mobius_projectively_equal(mobius_compose(inv0, MobiusMap::identity()), inv0));
  CHECK(mobius_projectively_equal(mobius_compose(inv0, inv0), MobiusMap::identity()));
  CHECK(mobius_projectively_equal(mobius_compose(io, io), MobiusMap::identity()));
  CHECK(!mobius_projectively_equal(io, MobiusMap::identity()));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  MobiusMap comp = mobius_compose(io, io);
  for (int k = 0; k < 100; ++k) {
    ImPoint x{u(rng), u(rng), u(rng)};
    ExtPoint r = mobius_apply(comp, ExtPoint::finite(x));
    REQUIRE(!r.infinite);
    CHECK((r.p - x).norm() < 1e-12);
  }
}

TEST_CASE("non-imaginary Moebius values are rejected") {
  // mu(x) = x j^-1 sends j to the scalar 1; arbitrary coefficients are
  // accepted but imaginarity is checked per application.
  MobiusMap bad{Quaternion(1.0), Quaternion(0.0), Quaternion(0.0), J};
  CHECK_THROWS_AS(mobius_apply(bad, ExtPoint::finite({0, 1, 0})), DomainError);
}
