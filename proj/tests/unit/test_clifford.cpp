#include <gtest/gtest.h>

#include <random>

#include "spinsurf/clifford.hpp"
#include "spinsurf/error.hpp"

using namespace spinsurf;

namespace {

Quaternion random_quat(std::mt19937& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng), n(rng)};
}

SpinorPair random_spinor(std::mt19937& rng) { return {random_quat(rng), random_quat(rng)}; }

double dist(const SpinorPair& a, const SpinorPair& b) { return (a - b).norm(); }

Vec4 e(int k) { return Quaternion::basis(k - 1); }

}  // namespace

TEST(Quaternion, HamiltonRules) {
  const auto I = Quaternion::I(), J = Quaternion::J(), K = Quaternion::K();
  EXPECT_EQ(I * J, K);
  EXPECT_EQ(J * K, I);
  EXPECT_EQ(K * I, J);
  EXPECT_EQ(I * J * K, Quaternion(-1, 0, 0, 0));
}

TEST(Quaternion, NormIsMultiplicative) {
  std::mt19937 rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_quat(rng), b = random_quat(rng);
    EXPECT_NEAR((a * b).norm(), a.norm() * b.norm(), 1e-12);
    EXPECT_NEAR(distance((a * b).conj(), b.conj() * a.conj()), 0.0, 1e-12);
  }
}

TEST(Clifford, SquareOfVectorIsMinusNorm) {
  std::mt19937 rng(1);
  for (int k = 0; k < 100; ++k) {
    const Vec4 x = random_quat(rng);
    const SpinorPair phi = random_spinor(rng);
    EXPECT_LT(dist(clifford_act(x, clifford_act(x, phi)), -x.norm2() * phi), 1e-11);
  }
}

TEST(Clifford, AnticommutationOfBasis) {
  std::mt19937 rng(2);
  const SpinorPair phi = random_spinor(rng);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      const SpinorPair s = clifford_act(e(a), clifford_act(e(b), phi)) + clifford_act(e(b), clifford_act(e(a), phi));
      EXPECT_LT(dist(s, (a == b ? -2.0 : 0.0) * phi), 1e-14);
    }
}

TEST(Clifford, VolumeElementSplitsHalves) {
  std::mt19937 rng(4);
  const SpinorPair phi = random_spinor(rng);
  SpinorPair w = clifford_act(e(1), clifford_act(e(2), clifford_act(e(3), clifford_act(e(4), phi))));
  EXPECT_LT(dist(-w, omega4(phi)), 1e-14);
  EXPECT_LT(dist(omega4(phi), {phi.plus, -phi.minus}), 1e-14);
}

TEST(Clifford, ProductMatchesComposition) {
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    const Vec4 x = random_quat(rng), y = random_quat(rng);
    const SpinorPair phi = random_spinor(rng);
    EXPECT_LT(dist(clifford_product(x, y).apply(phi), clifford_act(x, clifford_act(y, phi))), 1e-12);
  }
}

TEST(Clifford, ActionIsComplexLinear) {
  std::mt19937 rng(6);
  const std::complex<double> c(0.3, -1.7);
  for (int k = 0; k < 20; ++k) {
    const Vec4 x = random_quat(rng);
    const SpinorPair phi = random_spinor(rng);
    EXPECT_LT(dist(clifford_act(x, complex_scale(phi, c)), complex_scale(clifford_act(x, phi), c)), 1e-12);
  }
}

TEST(Clifford, QuadrantEigenvalues) {
  // e1e2 and e3e4 act by +-i on the quadrants named by their signs.
  std::mt19937 rng(7);
  const SpinorPair phi = random_spinor(rng);
  const Quadrants q = project_quadrants(phi);
  const auto e12 = clifford_product(e(1), e(2));
  const auto e34 = clifford_product(e(3), e(4));
  const std::complex<double> i(0, 1);
  auto check = [&](const SpinorPair& s, double s12, double s34) {
    EXPECT_LT(dist(e12.apply(s), complex_scale(s, s12 * i)), 1e-13);
    EXPECT_LT(dist(e34.apply(s), complex_scale(s, s34 * i)), 1e-13);
  };
  check(q.pp, 1, 1);
  check(q.mm, -1, -1);
  check(q.pm, 1, -1);
  check(q.mp, -1, 1);
  EXPECT_LT(dist(q.pp + q.mm + q.pm + q.mp, phi), 1e-14);
}

TEST(Clifford, HermitianProduct) {
  std::mt19937 rng(8);
  const std::complex<double> c(1.2, 0.4);
  for (int k = 0; k < 20; ++k) {
    const SpinorPair a = random_spinor(rng), b = random_spinor(rng);
    const Vec4 x = random_quat(rng).normalized();
    EXPECT_NEAR(std::abs(herm_inner(complex_scale(a, c), b) - c * herm_inner(a, b)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(herm_inner(a, complex_scale(b, c)) - std::conj(c) * herm_inner(a, b)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(herm_inner(a, b) - std::conj(herm_inner(b, a))), 0.0, 1e-12);
    EXPECT_NEAR(herm_inner(a, b).real(), real_inner(a, b), 1e-12);
    // Unit vectors act isometrically and are skew.
    EXPECT_NEAR(std::abs(herm_inner(clifford_act(x, a), clifford_act(x, b)) - herm_inner(a, b)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(herm_inner(clifford_act(x, a), b) + herm_inner(a, clifford_act(x, b))), 0.0, 1e-12);
  }
}

TEST(Clifford, QuaternionicPairing) {
  std::mt19937 rng(9);
  for (int k = 0; k < 20; ++k) {
    const SpinorPair a = random_spinor(rng), b = random_spinor(rng);
    const Quaternion q = random_quat(rng);
    const Vec4 x = random_quat(rng);
    EXPECT_LT(distance(quat_pairing(right_mul(a, q), b, Half::Plus), quat_pairing(a, b, Half::Plus) * q), 1e-11);
    EXPECT_LT(distance(quat_pairing(a, b, Half::Minus).conj(), quat_pairing(b, a, Half::Minus)), 1e-12);
    // <<X phi, phi>>_- relates the two halves.
    const SpinorPair phi = random_spinor(rng);
    const Quaternion lhs = quat_pairing(clifford_act(x, phi), phi, Half::Minus);
    EXPECT_LT(distance(lhs, -(phi.minus.conj() * x.conj() * phi.plus)), 1e-11);
  }
}

TEST(Spin4, VectorSpinorEquivariance) {
  std::mt19937 rng(10);
  for (int k = 0; k < 20; ++k) {
    const Spin4 g{random_quat(rng).normalized(), random_quat(rng).normalized()};
    const Vec4 x = random_quat(rng);
    const SpinorPair phi = random_spinor(rng);
    EXPECT_LT(dist(clifford_act(g.rotate(x), spin4_frame_act(g, phi)), spin4_frame_act(g, clifford_act(x, phi))),
              1e-11);
    EXPECT_NEAR(g.rotate(x).norm(), x.norm(), 1e-12);
  }
}

TEST(Spin4, RejectsNonUnit) {
  const SpinorPair phi{Quaternion::one(), Quaternion::one()};
  EXPECT_THROW(spin4_frame_act(Quaternion(1.1, 0, 0, 0), Quaternion::one(), phi), Error);
  try {
    spin4_frame_act(Quaternion::one(), Quaternion(0, 0, 0.5, 0), phi);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InvalidSpinElement);
  }
}

TEST(Spin4, LiftRecoversRotation) {
  std::mt19937 rng(11);
  for (int k = 0; k < 50; ++k) {
    const Spin4 g{random_quat(rng).normalized(), random_quat(rng).normalized()};
    std::array<Vec4, 4> cols;
    for (int a = 0; a < 4; ++a) cols[a] = g.rotate(Quaternion::basis(a));
    const Spin4 h = spin_lift(cols);
    for (int a = 0; a < 4; ++a) EXPECT_LT(distance(h.rotate(Quaternion::basis(a)), cols[a]), 1e-12);
    // Same element up to the global sign.
    const double s = dot(h.qp, g.qp) > 0 ? 1.0 : -1.0;
    EXPECT_LT(distance(h.qp, s * g.qp) + distance(h.qm, s * g.qm), 1e-12);
  }
}
