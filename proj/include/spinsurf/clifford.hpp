#ifndef SPINSURF_CLIFFORD_HPP
#define SPINSURF_CLIFFORD_HPP

// H(2) model of Cl_4 acting on Sigma = H + H.
//
// A vector x of R^4 = H acts by rho(x)(a, b) = (x b, -conj(x) a), so that
// rho(x)^2 = -|x|^2. With e1,e2,e3,e4 <-> 1,I,J,K the volume element
// w4 = -e1 e2 e3 e4 is diag(+1,-1). The complex structure is right
// multiplication by I. Quadrants:
//   Sigma^{++} = span{1,I} in the plus half,  Sigma^{--} = span{J,K} in the plus half,
//   Sigma^{-+} = span{1,I} in the minus half, Sigma^{+-} = span{J,K} in the minus half.

#include <complex>

#include "spinsurf/quaternion.hpp"

namespace spinsurf {

struct SpinorPair {
  Quaternion plus;
  Quaternion minus;

  constexpr SpinorPair() = default;
  constexpr SpinorPair(const Quaternion& p, const Quaternion& m) : plus(p), minus(m) {}

  double norm2() const { return plus.norm2() + minus.norm2(); }
  double norm() const { return std::sqrt(norm2()); }
  SpinorPair plus_part() const { return {plus, {}}; }
  SpinorPair minus_part() const { return {{}, minus}; }

  SpinorPair& operator+=(const SpinorPair& o) {
    plus += o.plus;
    minus += o.minus;
    return *this;
  }
  SpinorPair& operator-=(const SpinorPair& o) {
    plus -= o.plus;
    minus -= o.minus;
    return *this;
  }
  SpinorPair& operator*=(double s) {
    plus *= s;
    minus *= s;
    return *this;
  }
};

inline SpinorPair operator+(SpinorPair a, const SpinorPair& b) { return a += b; }
inline SpinorPair operator-(SpinorPair a, const SpinorPair& b) { return a -= b; }
inline SpinorPair operator-(const SpinorPair& a) { return {-a.plus, -a.minus}; }
inline SpinorPair operator*(SpinorPair a, double s) { return a *= s; }
inline SpinorPair operator*(double s, SpinorPair a) { return a *= s; }

/// Right multiplication of both halves by a quaternion (the right H-module structure).
inline SpinorPair right_mul(const SpinorPair& p, const Quaternion& q) { return {p.plus * q, p.minus * q}; }

/// Complex scalar multiplication (right multiplication by Re c + Im c I).
inline SpinorPair complex_scale(const SpinorPair& p, std::complex<double> c) {
  return {complex_scale(p.plus, c), complex_scale(p.minus, c)};
}

/// Element of order 2 of Cl_4 (bivector part): acts block-diagonally by left
/// multiplication, plus -> p plus, minus -> q minus, with p and q pure imaginary.
struct CliffordOrder2 {
  Quaternion p;
  Quaternion q;

  CliffordOrder2& operator+=(const CliffordOrder2& o) {
    p += o.p;
    q += o.q;
    return *this;
  }
  CliffordOrder2& operator*=(double s) {
    p *= s;
    q *= s;
    return *this;
  }

  SpinorPair apply(const SpinorPair& phi) const { return {p * phi.plus, q * phi.minus}; }
  /// Operator norm on Sigma, max(|p|, |q|).
  double operator_norm() const { return std::max(p.norm(), q.norm()); }
};

inline CliffordOrder2 operator+(CliffordOrder2 a, const CliffordOrder2& b) { return a += b; }
inline CliffordOrder2 operator*(double s, CliffordOrder2 a) { return a *= s; }

/// rho(x) phi.
inline SpinorPair clifford_act(const Vec4& x, const SpinorPair& phi) {
  return {x * phi.minus, -(x.conj() * phi.plus)};
}

/// The even element x . y (product of two vectors), restricted to the bivector part
/// when x and y are orthogonal. In general x . y = -<x,y> + (bivector).
inline CliffordOrder2 clifford_product(const Vec4& x, const Vec4& y) {
  // rho(x) rho(y) (a, b) = (-x conj(y) a, -conj(x) y b)
  return {-(x * y.conj()), -(x.conj() * y)};
}

/// w4 = -e1 e2 e3 e4.
inline SpinorPair omega4(const SpinorPair& phi) { return {phi.plus, -phi.minus}; }

struct Quadrants {
  SpinorPair pp;  // Sigma^{++}
  SpinorPair mm;  // Sigma^{--}
  SpinorPair pm;  // Sigma^{+-}
  SpinorPair mp;  // Sigma^{-+}
};

/// Component of q along span{1, I}.
inline Quaternion complex_line(const Quaternion& q) { return {q.w, q.x, 0, 0}; }
/// Component of q along span{J, K}.
inline Quaternion j_line(const Quaternion& q) { return {0, 0, q.y, q.z}; }

inline Quadrants project_quadrants(const SpinorPair& phi) {
  return {{complex_line(phi.plus), {}},
          {j_line(phi.plus), {}},
          {{}, j_line(phi.minus)},
          {{}, complex_line(phi.minus)}};
}

/// Hermitian product, C-linear in the first slot and C-antilinear in the second.
/// Per half it is the span{1,I} component of conj(psi) phi.
inline std::complex<double> herm_inner(const SpinorPair& phi, const SpinorPair& psi) {
  const Quaternion s = psi.plus.conj() * phi.plus + psi.minus.conj() * phi.minus;
  return {s.w, s.x};
}

inline double real_inner(const SpinorPair& phi, const SpinorPair& psi) {
  return dot(phi.plus, psi.plus) + dot(phi.minus, psi.minus);
}

enum class Half { Plus, Minus };

/// <<phi, psi>> = conj([psi]) [phi] on the selected half.
inline Quaternion quat_pairing(const SpinorPair& phi, const SpinorPair& psi, Half half) {
  return half == Half::Plus ? psi.plus.conj() * phi.plus : psi.minus.conj() * phi.minus;
}

/// Spin(4) element as a pair of unit quaternions; acts on vectors by
/// x -> qp x conj(qm) and on spinors by (a, b) -> (qp a, qm b).
struct Spin4 {
  Quaternion qp = Quaternion::one();
  Quaternion qm = Quaternion::one();

  Vec4 rotate(const Vec4& x) const { return qp * x * qm.conj(); }
  Spin4 inverse() const { return {qp.conj(), qm.conj()}; }
};

inline Spin4 operator*(const Spin4& a, const Spin4& b) { return {a.qp * b.qp, a.qm * b.qm}; }

/// Throws InvalidSpinElement unless both quaternions have unit norm to 1e-10.
SpinorPair spin4_frame_act(const Quaternion& qp, const Quaternion& qm, const SpinorPair& phi);
SpinorPair spin4_frame_act(const Spin4& s, const SpinorPair& phi);

/// Factor a rotation given by its images of the standard basis, R(eps_k) = cols[k],
/// as x -> qp x conj(qm). The sign of the pair is arbitrary.
Spin4 spin_lift(const std::array<Vec4, 4>& cols);

}  // namespace spinsurf

#endif  // SPINSURF_CLIFFORD_HPP
