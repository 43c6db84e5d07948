#ifndef SPINSURF_QUATERNION_HPP
#define SPINSURF_QUATERNION_HPP

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace spinsurf {

/// Quaternion w + x I + y J + z K. Also used as a point of R^4 under
/// (x1,x2,x3,x4) <-> x1 + x2 I + x3 J + x4 K.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(double real) : w(real) {}

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion I() { return {0, 1, 0, 0}; }
  static constexpr Quaternion J() { return {0, 0, 1, 0}; }
  static constexpr Quaternion K() { return {0, 0, 0, 1}; }
  /// Basis vector e_{k+1} of R^4, k in [0,4).
  static constexpr Quaternion basis(int k) {
    return {k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0, k == 3 ? 1.0 : 0.0};
  }
  static constexpr Quaternion from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

  constexpr double operator[](int k) const { return k == 0 ? w : k == 1 ? x : k == 2 ? y : z; }
  constexpr double& operator[](int k) { return k == 0 ? w : k == 1 ? x : k == 2 ? y : z; }
  constexpr std::array<double, 4> to_array() const { return {w, x, y, z}; }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr Quaternion real_part() const { return {w, 0, 0, 0}; }
  constexpr Quaternion imag_part() const { return {0, x, y, z}; }
  Quaternion inverse() const {
    const double n = norm2();
    return {w / n, -x / n, -y / n, -z / n};
  }
  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}
constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

/// Euclidean inner product on R^4; equals the 1-component of conj(b) a.
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// Multiplication by the complex scalar c, realized as right multiplication by Re c + Im c I.
inline Quaternion complex_scale(const Quaternion& q, std::complex<double> c) {
  return q * Quaternion(c.real(), c.imag(), 0, 0);
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

/// Vectors of R^4 share the quaternion representation.
using Vec4 = Quaternion;

}  // namespace spinsurf

#endif  // SPINSURF_QUATERNION_HPP
