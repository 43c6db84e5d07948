#ifndef SPINSURF_JET_HPP
#define SPINSURF_JET_HPP

// Truncated bivariate Taylor polynomials of total degree <= 3 in (du, dv).
// Used to obtain exact partial derivatives of closed-form parametrizations up
// to third order. A jet obtained by differentiating is only meaningful up to
// one degree less than its source; callers track that.

#include <array>
#include <cmath>

namespace spinsurf {

class Jet {
 public:
  static constexpr int kDegree = 3;
  static constexpr int kSize = 10;

  constexpr Jet() = default;
  constexpr Jet(double value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)

  /// The independent variable u = u0 + du (or v = v0 + dv when dir == 1).
  static Jet variable(double value, int dir) {
    Jet j(value);
    j.c_[dir == 0 ? 1 : 2] = 1.0;
    return j;
  }

  /// Index of the monomial du^a dv^b, a + b <= 3.
  static constexpr int index(int a, int b) {
    const int d = a + b;
    return d * (d + 1) / 2 + b;
  }

  double value() const { return c_[0]; }
  double coeff(int a, int b) const { return c_[index(a, b)]; }
  /// Partial derivative d^a/du^a d^b/dv^b at the expansion point.
  double partial(int a, int b) const { return c_[index(a, b)] * factorial(a) * factorial(b); }

  void set_partial(int a, int b, double d) { c_[index(a, b)] = d / (factorial(a) * factorial(b)); }

  /// Jet of the partial derivative along dir; its degree-3 part is zero.
  Jet derivative(int dir) const {
    Jet r;
    for (int a = 0; a <= kDegree; ++a)
      for (int b = 0; a + b <= kDegree; ++b) {
        if (dir == 0 && a > 0) r.c_[index(a - 1, b)] = a * c_[index(a, b)];
        if (dir == 1 && b > 0) r.c_[index(a, b - 1)] = b * c_[index(a, b)];
      }
    return r;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int a1 = 0; a1 <= kDegree; ++a1)
      for (int b1 = 0; a1 + b1 <= kDegree; ++b1) {
        const double x = a.c_[index(a1, b1)];
        if (x == 0.0) continue;
        for (int a2 = 0; a1 + b1 + a2 <= kDegree; ++a2)
          for (int b2 = 0; a1 + b1 + a2 + b2 <= kDegree; ++b2)
            r.c_[index(a1 + a2, b1 + b2)] += x * b.c_[index(a2, b2)];
      }
    return r;
  }

  /// f(value + delta) from the scalar derivatives f, f', f'', f''' at value.
  Jet compose(double f0, double f1, double f2, double f3) const {
    Jet delta = *this;
    delta.c_[0] = 0.0;
    const Jet d2 = delta * delta;
    const Jet d3 = d2 * delta;
    Jet r = delta * f1 + d2 * (f2 / 2.0) + d3 * (f3 / 6.0);
    r.c_[0] = f0;
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    const double x = b.value();
    return a * b.compose(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x));
  }
  friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
  friend Jet operator/(double s, const Jet& b) { return Jet(s) / b; }

 private:
  static constexpr double factorial(int n) { return n <= 1 ? 1.0 : n == 2 ? 2.0 : 6.0; }

  std::array<double, kSize> c_{};
};

inline Jet sin(const Jet& j) {
  const double s = std::sin(j.value()), c = std::cos(j.value());
  return j.compose(s, c, -s, -c);
}
inline Jet cos(const Jet& j) {
  const double s = std::sin(j.value()), c = std::cos(j.value());
  return j.compose(c, -s, -c, s);
}
inline Jet exp(const Jet& j) {
  const double e = std::exp(j.value());
  return j.compose(e, e, e, e);
}
inline Jet sinh(const Jet& j) {
  const double s = std::sinh(j.value()), c = std::cosh(j.value());
  return j.compose(s, c, s, c);
}
inline Jet cosh(const Jet& j) {
  const double s = std::sinh(j.value()), c = std::cosh(j.value());
  return j.compose(c, s, c, s);
}
inline Jet sqrt(const Jet& j) {
  const double x = j.value(), r = std::sqrt(x);
  return j.compose(r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x));
}

}  // namespace spinsurf

#endif  // SPINSURF_JET_HPP
