#ifndef SPINSURF_GRID_HPP
#define SPINSURF_GRID_HPP

#include <cstddef>
#include <vector>

#include "spinsurf/error.hpp"

namespace spinsurf {

struct Domain {
  double u0 = 0.0;
  double u1 = 1.0;
  double v0 = 0.0;
  double v1 = 1.0;
};

/// Rectangular tensor grid, Nu points along u (index i) and Nv along v (index j),
/// endpoints included.
struct GridSpec {
  Domain domain;
  int nu = 0;
  int nv = 0;

  GridSpec() = default;
  GridSpec(const Domain& d, int nu_, int nv_);

  double hu() const { return (domain.u1 - domain.u0) / (nu - 1); }
  double hv() const { return (domain.v1 - domain.v0) / (nv - 1); }
  double u(int i) const { return domain.u0 + i * hu(); }
  double v(int j) const { return domain.v0 + j * hv(); }
  /// Representative mesh width, max(hu, hv).
  double h() const;
  std::size_t size() const { return static_cast<std::size_t>(nu) * nv; }
  bool interior(int i, int j) const { return i > 0 && j > 0 && i < nu - 1 && j < nv - 1; }
};

template <class T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(const GridSpec& spec, const T& init = T{}) : spec_(spec), data_(spec.size(), init) {}

  const GridSpec& spec() const { return spec_; }
  int nu() const { return spec_.nu; }
  int nv() const { return spec_.nv; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  std::size_t size() const { return data_.size(); }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * spec_.nu + i; }

  GridSpec spec_;
  std::vector<T> data_;
};

/// Build a grid by evaluating f(i, j) at every node.
template <class T, class F>
Grid<T> make_grid(const GridSpec& spec, F&& f) {
  Grid<T> g(spec);
  for (int j = 0; j < spec.nv; ++j)
    for (int i = 0; i < spec.nu; ++i) g(i, j) = f(i, j);
  return g;
}

/// Second-order derivative along u: central inside, one-sided three-point at the ends.
template <class T>
T diff_u(const Grid<T>& g, int i, int j) {
  const double h = g.spec().hu();
  const int n = g.nu();
  if (i == 0) return (g(0, j) * -3.0 + g(1, j) * 4.0 - g(2, j)) * (1.0 / (2.0 * h));
  if (i == n - 1) return (g(n - 1, j) * 3.0 - g(n - 2, j) * 4.0 + g(n - 3, j)) * (1.0 / (2.0 * h));
  return (g(i + 1, j) - g(i - 1, j)) * (1.0 / (2.0 * h));
}

template <class T>
T diff_v(const Grid<T>& g, int i, int j) {
  const double h = g.spec().hv();
  const int n = g.nv();
  if (j == 0) return (g(i, 0) * -3.0 + g(i, 1) * 4.0 - g(i, 2)) * (1.0 / (2.0 * h));
  if (j == n - 1) return (g(i, n - 1) * 3.0 - g(i, n - 2) * 4.0 + g(i, n - 3)) * (1.0 / (2.0 * h));
  return (g(i, j + 1) - g(i, j - 1)) * (1.0 / (2.0 * h));
}

/// Derivative along coordinate direction dir (0 = u, 1 = v).
template <class T>
T diff(const Grid<T>& g, int dir, int i, int j) {
  return dir == 0 ? diff_u(g, i, j) : diff_v(g, i, j);
}

template <class T>
Grid<T> diff_u(const Grid<T>& g) {
  return make_grid<T>(g.spec(), [&](int i, int j) { return diff_u(g, i, j); });
}

template <class T>
Grid<T> diff_v(const Grid<T>& g) {
  return make_grid<T>(g.spec(), [&](int i, int j) { return diff_v(g, i, j); });
}

template <class T>
Grid<T> diff(const Grid<T>& g, int dir) {
  return dir == 0 ? diff_u(g) : diff_v(g);
}

}  // namespace spinsurf

#endif  // SPINSURF_GRID_HPP
