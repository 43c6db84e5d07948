#include "spinsurf/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "spinsurf/jet.hpp"

namespace spinsurf {

namespace {

template <class T>
using A4 = std::array<T, 4>;

inline double val(double x) { return x; }
inline double val(const Jet& x) { return x.value(); }

template <class T>
T dot4(const A4<T>& a, const A4<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

template <class T, class S>
A4<T> scale4(const A4<T>& a, const S& s) {
  return {a[0] * s, a[1] * s, a[2] * s, a[3] * s};
}

template <class T>
A4<T> sub4(const A4<T>& a, const A4<T>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

template <class T>
A4<T> lift4(const Vec4& q) {
  return {T(q.w), T(q.x), T(q.y), T(q.z)};
}

inline Vec4 to_vec(const A4<double>& a) { return {a[0], a[1], a[2], a[3]}; }
inline Vec4 value_vec(const A4<Jet>& a) { return {a[0].value(), a[1].value(), a[2].value(), a[3].value()}; }

A4<Jet> derivative4(const A4<Jet>& a, int dir) {
  return {a[0].derivative(dir), a[1].derivative(dir), a[2].derivative(dir), a[3].derivative(dir)};
}

double det4(const std::array<Vec4, 4>& c) {
  double m[4][4];
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < 4; ++k) m[k][a] = c[a][k];
  // Laplace expansion via 2x2 minors of the first two rows.
  auto minor = [&](int r0, int r1, int c0, int c1) { return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]; };
  return minor(0, 1, 0, 1) * minor(2, 3, 2, 3) - minor(0, 1, 0, 2) * minor(2, 3, 1, 3) +
         minor(0, 1, 0, 3) * minor(2, 3, 1, 2) + minor(0, 1, 1, 2) * minor(2, 3, 0, 3) -
         minor(0, 1, 1, 3) * minor(2, 3, 0, 2) + minor(0, 1, 2, 3) * minor(2, 3, 0, 1);
}

// ---------------------------------------------------------------------------
// Catalog

template <class T>
A4<T> eval_catalog(const std::string& name, double radius, const T& u, const T& v) {
  using std::cos;
  using std::cosh;
  using std::sin;
  if (name == "plane") return {u, v, T(0.0), T(0.0)};
  if (name == "sphere") return {radius * sin(u) * cos(v), radius * sin(u) * sin(v), radius * cos(u), T(0.0)};
  if (name == "catenoid") return {cosh(v) * cos(u), cosh(v) * sin(u), v, T(0.0)};
  if (name == "enneper") {
    // Weierstrass data f = 1, g = z.
    return {u - u * u * u * (1.0 / 3.0) + u * v * v, -v - u * u * v + v * v * v * (1.0 / 3.0), u * u - v * v,
            T(0.0)};
  }
  if (name == "clifford-torus") {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * cos(u), s * sin(u), s * cos(v), s * sin(v)};
  }
  if (name == "graph-z2") return {u, v, u * u - v * v, 2.0 * u * v};
  throw Error(ErrorCode::InvalidArgument, "unknown surface '" + name + "'");
}

template <class T>
A4<T> eval_surface(const SurfaceSpec& s, const T& u, const T& v) {
  const A4<T> p = eval_catalog(s.name, s.radius, u, v);
  // The rigid motion is linear in p; apply it through its matrix.
  A4<T> out{T(s.motion.translation.w), T(s.motion.translation.x), T(s.motion.translation.y),
            T(s.motion.translation.z)};
  for (int k = 0; k < 4; ++k) {
    const Vec4 col = s.motion.apply_linear(Quaternion::basis(k));
    for (int r = 0; r < 4; ++r)
      if (col[r] != 0.0) out[r] += p[k] * col[r];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frames

// Projection of s onto the orthogonal complement of the orthonormal vectors in basis.
template <class T>
A4<T> project_out(A4<T> s, const A4<T>* basis, int count) {
  for (int k = 0; k < count; ++k) s = sub4(s, scale4(basis[k], dot4(s, basis[k])));
  return s;
}

template <class T>
A4<T> normalize4(const A4<T>& a) {
  using std::sqrt;
  return scale4(a, T(1.0) / sqrt(dot4(a, a)));
}

template <class T>
std::array<A4<T>, 2> tangent_frame(const A4<T>& fu, const A4<T>& fv) {
  A4<T> e1 = normalize4(fu);
  A4<T> e2 = normalize4(sub4(fv, scale4(e1, dot4(fv, e1))));
  return {e1, e2};
}

template <class T>
std::array<A4<T>, 4> full_frame(const A4<T>& fu, const A4<T>& fv, const A4<T>& s1, const A4<T>& s2) {
  const auto t = tangent_frame(fu, fv);
  std::array<A4<T>, 4> e{t[0], t[1], {}, {}};
  e[2] = normalize4(project_out(s1, e.data(), 2));
  e[3] = normalize4(project_out(s2, e.data(), 3));
  std::array<Vec4, 4> vals;
  for (int a = 0; a < 4; ++a)
    vals[a] = {val(e[a][0]), val(e[a][1]), val(e[a][2]), val(e[a][3])};
  if (det4(vals) < 0) e[3] = scale4(e[3], T(-1.0));
  return e;
}

// Area of the projection of (s1, s2) onto the normal plane of (e1, e2).
double seed_score(const std::array<A4<double>, 2>& t, const Vec4& s1, const Vec4& s2) {
  const A4<double> p1 = project_out(lift4<double>(s1), t.data(), 2);
  const A4<double> p2 = project_out(lift4<double>(s2), t.data(), 2);
  const double a = dot4(p1, p1), b = dot4(p2, p2), c = dot4(p1, p2);
  return std::sqrt(std::max(0.0, a * b - c * c));
}

// Score of a single seed for e4 once e3 is known.
double single_seed_score(const std::array<A4<double>, 3>& basis, const Vec4& s) {
  const A4<double> p = project_out(lift4<double>(s), basis.data(), 3);
  return std::sqrt(dot4(p, p));
}

std::vector<std::array<Vec4, 2>> candidate_seed_pairs() {
  std::vector<std::array<Vec4, 2>> out;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) out.push_back({Quaternion::basis(a), Quaternion::basis(b)});
  return out;
}

constexpr double kSeedContinuityThreshold = 1e-3;

struct TangentSample {
  Vec4 position;
  Vec4 fu;
  Vec4 fv;
};

void check_immersed(const Grid<TangentSample>& samples) {
  const GridSpec& g = samples.spec();
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const auto& s = samples(i, j);
      const double a = s.fu.norm2(), b = s.fv.norm2(), c = dot(s.fu, s.fv);
      const double area2 = a * b - c * c;
      if (!(area2 > 1e-20 * std::max(1.0, a * b))) {
        std::ostringstream os;
        os << "degenerate parametrization: rank dF < 2 at grid point (" << i << ", " << j << "), (u, v) = ("
           << g.u(i) << ", " << g.v(j) << ")";
        throw Error(ErrorCode::DegenerateParametrization, os.str());
      }
    }
}

// Per-node choice of normal seeds. Returns the seeds used at each node.
struct SeedPlan {
  std::array<Vec4, 2> patch_seeds;
  bool radial = false;
  bool continuous = true;
  Grid<std::array<Vec4, 2>> per_node;
};

SeedPlan plan_seeds(const Grid<TangentSample>& samples, const FrameOptions& opt) {
  const GridSpec& g = samples.spec();
  SeedPlan plan;
  plan.per_node = Grid<std::array<Vec4, 2>>(g);
  auto tangent_at = [&](int i, int j) {
    const auto& s = samples(i, j);
    return tangent_frame(lift4<double>(s.fu), lift4<double>(s.fv));
  };

  if (opt.normal == FrameOptions::Normal::Fixed) {
    plan.patch_seeds = opt.seeds;
    for (auto& n : plan.per_node) n = opt.seeds;
    return plan;
  }

  if (opt.normal == FrameOptions::Normal::Radial) {
    plan.radial = true;
    Vec4 e4_seed = opt.seeds[0];
    if (e4_seed.norm2() == 0.0) {
      double best = -1.0;
      for (int k = 0; k < 4; ++k) {
        double worst = 1e300;
        for (int j = 0; j < g.nv; ++j)
          for (int i = 0; i < g.nu; ++i) {
            const auto t = tangent_at(i, j);
            const A4<double> e3 = normalize4(project_out(lift4<double>(samples(i, j).position), t.data(), 2));
            worst = std::min(worst, single_seed_score({t[0], t[1], e3}, Quaternion::basis(k)));
          }
        if (worst > best) {
          best = worst;
          e4_seed = Quaternion::basis(k);
        }
      }
      plan.continuous = best > kSeedContinuityThreshold;
    }
    plan.patch_seeds = {Vec4{}, e4_seed};
    for (auto& n : plan.per_node) n = plan.patch_seeds;
    return plan;
  }

  if (opt.normal == FrameOptions::Normal::Hyperplane) {
    const Vec4 n = opt.seeds[0].normalized();
    plan.patch_seeds = {n, Vec4{}};
    for (int j = 0; j < g.nv; ++j)
      for (int i = 0; i < g.nu; ++i) {
        const auto t = tangent_at(i, j);
        const A4<double> e3 = normalize4(project_out(lift4<double>(n), t.data(), 2));
        double best = -1.0;
        for (int k = 0; k < 4; ++k) {
          const double s = single_seed_score({t[0], t[1], e3}, Quaternion::basis(k));
          if (s > best) {
            best = s;
            plan.per_node(i, j) = {n, Quaternion::basis(k)};
          }
        }
      }
    // e4 is fixed by orientation, so the per-node choice does not matter.
    return plan;
  }

  const auto candidates = candidate_seed_pairs();
  std::vector<double> worst(candidates.size(), 1e300);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const auto t = tangent_at(i, j);
      for (std::size_t c = 0; c < candidates.size(); ++c)
        worst[c] = std::min(worst[c], seed_score(t, candidates[c][0], candidates[c][1]));
    }
  const std::size_t best = static_cast<std::size_t>(std::max_element(worst.begin(), worst.end()) - worst.begin());
  plan.patch_seeds = candidates[best];
  plan.continuous = worst[best] > kSeedContinuityThreshold;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      auto& node = plan.per_node(i, j);
      node = plan.patch_seeds;
      if (plan.continuous) continue;
      const auto t = tangent_at(i, j);
      if (seed_score(t, node[0], node[1]) > kSeedContinuityThreshold) continue;
      double local_best = -1.0;
      for (const auto& cand : candidates) {
        const double s = seed_score(t, cand[0], cand[1]);
        if (s > local_best) {
          local_best = s;
          node = cand;
        }
      }
    }
  return plan;
}

// ---------------------------------------------------------------------------
// Curvature helpers

struct MetricJet {
  double e, f, g;
  double eu, ev, fu, fv, gu, gv;
  double evv, fuv, guu;
};

// Gauss curvature from the first fundamental form and its derivatives.
double brioschi(const MetricJet& m) {
  const double a11 = -0.5 * m.evv + m.fuv - 0.5 * m.guu;
  const double a12 = 0.5 * m.eu, a13 = m.fu - 0.5 * m.ev;
  const double a21 = m.fv - 0.5 * m.gu;
  const double a31 = 0.5 * m.gv;
  const double d1 = a11 * (m.e * m.g - m.f * m.f) - a12 * (a21 * m.g - m.f * a31) + a13 * (a21 * m.f - m.e * a31);
  const double b12 = 0.5 * m.ev, b13 = 0.5 * m.gu;
  const double d2 = -b12 * (b12 * m.g - m.f * b13) + b13 * (b12 * m.f - m.e * b13);
  const double w = m.e * m.g - m.f * m.f;
  return (d1 - d2) / (w * w);
}

// db[c][a][b][k] = e_c(b_ab^k); w12e, w34e = connection forms on e_c.
void codazzi_defect(const StructurePoint& p, const double db[2][2][2][2], const double w12e[2],
                    const double w34e[2], double out[2][2]) {
  // (nabla_{e_c} B)_{ab}^k
  auto cov = [&](int c, int a, int bb, int k) {
    double r = db[c][a][bb][k];
    r += (k == 0 ? -w34e[c] * p.b[a][bb][1] : w34e[c] * p.b[a][bb][0]);
    // nabla_{e_c} e1 = w12 e2, nabla_{e_c} e2 = -w12 e1
    auto rot = [&](int idx, int other, bool first) {
      // B(nabla e_idx, e_other) or B(e_other, nabla e_idx)
      const double s = idx == 0 ? 1.0 : -1.0;
      const int img = 1 - idx;
      return first ? s * p.b[img][other][k] : s * p.b[other][img][k];
    };
    r -= w12e[c] * (rot(a, bb, true) + rot(bb, a, false));
    return r;
  };
  for (int jj = 0; jj < 2; ++jj)
    for (int k = 0; k < 2; ++k) out[jj][k] = cov(0, 1, jj, k) - cov(1, 0, jj, k);
}

double det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// ---------------------------------------------------------------------------
// Patch assembly from third-order jets of F at every node

FramedPatch build_from_jets(const Grid<A4<Jet>>& jets, PatchMode mode, std::string name, const FrameOptions& opt) {
  const GridSpec& grid = jets.spec();
  Grid<TangentSample> samples = make_grid<TangentSample>(grid, [&](int i, int j) {
    const A4<Jet>& f = jets(i, j);
    return TangentSample{value_vec(f), value_vec(derivative4(f, 0)), value_vec(derivative4(f, 1))};
  });
  check_immersed(samples);
  const SeedPlan plan = plan_seeds(samples, opt);

  FramedPatch patch;
  patch.name = std::move(name);
  patch.mode = mode;
  patch.grid = grid;
  patch.embedding = Grid<EmbeddingPoint>(grid);
  patch.normal_seeds = plan.patch_seeds;
  patch.normal_frame_continuous = plan.continuous;
  auto data = std::make_shared<StructureData>();
  data->grid = grid;
  data->points = Grid<StructurePoint>(grid);

  for (int j = 0; j < grid.nv; ++j)
    for (int i = 0; i < grid.nu; ++i) {
      const A4<Jet>& f = jets(i, j);
      const std::array<A4<Jet>, 2> df{derivative4(f, 0), derivative4(f, 1)};
      const A4<Jet> s1 = plan.radial ? f : lift4<Jet>(plan.per_node(i, j)[0]);
      const A4<Jet> s2 = lift4<Jet>(plan.per_node(i, j)[1]);
      const auto e = full_frame(df[0], df[1], s1, s2);

      EmbeddingPoint& ep = patch.embedding(i, j);
      ep.position = value_vec(f);
      ep.du = value_vec(df[0]);
      ep.dv = value_vec(df[1]);
      for (int a = 0; a < 4; ++a) ep.frame[a] = value_vec(e[a]);

      StructurePoint& sp = data->points(i, j);
      // coord_to_frame as jets, then invert.
      Jet c[2][2];
      for (int ii = 0; ii < 2; ++ii)
        for (int a = 0; a < 2; ++a) c[ii][a] = dot4(df[ii], e[a]);
      const Jet det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
      Jet inv[2][2] = {{c[1][1] / det, -c[0][1] / det}, {-c[1][0] / det, c[0][0] / det}};
      for (int a = 0; a < 2; ++a)
        for (int ii = 0; ii < 2; ++ii) {
          sp.coord_to_frame[ii][a] = c[ii][a].value();
          sp.frame_to_coord[a][ii] = inv[a][ii].value();
        }

      const Jet guu = dot4(df[0], df[0]), guv = dot4(df[0], df[1]), gvv = dot4(df[1], df[1]);
      sp.guu = guu.value();
      sp.guv = guv.value();
      sp.gvv = gvv.value();
      sp.gauss_curvature = brioschi({guu.value(), guv.value(), gvv.value(), guu.partial(1, 0), guu.partial(0, 1),
                                     guv.partial(1, 0), guv.partial(0, 1), gvv.partial(1, 0), gvv.partial(0, 1),
                                     guu.partial(0, 2), guv.partial(1, 1), gvv.partial(2, 0)});

      Jet w34[2];
      for (int d = 0; d < 2; ++d) {
        sp.w12[d] = dot4(derivative4(e[0], d), e[1]).value();
        w34[d] = dot4(derivative4(e[2], d), e[3]);
        sp.w34[d] = w34[d].value();
      }
      sp.normal_curvature = -det2(sp.frame_to_coord) * (w34[1].partial(1, 0) - w34[0].partial(0, 1));

      const A4<Jet> fij[2][2] = {{derivative4(df[0], 0), derivative4(df[0], 1)},
                                 {derivative4(df[1], 0), derivative4(df[1], 1)}};
      Jet bjet[2][2][2];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int k = 0; k < 2; ++k) {
            Jet acc(0.0);
            for (int ii = 0; ii < 2; ++ii)
              for (int jj = 0; jj < 2; ++jj) acc += inv[a][ii] * inv[b][jj] * dot4(fij[ii][jj], e[2 + k]);
            bjet[a][b][k] = acc;
            sp.b[a][b][k] = acc.value();
          }

      double db[2][2][2][2];
      double w12e[2], w34e[2];
      for (int cc = 0; cc < 2; ++cc) {
        const double x0 = sp.frame_to_coord[cc][0], x1 = sp.frame_to_coord[cc][1];
        w12e[cc] = x0 * sp.w12[0] + x1 * sp.w12[1];
        w34e[cc] = x0 * sp.w34[0] + x1 * sp.w34[1];
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 2; ++k)
              db[cc][a][b][k] = x0 * bjet[a][b][k].partial(1, 0) + x1 * bjet[a][b][k].partial(0, 1);
      }
      codazzi_defect(sp, db, w12e, w34e, sp.codazzi);
    }
  patch.structure = std::move(data);
  return patch;
}

// Fourth-order accurate weights for the m-th derivative at node i of an
// n-node axis with spacing h: centered where possible, one-sided near the ends.
std::vector<std::pair<int, double>> stencil(int i, int n, int m, double h) {
  const int centered = m % 2 == 0 ? m + 3 : m + 4;
  const int half = (centered - 1) / 2;
  const bool fits = i - half >= 0 && i + half < n;
  const int width = fits ? centered : m + 4;
  const int start = std::clamp(i - (width - 1) / 2, 0, n - width);
  Eigen::MatrixXd v(width, width);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(width);
  for (int k = 0; k < width; ++k) {
    double fact = 1.0;
    for (int q = 2; q <= k; ++q) fact *= q;
    for (int p = 0; p < width; ++p) v(k, p) = std::pow(static_cast<double>(start + p - i), k) / fact;
  }
  rhs(m) = 1.0;
  const Eigen::VectorXd w = v.colPivHouseholderQr().solve(rhs);
  std::vector<std::pair<int, double>> out;
  const double scale = std::pow(h, -m);
  for (int p = 0; p < width; ++p) out.emplace_back(start + p, w(p) * scale);
  return out;
}

Grid<A4<Jet>> jets_from_samples(const Grid<Vec4>& positions) {
  const GridSpec& g = positions.spec();
  if (g.nu < 7 || g.nv < 7) throw Error(ErrorCode::InvalidArgument, "sampled patch needs at least 7x7 nodes");
  using Stencil = std::vector<std::pair<int, double>>;
  auto axis = [](int n, double h) {
    std::vector<std::array<Stencil, 4>> st(n);
    for (int i = 0; i < n; ++i) {
      st[i][0] = {{i, 1.0}};
      for (int m = 1; m <= 3; ++m) st[i][m] = stencil(i, n, m, h);
    }
    return st;
  };
  const auto su = axis(g.nu, g.hu());
  const auto sv = axis(g.nv, g.hv());
  Grid<A4<Jet>> out(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      A4<Jet>& f = out(i, j);
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) {
          Vec4 d;
          for (const auto& [iu, wu] : su[i][a])
            for (const auto& [jv, wv] : sv[j][b]) d += (wu * wv) * positions(iu, jv);
          for (int k = 0; k < 4; ++k) f[k].set_partial(a, b, d[k]);
        }
    }
  return out;
}

}  // namespace

std::array<double, 2> StructurePoint::second_form(const std::array<double, 2>& x,
                                                  const std::array<double, 2>& y) const {
  std::array<double, 2> out{};
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) out[k] += x[a] * y[c] * b[a][c][k];
  return out;
}

Grid<Vec4> FramedPatch::positions() const {
  return make_grid<Vec4>(grid, [&](int i, int j) { return embedding(i, j).position; });
}

std::vector<std::string> builtin_surfaces() {
  return {"plane", "sphere", "catenoid", "enneper", "clifford-torus", "graph-z2"};
}

Domain default_domain(const std::string& name) {
  if (name == "plane") return {-1.0, 1.0, -1.0, 1.0};
  if (name == "sphere") return {0.6, 2.5, -1.2, 1.2};
  if (name == "catenoid") return {-1.2, 1.2, -1.0, 1.0};
  if (name == "enneper") return {-0.6, 0.6, -0.6, 0.6};
  if (name == "clifford-torus") return {-1.2, 1.2, -1.2, 1.2};
  if (name == "graph-z2") return {-0.7, 0.7, -0.7, 0.7};
  throw Error(ErrorCode::InvalidArgument, "unknown surface '" + name + "'");
}

bool builtin_in_r3(const std::string& name) {
  return name == "plane" || name == "sphere" || name == "catenoid" || name == "enneper";
}

Vec4 builtin_position(const SurfaceSpec& surface, double u, double v) {
  return to_vec(eval_surface(surface, u, v));
}

FramedPatch build_patch(const SurfaceSpec& surface, const GridSpec& grid, PatchMode mode, const FrameOptions& frame) {
  if (mode == PatchMode::Analytic) {
    const auto jets = make_grid<A4<Jet>>(grid, [&](int i, int j) {
      return eval_surface(surface, Jet::variable(grid.u(i), 0), Jet::variable(grid.v(j), 1));
    });
    return build_from_jets(jets, mode, surface.name, frame);
  }
  const Grid<Vec4> pos =
      make_grid<Vec4>(grid, [&](int i, int j) { return builtin_position(surface, grid.u(i), grid.v(j)); });
  return build_from_jets(jets_from_samples(pos), mode, surface.name, frame);
}

FramedPatch build_patch(const std::string& name, const GridSpec& grid, PatchMode mode, const FrameOptions& frame) {
  SurfaceSpec s;
  s.name = name;
  return build_patch(s, grid, mode, frame);
}

FramedPatch patch_from_samples(const Grid<Vec4>& positions, const FrameOptions& frame, std::string name) {
  return build_from_jets(jets_from_samples(positions), PatchMode::Sampled, std::move(name), frame);
}

Grid<Mat2> shape_operator(const FramedPatch& patch, int normal_index) {
  if (normal_index < 0 || normal_index > 1)
    throw Error(ErrorCode::InvalidArgument, "normal index must be 0 (e3) or 1 (e4)");
  return make_grid<Mat2>(patch.grid, [&](int i, int j) {
    const StructurePoint& p = patch.at(i, j);
    return Mat2{{{p.b[0][0][normal_index], p.b[0][1][normal_index]},
                 {p.b[1][0][normal_index], p.b[1][1][normal_index]}}};
  });
}

Grid<Vec4> mean_curvature_vector(const FramedPatch& patch) {
  return make_grid<Vec4>(patch.grid, [&](int i, int j) {
    const auto h = patch.at(i, j).mean_curvature();
    const auto& e = patch.embedding(i, j).frame;
    return h[0] * e[2] + h[1] * e[3];
  });
}

std::vector<ResidualReport> structure_residuals(const StructureData& data, double c) {
  ResidualAccumulator gauss, ricci, cod1, cod2;
  const GridSpec& g = data.grid;
  for (int j = 1; j < g.nv - 1; ++j)
    for (int i = 1; i < g.nu - 1; ++i) {
      const StructurePoint& p = data.points(i, j);
      const auto b11 = p.second_form({1, 0}, {1, 0});
      const auto b22 = p.second_form({0, 1}, {0, 1});
      const auto b12 = p.second_form({1, 0}, {0, 1});
      const double extrinsic = b11[0] * b22[0] + b11[1] * b22[1] - b12[0] * b12[0] - b12[1] * b12[1];
      gauss.add(std::abs(p.gauss_curvature - extrinsic - c));
      // <(S3 S4 - S4 S3) e1, e2>
      double comm = 0.0;
      for (int cc = 0; cc < 2; ++cc) comm += p.b[1][cc][0] * p.b[cc][0][1] - p.b[1][cc][1] * p.b[cc][0][0];
      ricci.add(std::abs(p.normal_curvature + comm));
      cod1.add(std::hypot(p.codazzi[0][0], p.codazzi[0][1]));
      cod2.add(std::hypot(p.codazzi[1][0], p.codazzi[1][1]));
    }
  return {gauss.finish("gauss", g), ricci.finish("ricci", g), cod1.finish("codazzi_1", g),
          cod2.finish("codazzi_2", g)};
}

FrameQuality frame_quality(const FramedPatch& patch) {
  FrameQuality q{0.0, 1e300};
  for (const auto& ep : patch.embedding) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        q.orthonormality = std::max(q.orthonormality, std::abs(dot(ep.frame[a], ep.frame[b]) - (a == b ? 1.0 : 0.0)));
    q.min_det = std::min(q.min_det, det4(ep.frame));
  }
  return q;
}

}  // namespace spinsurf
