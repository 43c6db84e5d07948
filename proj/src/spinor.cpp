#include "spinsurf/spinor.hpp"

#include <cmath>
#include <sstream>

namespace spinsurf {

namespace {

constexpr double kVanishing = 1e-8;
constexpr double kLiftJump = 0.5;
constexpr double kMinimalH = 1e-10;

const CliffordOrder2& e12() {
  static const CliffordOrder2 v = clifford_product(tangent_vec(0), tangent_vec(1));
  return v;
}
const CliffordOrder2& e34() {
  static const CliffordOrder2 v = clifford_product(Quaternion::J(), Quaternion::K());
  return v;
}

template <class F>
void for_interior(const GridSpec& g, F&& f) {
  for (int j = 1; j < g.nv - 1; ++j)
    for (int i = 1; i < g.nu - 1; ++i) f(i, j);
}

Vec4 normal_at(const FormComponents& b, int a, int c) { return normal_vec({b[a][c][0], b[a][c][1]}); }

void check_lambda(std::complex<double> l) {
  if (l.real() != 0.0 && l.imag() != 0.0)
    throw Error(ErrorCode::InvalidArgument, "lambda must be real or purely imaginary");
}

SpinorPair quadrant(const Quadrants& q, int k) {
  switch (k) {
    case 0: return q.pp;
    case 1: return q.mm;
    case 2: return q.pm;
    default: return q.mp;
  }
}

}  // namespace

SpinorField::SpinorField(std::shared_ptr<const StructureData> s, Grid<SpinorPair> v, std::complex<double> l)
    : structure(std::move(s)), values(std::move(v)), lambda(l) {
  check_lambda(lambda);
}

FormComponents geometric_form(const StructurePoint& p) {
  FormComponents b{};
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) b[a][c][k] = p.b[a][c][k];
  return b;
}

SpinorPair lambda_scale(const SpinorPair& phi, std::complex<double> lambda) { return complex_scale(phi, lambda); }

Grid<SpinorPair> covariant_derivative_coord(const SpinorField& f, int dir) {
  const Grid<SpinorPair> d = diff(f.values, dir);
  return make_grid<SpinorPair>(f.grid(), [&](int i, int j) {
    const StructurePoint& p = f.structure->points(i, j);
    const SpinorPair& phi = f.values(i, j);
    return d(i, j) + 0.5 * p.w12[dir] * e12().apply(phi) + 0.5 * p.w34[dir] * e34().apply(phi);
  });
}

Grid<SpinorPair> covariant_derivative(const SpinorField& f, int dir) {
  const Grid<SpinorPair> du = covariant_derivative_coord(f, 0);
  const Grid<SpinorPair> dv = covariant_derivative_coord(f, 1);
  return make_grid<SpinorPair>(f.grid(), [&](int i, int j) {
    const Mat2& e = f.structure->points(i, j).frame_to_coord;
    return e[dir][0] * du(i, j) + e[dir][1] * dv(i, j);
  });
}

Grid<SpinorPair> dirac(const SpinorField& f) {
  const Grid<SpinorPair> d1 = covariant_derivative(f, 0);
  const Grid<SpinorPair> d2 = covariant_derivative(f, 1);
  return make_grid<SpinorPair>(f.grid(), [&](int i, int j) {
    return clifford_act(tangent_vec(0), d1(i, j)) + clifford_act(tangent_vec(1), d2(i, j));
  });
}

Grid<Spin4> frame_spin_lift(const FramedPatch& patch) {
  const GridSpec& g = patch.grid;
  Grid<Spin4> lift(g);
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      Spin4 s = spin_lift(patch.embedding(i, j).frame);
      if (i > 0 || j > 0) {
        const Spin4& n = i > 0 ? lift(i - 1, j) : lift(i, j - 1);
        if (dot(s.qp, n.qp) + dot(s.qm, n.qm) < 0) s = {-s.qp, -s.qm};
        const double jump = std::sqrt((s.qp - n.qp).norm2() + (s.qm - n.qm).norm2());
        if (jump > kLiftJump) {
          std::ostringstream os;
          os << "spin lift discontinuity at grid point (" << i << ", " << j << "): jump " << jump;
          throw Error(ErrorCode::LiftDiscontinuity, os.str());
        }
      }
      lift(i, j) = s;
    }
  return lift;
}

SpinorField restrict_parallel_spinor(const FramedPatch& patch, const SpinorPair& phi0) {
  const Grid<Spin4> lift = frame_spin_lift(patch);
  Grid<SpinorPair> values = make_grid<SpinorPair>(patch.grid, [&](int i, int j) {
    return spin4_frame_act(lift(i, j).inverse(), phi0);
  });
  return SpinorField(patch.structure, std::move(values));
}

std::vector<ResidualReport> gauss_formula_residual(const SpinorField& f) {
  std::array<ResidualAccumulator, 2> acc;
  std::array<Grid<SpinorPair>, 2> nabla{covariant_derivative(f, 0), covariant_derivative(f, 1)};
  for_interior(f.grid(), [&](int i, int j) {
    const FormComponents b = geometric_form(f.structure->points(i, j));
    const SpinorPair& phi = f.values(i, j);
    for (int a = 0; a < 2; ++a) {
      SpinorPair r = nabla[a](i, j) - clifford_act(tangent_vec(a), lambda_scale(phi, f.lambda));
      for (int c = 0; c < 2; ++c)
        r += 0.5 * clifford_act(tangent_vec(c), clifford_act(normal_at(b, a, c), phi));
      acc[a].add(r.norm());
    }
  });
  return {acc[0].finish("gauss_formula_e1", f.grid()), acc[1].finish("gauss_formula_e2", f.grid())};
}

Grid<std::array<double, 2>> mean_curvature_components(const StructureData& s) {
  return make_grid<std::array<double, 2>>(s.grid, [&](int i, int j) { return s.points(i, j).mean_curvature(); });
}

ResidualReport dirac_residual(const SpinorField& f, const Grid<std::array<double, 2>>& hvec) {
  const Grid<SpinorPair> d = dirac(f);
  ResidualAccumulator acc;
  for_interior(f.grid(), [&](int i, int j) {
    const SpinorPair& phi = f.values(i, j);
    const SpinorPair r = d(i, j) - clifford_act(normal_vec(hvec(i, j)), phi) + 2.0 * lambda_scale(phi, f.lambda);
    acc.add(r.norm());
  });
  return acc.finish("dirac", f.grid());
}

ResidualReport dirac_residual(const SpinorField& f) {
  return dirac_residual(f, mean_curvature_components(*f.structure));
}

std::vector<ResidualReport> norm_condition_residual(const SpinorField& f) {
  const GridSpec& g = f.grid();
  std::array<ResidualAccumulator, 2> acc;
  std::array<Grid<double>, 2> n2{make_grid<double>(g, [&](int i, int j) { return f.values(i, j).plus.norm2(); }),
                                 make_grid<double>(g, [&](int i, int j) { return f.values(i, j).minus.norm2(); })};
  for (int s = 0; s < 2; ++s) {
    const Grid<double> du = diff_u(n2[s]), dv = diff_v(n2[s]);
    for_interior(g, [&](int i, int j) {
      const StructurePoint& p = f.structure->points(i, j);
      const SpinorPair& phi = f.values(i, j);
      const SpinorPair self = s == 0 ? phi.plus_part() : phi.minus_part();
      const SpinorPair other = s == 0 ? phi.minus_part() : phi.plus_part();
      double r2 = 0;
      for (int a = 0; a < 2; ++a) {
        const double x = p.frame_to_coord[a][0] * du(i, j) + p.frame_to_coord[a][1] * dv(i, j);
        const double rhs = 2.0 * real_inner(clifford_act(tangent_vec(a), lambda_scale(other, f.lambda)), self);
        r2 += (x - rhs) * (x - rhs);
      }
      acc[s].add(std::sqrt(r2));
    });
  }
  return {acc[0].finish("norm_plus", g), acc[1].finish("norm_minus", g)};
}

Grid<FormComponents> recover_B(const SpinorField& f, BFormula formula) {
  const GridSpec& g = f.grid();
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const SpinorPair& phi = f.values(i, j);
      if (phi.plus.norm() < kVanishing || phi.minus.norm() < kVanishing) {
        std::ostringstream os;
        os << "spinor half vanishes at grid point (" << i << ", " << j
           << "): B recovery requires |phi+| and |phi-| nonzero everywhere";
        throw Error(ErrorCode::VanishingSpinor, os.str());
      }
    }
  std::array<Grid<SpinorPair>, 2> nabla{covariant_derivative(f, 0), covariant_derivative(f, 1)};
  return make_grid<FormComponents>(g, [&](int i, int j) {
    const SpinorPair& phi = f.values(i, j);
    FormComponents out{};
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k) {
          const Vec4 x = tangent_vec(a), y = tangent_vec(c);
          const Vec4 xi = normal_vec({k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0});
          const SpinorPair& dy = nabla[c](i, j);
          const SpinorPair& dx = nabla[a](i, j);
          double v = 0;
          switch (formula) {
            case BFormula::Full: {
              const double xy = a == c ? 1.0 : 0.0;
              const SpinorPair halves[2] = {phi.plus_part(), phi.minus_part()};
              const SpinorPair dyh[2] = {dy.plus_part(), dy.minus_part()};
              const SpinorPair dxh[2] = {dx.plus_part(), dx.minus_part()};
              for (int s = 0; s < 2; ++s) {
                const SpinorPair lhs = clifford_act(x, dyh[s]) + clifford_act(y, dxh[s]) +
                                       2.0 * xy * lambda_scale(halves[1 - s], f.lambda);
                v += real_inner(lhs, clifford_act(xi, halves[s])) / (2.0 * halves[s].norm2());
              }
              break;
            }
            case BFormula::Simplified:
              v = 0.5 * real_inner(clifford_act(x, dy) + clifford_act(y, dx), clifford_act(xi, phi));
              break;
            case BFormula::Unsymmetrized:
              v = real_inner(clifford_act(x, dy), clifford_act(xi, phi));
              break;
          }
          out[a][c][k] = v;
        }
    return out;
  });
}

ResidualReport form_difference(const Grid<FormComponents>& a, const Grid<FormComponents>& b,
                               const std::string& name) {
  ResidualAccumulator acc;
  for_interior(a.spec(), [&](int i, int j) {
    double s = 0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int k = 0; k < 2; ++k) {
          const double d = a(i, j)[x][y][k] - b(i, j)[x][y][k];
          s += d * d;
        }
    acc.add(std::sqrt(s));
  });
  return acc.finish(name, a.spec());
}

ResidualReport form_difference(const Grid<FormComponents>& a, const StructureData& s, const std::string& name) {
  const Grid<FormComponents> g =
      make_grid<FormComponents>(s.grid, [&](int i, int j) { return geometric_form(s.points(i, j)); });
  return form_difference(a, g, name);
}

ResidualReport form_asymmetry(const Grid<FormComponents>& b, const std::string& name) {
  ResidualAccumulator acc;
  for_interior(b.spec(), [&](int i, int j) {
    const auto& f = b(i, j);
    acc.add(std::hypot(f[0][1][0] - f[1][0][0], f[0][1][1] - f[1][0][1]));
  });
  return acc.finish(name, b.spec());
}

EtaForm eta_at(const FormComponents& b) {
  EtaForm eta{};
  for (int x = 0; x < 2; ++x)
    for (int jj = 0; jj < 2; ++jj) eta[x] += -0.5 * clifford_product(tangent_vec(jj), normal_at(b, jj, x));
  return eta;
}

Grid<EtaForm> compute_eta(const Grid<FormComponents>& b) {
  return make_grid<EtaForm>(b.spec(), [&](int i, int j) { return eta_at(b(i, j)); });
}

std::vector<ResidualReport> eta_residual(const SpinorField& f, const Grid<EtaForm>& eta) {
  std::array<ResidualAccumulator, 2> acc;
  std::array<Grid<SpinorPair>, 2> nabla{covariant_derivative(f, 0), covariant_derivative(f, 1)};
  for_interior(f.grid(), [&](int i, int j) {
    const SpinorPair& phi = f.values(i, j);
    for (int a = 0; a < 2; ++a) {
      const SpinorPair r = nabla[a](i, j) - eta(i, j)[a].apply(phi) -
                           clifford_act(tangent_vec(a), lambda_scale(phi, f.lambda));
      acc[a].add(r.norm());
    }
  });
  return {acc[0].finish("eta_e1", f.grid()), acc[1].finish("eta_e2", f.grid())};
}

ResidualReport curvature_residual(const SpinorField& f) {
  const SpinorField nu(f.structure, covariant_derivative_coord(f, 0), f.lambda);
  const SpinorField nv(f.structure, covariant_derivative_coord(f, 1), f.lambda);
  const Grid<SpinorPair> nvu = covariant_derivative_coord(nu, 1);
  const Grid<SpinorPair> nuv = covariant_derivative_coord(nv, 0);
  ResidualAccumulator acc;
  for_interior(f.grid(), [&](int i, int j) {
    const StructurePoint& p = f.structure->points(i, j);
    const Mat2& e = p.frame_to_coord;
    const double det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    const SpinorPair& phi = f.values(i, j);
    const SpinorPair r = det * (nuv(i, j) - nvu(i, j)) + 0.5 * p.gauss_curvature * e12().apply(phi) +
                         0.5 * p.normal_curvature * e34().apply(phi);
    acc.add(r.norm());
  });
  return acc.finish("curvature", f.grid());
}

ResidualReport compatibility_residual(const SpinorField& phi, const SpinorField& psi) {
  const GridSpec& g = phi.grid();
  const Grid<double> ip = make_grid<double>(g, [&](int i, int j) { return real_inner(phi.values(i, j), psi.values(i, j)); });
  const Grid<double> du = diff_u(ip), dv = diff_v(ip);
  std::array<Grid<SpinorPair>, 2> a{covariant_derivative(phi, 0), covariant_derivative(phi, 1)};
  std::array<Grid<SpinorPair>, 2> b{covariant_derivative(psi, 0), covariant_derivative(psi, 1)};
  ResidualAccumulator acc;
  for_interior(g, [&](int i, int j) {
    const Mat2& e = phi.structure->points(i, j).frame_to_coord;
    double r2 = 0;
    for (int x = 0; x < 2; ++x) {
      const double lhs = e[x][0] * du(i, j) + e[x][1] * dv(i, j);
      const double r = lhs - real_inner(a[x](i, j), psi.values(i, j)) - real_inner(phi.values(i, j), b[x](i, j));
      r2 += r * r;
    }
    acc.add(std::sqrt(r2));
  });
  return acc.finish("compatibility", g);
}

double operator_norm(const Mat2& m) {
  // Largest singular value of a 2x2 matrix.
  const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
  const double s1 = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  return std::sqrt(0.5 * (s1 + std::sqrt(std::max(0.0, s1 * s1 - 4 * det * det))));
}

AForms a_forms(const SpinorField& f, double quadrant_threshold) {
  const GridSpec& g = f.grid();
  std::array<Grid<SpinorPair>, 2> nabla{covariant_derivative(f, 0), covariant_derivative(f, 1)};
  AForms out;
  out.points = Grid<AFormPoint>(g);
  constexpr int partner[4] = {1, 0, 3, 2};
  constexpr int source[4] = {3, 2, 1, 0};
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      AFormPoint& pt = out.points(i, j);
      const StructurePoint& sp = f.structure->points(i, j);
      const auto h = sp.mean_curvature();
      pt.h_norm = std::hypot(h[0], h[1]);
      if (pt.h_norm < kMinimalH) {
        pt.e3 = {1.0, 0.0};
        ++out.e3_fallbacks;
      } else {
        pt.e3 = {h[0] / pt.h_norm, h[1] / pt.h_norm};
      }
      const Quadrants q = project_quadrants(f.values(i, j));
      std::array<SpinorPair, 4> parts;
      for (int k = 0; k < 4; ++k) {
        parts[k] = quadrant(q, k);
        pt.quadrant_norm2[k] = parts[k].norm2();
      }
      pt.valid = true;
      for (double n2 : pt.quadrant_norm2)
        if (std::sqrt(n2) < quadrant_threshold) pt.valid = false;
      if (!pt.valid) {
        ++out.excluded;
        continue;
      }
      const Vec4 e3 = normal_vec(pt.e3);
      std::array<Quadrants, 2> dq{project_quadrants(nabla[0](i, j)), project_quadrants(nabla[1](i, j))};
      for (int k = 0; k < 4; ++k)
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) {
            const SpinorPair target = clifford_act(tangent_vec(y), clifford_act(e3, parts[partner[k]]));
            pt.F[k][x][y] = real_inner(quadrant(dq[x], k), target);
            pt.B[k][x][y] =
                -real_inner(clifford_act(tangent_vec(x), lambda_scale(parts[source[k]], f.lambda)), target);
            pt.A[k][x][y] = pt.F[k][x][y] + pt.B[k][x][y];
          }
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          pt.A_plus[x][y] = pt.A[0][x][y] + pt.A[1][x][y];
          pt.A_minus[x][y] = pt.A[2][x][y] + pt.A[3][x][y];
          pt.F_plus[x][y] = pt.A[0][x][y] / pt.quadrant_norm2[1] - pt.A[1][x][y] / pt.quadrant_norm2[0];
          pt.F_minus[x][y] = pt.A[2][x][y] / pt.quadrant_norm2[3] - pt.A[3][x][y] / pt.quadrant_norm2[2];
        }
    }
  return out;
}

std::vector<ResidualReport> a_form_residuals(const SpinorField& f, const AForms& forms) {
  const GridSpec& g = f.grid();
  constexpr int partner[4] = {1, 0, 3, 2};
  constexpr int source[4] = {3, 2, 1, 0};
  static const char* labels[4] = {"pp", "mm", "pm", "mp"};
  std::array<ResidualAccumulator, 4> trace, sym;
  ResidualAccumulator fplus, fminus, rplus, rminus;
  for_interior(g, [&](int i, int j) {
    const AFormPoint& pt = forms.points(i, j);
    if (!pt.valid) return;
    const Quadrants q = project_quadrants(f.values(i, j));
    const Vec4 e3 = normal_vec(pt.e3);
    for (int k = 0; k < 4; ++k) {
      const SpinorPair lam = lambda_scale(quadrant(q, source[k]), f.lambda);
      const SpinorPair& p = quadrant(q, partner[k]);
      const double tr = pt.F[k][0][0] + pt.F[k][1][1];
      trace[k].add(std::abs(tr + pt.h_norm * pt.quadrant_norm2[partner[k]] -
                            2.0 * real_inner(lam, clifford_act(e3, p))));
      const SpinorPair e123 =
          clifford_act(tangent_vec(0), clifford_act(tangent_vec(1), clifford_act(e3, p)));
      sym[k].add(std::abs(pt.F[k][0][1] - pt.F[k][1][0] + 2.0 * real_inner(lam, e123)));
    }
    fplus.add(operator_norm(pt.F_plus));
    fminus.add(operator_norm(pt.F_minus));
    const double nplus = pt.quadrant_norm2[0] + pt.quadrant_norm2[1];
    const double nminus = pt.quadrant_norm2[2] + pt.quadrant_norm2[3];
    Mat2 dp{}, dm{};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        dp[x][y] = pt.A_plus[x][y] / nplus - pt.A[0][x][y] / pt.quadrant_norm2[1];
        dm[x][y] = pt.A_minus[x][y] / nminus - pt.A[2][x][y] / pt.quadrant_norm2[3];
      }
    rplus.add(operator_norm(dp));
    rminus.add(operator_norm(dm));
  });
  std::vector<ResidualReport> out;
  for (int k = 0; k < 4; ++k) out.push_back(trace[k].finish(std::string("trace_") + labels[k], g));
  for (int k = 0; k < 4; ++k) out.push_back(sym[k].finish(std::string("symmetry_") + labels[k], g));
  out.push_back(fplus.finish("f_plus", g));
  out.push_back(fminus.finish("f_minus", g));
  out.push_back(rplus.finish("ratio_plus", g));
  out.push_back(rminus.finish("ratio_minus", g));
  return out;
}

}  // namespace spinsurf
