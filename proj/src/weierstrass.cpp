#include "spinsurf/weierstrass.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace spinsurf {

namespace {

template <class F>
void for_interior(const GridSpec& g, F&& f) {
  for (int j = 1; j < g.nv - 1; ++j)
    for (int i = 1; i < g.nu - 1; ++i) f(i, j);
}

std::string describe(const std::vector<ResidualReport>& reports) {
  nlohmann::json j = reports;
  return j.dump();
}

Quaternion circulation(const QuatOneForm& xi, int i, int j) {
  const GridSpec& g = xi.grid();
  const double hu = g.hu(), hv = g.hv();
  const auto& v = xi.values;
  return 0.5 * hu * (v(i, j)[0] + v(i + 1, j)[0]) + 0.5 * hv * (v(i + 1, j)[1] + v(i + 1, j + 1)[1]) -
         0.5 * hu * (v(i, j + 1)[0] + v(i + 1, j + 1)[0]) - 0.5 * hv * (v(i, j)[1] + v(i, j + 1)[1]);
}

// Eight-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGLNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                            0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGLWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

using CVec = std::array<std::complex<double>, 4>;
using Integrand = std::function<CVec(std::complex<double>)>;

std::string point_text(std::complex<double> z) {
  std::ostringstream os;
  os << "z = " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

CVec checked(const Integrand& h, std::complex<double> z, const char* what) {
  const CVec v = h(z);
  for (const auto& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1e14)
      throw Error(ErrorCode::Pole, std::string("pole of ") + what + " at " + point_text(z));
  return v;
}

CVec segment_integral(const Integrand& h, std::complex<double> a, std::complex<double> b, const char* what,
                      int pieces = 1) {
  CVec acc{};
  const std::complex<double> step = (b - a) / static_cast<double>(pieces);
  for (int p = 0; p < pieces; ++p) {
    const std::complex<double> s0 = a + static_cast<double>(p) * step;
    for (std::size_t q = 0; q < kGLNodes.size(); ++q) {
      const CVec v = checked(h, s0 + 0.5 * (1.0 + kGLNodes[q]) * step, what);
      for (int k = 0; k < 4; ++k) acc[k] += 0.5 * kGLWeights[q] * v[k] * step;
    }
  }
  return acc;
}

Vec4 real_part(const CVec& c) { return {c[0].real(), c[1].real(), c[2].real(), c[3].real()}; }

// Node values Re int_{z_ref}^{z} h along the row-first tree from node (0, 0).
Grid<Vec4> integrate_holomorphic(const Integrand& h, const ComplexDomain& d, const char* what) {
  const GridSpec g(d.domain, d.nu, d.nv);
  auto z_at = [&](int i, int j) { return std::complex<double>(g.u(i), g.v(j)); };
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) checked(h, z_at(i, j), what);
  Grid<CVec> acc(g);
  const double reach = std::abs(z_at(0, 0) - d.z_ref);
  const int pieces = std::max(1, static_cast<int>(std::ceil(reach / g.h())));
  acc(0, 0) = segment_integral(h, d.z_ref, z_at(0, 0), what, pieces);
  auto add = [](CVec a, const CVec& b) {
    for (int k = 0; k < 4; ++k) a[k] += b[k];
    return a;
  };
  for (int i = 1; i < g.nu; ++i) acc(i, 0) = add(acc(i - 1, 0), segment_integral(h, z_at(i - 1, 0), z_at(i, 0), what));
  for (int i = 0; i < g.nu; ++i)
    for (int j = 1; j < g.nv; ++j)
      acc(i, j) = add(acc(i, j - 1), segment_integral(h, z_at(i, j - 1), z_at(i, j), what));
  return make_grid<Vec4>(g, [&](int i, int j) { return real_part(acc(i, j)); });
}

Integrand classical_integrand(const Holomorphic& f, const Holomorphic& g) {
  return [f, g](std::complex<double> z) {
    const std::complex<double> fv = f(z), gv = g(z);
    const std::complex<double> i(0.0, 1.0);
    return CVec{fv * (1.0 - gv * gv), i * fv * (1.0 + gv * gv), 2.0 * fv * gv, 0.0};
  };
}

Holomorphic compile(const std::string& src) {
  auto e = std::make_shared<Expr>(Expr::parse(src));
  return [e](std::complex<double> z) { return (*e)(z); };
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::FromSpinor: return "from-spinor";
    case Provenance::ClassicalR3: return "classical-r3";
    case Provenance::ClassicalR4: return "classical-r4";
    case Provenance::TwoStep: return "two-step";
    case Provenance::Morel: return "morel";
  }
  return "unknown";
}

Quaternion xi_at(const SpinorPair& phi, const Vec4& x) { return phi.plus.conj() * x * phi.minus; }

QuatOneForm xi_form(const SpinorField& f, double tolerance) {
  const GridSpec& g = f.grid();
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const SpinorPair& phi = f.values(i, j);
      const double dp = std::abs(phi.plus.norm() - 1.0), dm = std::abs(phi.minus.norm() - 1.0);
      if (dp > tolerance || dm > tolerance) {
        std::ostringstream os;
        os << "xi requires |phi+| = |phi-| = 1; at grid point (" << i << ", " << j << ") |phi+| = " << phi.plus.norm()
           << ", |phi-| = " << phi.minus.norm();
        throw Error(ErrorCode::NormViolation, os.str());
      }
    }
  QuatOneForm xi;
  xi.values = make_grid<std::array<Quaternion, 2>>(g, [&](int i, int j) {
    const StructurePoint& p = f.structure->points(i, j);
    const SpinorPair& phi = f.values(i, j);
    std::array<Quaternion, 2> out{};
    for (int a = 0; a < 2; ++a) {
      const Quaternion x = xi_at(phi, tangent_vec(a));
      for (int d = 0; d < 2; ++d) out[d] += p.coord_to_frame[d][a] * x;
    }
    return out;
  });
  return xi;
}

ResidualReport closedness_residual(const QuatOneForm& xi) {
  const GridSpec& g = xi.grid();
  ResidualAccumulator acc;
  for (int j = 0; j + 1 < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i) acc.add(circulation(xi, i, j).norm() / (g.hu() * g.hv()));
  return acc.finish("closedness", g);
}

double total_circulation(const QuatOneForm& xi) {
  const GridSpec& g = xi.grid();
  double s = 0;
  for (int j = 0; j + 1 < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i) s += circulation(xi, i, j).norm();
  return s;
}

ResidualReport dxi_identity_residual(const SpinorField& f) {
  const GridSpec& g = f.grid();
  QuatOneForm xi = xi_form(f, std::numeric_limits<double>::infinity());
  auto part = [&](bool plus) {
    SpinorField h = f;
    for (auto& v : h.values) v = plus ? v.plus_part() : v.minus_part();
    return dirac(h);
  };
  const Grid<SpinorPair> d_plus = part(true), d_minus = part(false);
  const CliffordOrder2 e12 = clifford_product(tangent_vec(0), tangent_vec(1));
  auto rhs = [&](int i, int j) {
    const SpinorPair& phi = f.values(i, j);
    const Mat2& e = f.structure->points(i, j).frame_to_coord;
    const double det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    const Quaternion a = quat_pairing(e12.apply(d_minus(i, j)), phi, Half::Plus);
    const Quaternion b = quat_pairing(e12.apply(phi.minus_part()), d_plus(i, j), Half::Minus);
    return std::pair<Quaternion, double>{a + b, det};
  };
  ResidualAccumulator acc;
  for (int j = 0; j + 1 < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i) {
      Quaternion r;
      double det = 0;
      for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) {
          const auto [q, d] = rhs(i + di, j + dj);
          r += 0.25 * q;
          det += 0.25 * d;
        }
      const Quaternion curl = det * circulation(xi, i, j) / (g.hu() * g.hv());
      acc.add((curl - r).norm());
    }
  return acc.finish("dxi_identity", g);
}

ReconstructedImmersion integrate_form(const QuatOneForm& xi, const IntegrationOptions& opt) {
  const GridSpec& g = xi.grid();
  if (opt.base_i < 0 || opt.base_i >= g.nu || opt.base_j < 0 || opt.base_j >= g.nv)
    throw Error(ErrorCode::InvalidArgument, "base point outside the grid");
  const ResidualReport closed = closedness_residual(xi);
  if (closed.max > opt.closedness_budget)
    throw Error(ErrorCode::BudgetExceeded, "closedness residual over budget: " + describe({closed}));
  ReconstructedImmersion rec;
  rec.F = Grid<Vec4>(g);
  rec.base_i = opt.base_i;
  rec.base_j = opt.base_j;
  rec.base_value = opt.base_value;
  auto& F = rec.F;
  F(opt.base_i, opt.base_j) = opt.base_value;
  const double hu = g.hu(), hv = g.hv();
  auto walk_u = [&](int j, int from) {
    for (int i = from; i + 1 < g.nu; ++i) F(i + 1, j) = F(i, j) + 0.5 * hu * (xi.values(i, j)[0] + xi.values(i + 1, j)[0]);
    for (int i = from; i > 0; --i) F(i - 1, j) = F(i, j) - 0.5 * hu * (xi.values(i, j)[0] + xi.values(i - 1, j)[0]);
  };
  auto walk_v = [&](int i, int from) {
    for (int j = from; j + 1 < g.nv; ++j) F(i, j + 1) = F(i, j) + 0.5 * hv * (xi.values(i, j)[1] + xi.values(i, j + 1)[1]);
    for (int j = from; j > 0; --j) F(i, j - 1) = F(i, j) - 0.5 * hv * (xi.values(i, j)[1] + xi.values(i, j - 1)[1]);
  };
  if (opt.order == PathOrder::RowFirst) {
    walk_u(opt.base_j, opt.base_i);
    for (int i = 0; i < g.nu; ++i) walk_v(i, opt.base_j);
  } else {
    walk_v(opt.base_i, opt.base_j);
    for (int j = 0; j < g.nv; ++j) walk_u(j, opt.base_i);
  }
  return rec;
}

double max_distance(const Grid<Vec4>& a, const Grid<Vec4>& b) {
  double m = 0;
  for (int j = 0; j < a.nv(); ++j)
    for (int i = 0; i < a.nu(); ++i) m = std::max(m, distance(a(i, j), b(i, j)));
  return m;
}

std::vector<ResidualReport> verify_immersion(const ReconstructedImmersion& rec, const SpinorField& f) {
  const GridSpec& g = f.grid();
  const Grid<Vec4> fu = diff_u(rec.F), fv = diff_v(rec.F);
  std::array<Grid<Vec4>, 4> images;
  for (int a = 0; a < 4; ++a)
    images[a] = make_grid<Vec4>(g, [&](int i, int j) { return xi_at(f.values(i, j), Quaternion::basis(a)); });
  std::array<std::array<Grid<Vec4>, 2>, 4> dimg;
  for (int a = 0; a < 4; ++a) dimg[a] = {diff_u(images[a]), diff_v(images[a])};

  ResidualAccumulator dfxi, tangent, normal, bpres, nconn;
  for_interior(g, [&](int i, int j) {
    const StructurePoint& p = f.structure->points(i, j);
    const Vec4 df[2] = {fu(i, j), fv(i, j)};
    double r = 0;
    for (int d = 0; d < 2; ++d) {
      const Vec4 xi = p.coord_to_frame[d][0] * images[0](i, j) + p.coord_to_frame[d][1] * images[1](i, j);
      r = std::max(r, distance(df[d], xi));
    }
    dfxi.add(r);

    Vec4 dfe[2];
    for (int a = 0; a < 2; ++a) dfe[a] = p.frame_to_coord[a][0] * df[0] + p.frame_to_coord[a][1] * df[1];
    r = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) r = std::max(r, std::abs(dot(dfe[a], dfe[b]) - (a == b ? 1.0 : 0.0)));
    tangent.add(r);

    r = 0;
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l)
        r = std::max(r, std::abs(dot(images[2 + k](i, j), images[2 + l](i, j)) - (k == l ? 1.0 : 0.0)));
      for (int a = 0; a < 2; ++a) r = std::max(r, std::abs(dot(dfe[a], images[2 + k](i, j))));
    }
    normal.add(r);

    auto along = [&](int img, int c) {
      return p.frame_to_coord[c][0] * dimg[img][0](i, j) + p.frame_to_coord[c][1] * dimg[img][1](i, j);
    };
    r = 0;
    for (int c = 0; c < 2; ++c)
      for (int b = 0; b < 2; ++b) {
        const Vec4 d = along(b, c);
        for (int k = 0; k < 2; ++k) r = std::max(r, std::abs(dot(d, images[2 + k](i, j)) - p.b[c][b][k]));
      }
    bpres.add(r);

    r = 0;
    for (int c = 0; c < 2; ++c) {
      const double w = p.frame_to_coord[c][0] * p.w34[0] + p.frame_to_coord[c][1] * p.w34[1];
      r = std::max(r, std::abs(dot(along(2, c), images[3](i, j)) - w));
      r = std::max(r, std::abs(dot(along(3, c), images[2](i, j)) + w));
    }
    nconn.add(r);
  });
  return {dfxi.finish("df_xi", g), tangent.finish("tangent_isometry", g), normal.finish("normal_isometry", g),
          bpres.finish("b_preservation", g), nconn.finish("normal_connection", g)};
}

ReconstructedImmersion classical_weierstrass_r3(const Holomorphic& f, const Holomorphic& g, const ComplexDomain& d) {
  ReconstructedImmersion rec;
  rec.F = integrate_holomorphic(classical_integrand(f, g), d, "f*g^2");
  rec.base_value = rec.F(0, 0);
  rec.provenance = Provenance::ClassicalR3;
  return rec;
}

ReconstructedImmersion classical_weierstrass_r3(const std::string& f, const std::string& g, const ComplexDomain& d) {
  return classical_weierstrass_r3(compile(f), compile(g), d);
}

Vec4 classical_weierstrass_point(const Holomorphic& f, const Holomorphic& g, std::complex<double> z,
                                 std::complex<double> z_ref) {
  return real_part(segment_integral(classical_integrand(f, g), z_ref, z, "f*g^2", 64));
}

MinimalR4 minimal_r4_from_holomorphic(const std::array<Holomorphic, 4>& psi, const ComplexDomain& d,
                                      const SpinorPair& phi0) {
  const GridSpec g(d.domain, d.nu, d.nv);
  const Integrand h = [psi](std::complex<double> z) { return CVec{psi[0](z), psi[1](z), psi[2](z), psi[3](z)}; };
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const CVec v = checked(h, {g.u(i), g.v(j)}, "psi");
      // F_u = Re psi, F_v = -Im psi.
      const Vec4 fu{v[0].real(), v[1].real(), v[2].real(), v[3].real()};
      const Vec4 fv{-v[0].imag(), -v[1].imag(), -v[2].imag(), -v[3].imag()};
      const double a = fu.norm2(), b = fv.norm2(), c = dot(fu, fv);
      if (!(a * b - c * c > 1e-20 * std::max(1.0, a * b))) {
        std::ostringstream os;
        os << "degenerate induced metric at grid point (" << i << ", " << j << "), " << point_text({g.u(i), g.v(j)});
        throw Error(ErrorCode::DegenerateParametrization, os.str());
      }
    }
  MinimalR4 out;
  out.immersion.F = integrate_holomorphic(h, d, "psi");
  out.immersion.base_value = out.immersion.F(0, 0);
  out.immersion.provenance = Provenance::ClassicalR4;
  out.patch = patch_from_samples(out.immersion.F, {}, "holomorphic");
  out.field = restrict_parallel_spinor(out.patch, phi0);
  return out;
}

MinimalR4 minimal_r4_from_holomorphic(const std::array<std::string, 4>& psi, const ComplexDomain& d,
                                      const SpinorPair& phi0) {
  return minimal_r4_from_holomorphic({compile(psi[0]), compile(psi[1]), compile(psi[2]), compile(psi[3])}, d, phi0);
}

ResidualReport mean_curvature_norm(const FramedPatch& p) {
  ResidualAccumulator acc;
  for_interior(p.grid, [&](int i, int j) {
    const auto h = p.at(i, j).mean_curvature();
    acc.add(std::hypot(h[0], h[1]));
  });
  return acc.finish("mean_curvature", p.grid);
}

ResidualReport cauchy_riemann_residual(const Grid<Vec4>& x) {
  const GridSpec& g = x.spec();
  const double hu2 = g.hu() * g.hu(), hv2 = g.hv() * g.hv();
  ResidualAccumulator acc;
  for_interior(g, [&](int i, int j) {
    // psi_u + i psi_v = F_uu + F_vv for psi = F_u - i F_v.
    const Vec4 fuu = (x(i + 1, j) - 2.0 * x(i, j) + x(i - 1, j)) / hu2;
    const Vec4 fvv = (x(i, j + 1) - 2.0 * x(i, j) + x(i, j - 1)) / hv2;
    acc.add(0.5 * (fuu + fvv).norm());
  });
  return acc.finish("cauchy_riemann", g);
}

std::array<CliffordOrder2, 2> parallel_transport_generator(const StructurePoint& p) {
  static const CliffordOrder2 e12 = clifford_product(tangent_vec(0), tangent_vec(1));
  static const CliffordOrder2 e34 = clifford_product(Quaternion::J(), Quaternion::K());
  const EtaForm eta = eta_at(geometric_form(p));
  std::array<CliffordOrder2, 2> a{};
  for (int d = 0; d < 2; ++d) {
    a[d] = (-0.5 * p.w12[d]) * e12 + (-0.5 * p.w34[d]) * e34;
    for (int c = 0; c < 2; ++c) a[d] += p.coord_to_frame[d][c] * eta[c];
  }
  return a;
}

TwoStepResult two_step_integration(std::shared_ptr<const StructureData> data, const SpinorPair& phi0,
                                   const TwoStepOptions& opt) {
  TwoStepResult out;
  out.structure = structure_residuals(*data, 0.0);
  for (const auto& r : out.structure)
    if (r.max > opt.integrability_budget)
      throw Error(ErrorCode::BudgetExceeded,
                  "data violate the integrability conditions beyond budget: " + describe(out.structure));
  const GridSpec& g = data->grid;
  if (opt.base_i < 0 || opt.base_i >= g.nu || opt.base_j < 0 || opt.base_j >= g.nv)
    throw Error(ErrorCode::InvalidArgument, "base point outside the grid");
  const Grid<std::array<CliffordOrder2, 2>> ops = make_grid<std::array<CliffordOrder2, 2>>(
      g, [&](int i, int j) { return parallel_transport_generator(data->points(i, j)); });
  Grid<SpinorPair> phi = integrate_linear<SpinorPair, CliffordOrder2>(
      ops, opt.base_i, opt.base_j, phi0, [](const CliffordOrder2& a, const SpinorPair& y) { return a.apply(y); });
  out.field = SpinorField(data, std::move(phi));
  IntegrationOptions io;
  io.base_i = opt.base_i;
  io.base_j = opt.base_j;
  io.base_value = opt.base_value;
  out.immersion = integrate_form(xi_form(out.field, opt.norm_tolerance), io);
  out.immersion.provenance = Provenance::TwoStep;
  return out;
}

Vec4 RigidAlignment::apply(const Vec4& x) const {
  Vec4 y = translation;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) y[r] += rotation[r][c] * x[c];
  return y;
}

RigidAlignment align_rigid(const Grid<Vec4>& moving, const Grid<Vec4>& fixed) {
  const double n = static_cast<double>(moving.size());
  Vec4 cm, cf;
  for (const auto& x : moving) cm += x;
  for (const auto& x : fixed) cf += x;
  cm = cm / n;
  cf = cf / n;
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  auto it = fixed.begin();
  for (const auto& x : moving) {
    const Vec4 a = x - cm, b = *it++ - cf;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) h(r, c) += a[r] * b[c];
  }
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix4d d = Eigen::Matrix4d::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) d(3, 3) = -1.0;
  const Eigen::Matrix4d rot = svd.matrixV() * d * svd.matrixU().transpose();
  RigidAlignment out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.rotation[r][c] = rot(r, c);
  out.translation = cf;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.translation[r] -= rot(r, c) * cm[c];
  double sum = 0;
  it = fixed.begin();
  for (const auto& x : moving) {
    const double e = distance(out.apply(x), *it++);
    out.max_error = std::max(out.max_error, e);
    sum += e * e;
  }
  out.rms_error = std::sqrt(sum / n);
  return out;
}

double right_factor_defect(const SpinorField& a, const SpinorField& b, int bi, int bj) {
  const SpinorPair& a0 = a.values(bi, bj);
  const SpinorPair& b0 = b.values(bi, bj);
  const Quaternion cp = a0.plus.inverse() * b0.plus;
  const Quaternion cm = a0.minus.inverse() * b0.minus;
  double m = 0;
  for (int j = 0; j < a.grid().nv; ++j)
    for (int i = 0; i < a.grid().nu; ++i) {
      const SpinorPair& x = a.values(i, j);
      const SpinorPair& y = b.values(i, j);
      m = std::max(m, std::max(distance(y.plus, x.plus * cp), distance(y.minus, x.minus * cm)));
    }
  return m;
}

}  // namespace spinsurf
