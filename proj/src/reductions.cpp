#include "spinsurf/reductions.hpp"

#include <cmath>
#include <sstream>

namespace spinsurf {

namespace {

const Vec4 kNu = Quaternion::J();
const Vec4 kN = Quaternion::K();

template <class F>
void for_interior(const GridSpec& g, F&& f) {
  for (int j = 1; j < g.nv - 1; ++j)
    for (int i = 1; i < g.nu - 1; ++i) f(i, j);
}

SpinorPair plus(const Quaternion& q) { return {q, Quaternion()}; }

// X . Y . psi on a plus spinor, read back on the plus half.
Quaternion twice(const Vec4& x, const Vec4& y, const Quaternion& psi) {
  return clifford_act(x, clifford_act(y, plus(psi))).plus;
}

void check_budget(const ResidualReport& r, double budget, const char* what) {
  if (r.max > budget) {
    std::ostringstream os;
    os << what << " residual " << r.max << " exceeds budget " << budget;
    throw Error(ErrorCode::BudgetExceeded, os.str());
  }
}

void append(std::vector<ResidualReport>& out, const std::vector<ResidualReport>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

}  // namespace

FrameOptions hyperplane_frame(const Vec4& normal) {
  FrameOptions o;
  o.normal = FrameOptions::Normal::Hyperplane;
  o.seeds = {normal, Vec4{}};
  return o;
}

FrameOptions sphere_frame() {
  FrameOptions o;
  o.normal = FrameOptions::Normal::Radial;
  return o;
}

IntrinsicSpinorField intrinsic_from_field(const SpinorField& f) {
  IntrinsicSpinorField psi;
  psi.structure = f.structure;
  psi.values = make_grid<Quaternion>(f.grid(), [&](int i, int j) { return f.values(i, j).plus; });
  const auto h = mean_curvature_components(*f.structure);
  psi.H = make_grid<double>(f.grid(), [&](int i, int j) { return h(i, j)[1]; });
  return psi;
}

Quaternion intrinsic_clifford(const std::array<double, 2>& x, const Quaternion& psi) {
  return twice(kN, {x[0], x[1], 0.0, 0.0}, psi);
}

Grid<Quaternion> intrinsic_dirac(const IntrinsicSpinorField& psi) {
  const GridSpec& g = psi.grid();
  const Grid<Quaternion> du = diff_u(psi.values), dv = diff_v(psi.values);
  return make_grid<Quaternion>(g, [&](int i, int j) {
    const StructurePoint& p = psi.structure->points(i, j);
    const Quaternion& v = psi.values(i, j);
    // e1 ._M e2 ._M psi
    const Quaternion rot = intrinsic_clifford({1, 0}, intrinsic_clifford({0, 1}, v));
    const Quaternion nabla[2] = {du(i, j) + 0.5 * p.w12[0] * rot, dv(i, j) + 0.5 * p.w12[1] * rot};
    Quaternion out;
    for (int a = 0; a < 2; ++a) {
      const Quaternion d = p.frame_to_coord[a][0] * nabla[0] + p.frame_to_coord[a][1] * nabla[1];
      out += intrinsic_clifford({a == 0 ? 1.0 : 0.0, a == 1 ? 1.0 : 0.0}, d);
    }
    return out;
  });
}

ResidualReport identification_residual(const IntrinsicSpinorField& psi, const SpinorField& phi) {
  SpinorField up = phi;
  for (auto& v : up.values) v = v.plus_part();
  const Grid<SpinorPair> d = dirac(up);
  const Grid<Quaternion> dm = intrinsic_dirac(psi);
  ResidualAccumulator acc;
  for_interior(psi.grid(), [&](int i, int j) { acc.add(distance(dm(i, j), clifford_act(kN, d(i, j)).plus)); });
  return acc.finish("identification", psi.grid());
}

ResidualReport friedrich_residual(const IntrinsicSpinorField& psi) {
  const Grid<Quaternion> dm = intrinsic_dirac(psi);
  ResidualAccumulator acc;
  for_interior(psi.grid(), [&](int i, int j) { acc.add((dm(i, j) + psi.H(i, j) * psi.values(i, j)).norm()); });
  return acc.finish("friedrich", psi.grid());
}

ResidualReport morel_residual(const IntrinsicSpinorField& psi) {
  const Grid<Quaternion> dm = intrinsic_dirac(psi);
  ResidualAccumulator acc;
  for_interior(psi.grid(), [&](int i, int j) {
    const Quaternion& v = psi.values(i, j);
    acc.add((dm(i, j) + psi.H(i, j) * v + twice(kN, kNu, v)).norm());
  });
  return acc.finish("morel", psi.grid());
}

void require_unit_length(const IntrinsicSpinorField& psi, double tolerance) {
  const GridSpec& g = psi.grid();
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const double n = psi.values(i, j).norm();
      if (std::abs(n - 1.0) > tolerance) {
        std::ostringstream os;
        os << "intrinsic spinor must have |psi| = 1; |psi| = " << n << " at grid point (" << i << ", " << j << ")";
        throw Error(ErrorCode::NormViolation, os.str());
      }
    }
}

SpinorField friedrich_lift(const IntrinsicSpinorField& psi) {
  auto v = make_grid<SpinorPair>(psi.grid(), [&](int i, int j) {
    const Quaternion& a = psi.values(i, j);
    return SpinorPair{a, -clifford_act(kNu, plus(a)).minus};
  });
  return SpinorField(psi.structure, std::move(v));
}

ReductionResult friedrich_reduction(const IntrinsicSpinorField& psi, const ReductionOptions& opt) {
  require_unit_length(psi, opt.unit_tolerance);
  ReductionResult out;
  const ResidualReport eq = friedrich_residual(psi);
  check_budget(eq, opt.equation_budget, "Friedrich equation");
  out.reports.push_back(eq);
  out.field = friedrich_lift(psi);
  const GridSpec& g = psi.grid();

  auto hvec = make_grid<std::array<double, 2>>(g, [&](int i, int j) { return std::array<double, 2>{0.0, psi.H(i, j)}; });
  out.reports.push_back(dirac_residual(out.field, hvec));

  // D phi^- = nu . D phi^+
  {
    SpinorField up = out.field, down = out.field;
    for (auto& v : up.values) v = v.plus_part();
    for (auto& v : down.values) v = v.minus_part();
    const Grid<SpinorPair> dp = dirac(up), dm = dirac(down);
    ResidualAccumulator acc;
    for_interior(g, [&](int i, int j) { acc.add((dm(i, j) - clifford_act(kNu, dp(i, j))).norm()); });
    out.reports.push_back(acc.finish("d_minus_identity", g));
  }

  const Grid<Quaternion> xi_nu =
      make_grid<Quaternion>(g, [&](int i, int j) { return xi_at(out.field.values(i, j), kNu); });
  ResidualAccumulator constancy, real;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      constancy.add(distance(xi_nu(i, j), xi_nu(opt.base_i, opt.base_j)));
      for (int a = 0; a < 2; ++a) real.add(std::abs(xi_at(out.field.values(i, j), tangent_vec(a)).w));
    }
  out.reports.push_back(constancy.finish("xi_nu_constancy", g));
  out.reports.push_back(real.finish("xi_real_part", g));

  IntegrationOptions io;
  io.base_i = opt.base_i;
  io.base_j = opt.base_j;
  out.immersion = integrate_form(xi_form(out.field, opt.unit_tolerance), io);
  ResidualAccumulator plane;
  const double ref = dot(out.immersion.F(opt.base_i, opt.base_j), xi_nu(opt.base_i, opt.base_j));
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) plane.add(std::abs(dot(out.immersion.F(i, j), xi_nu(i, j)) - ref));
  out.reports.push_back(plane.finish("hyperplane", g));
  append(out.reports, verify_immersion(out.immersion, out.field));
  out.immersed = is_immersion(out.immersion.F);
  return out;
}

QuatOneForm morel_beta(const IntrinsicSpinorField& psi) {
  QuatOneForm beta;
  beta.values = make_grid<std::array<Quaternion, 2>>(psi.grid(), [&](int i, int j) {
    const StructurePoint& p = psi.structure->points(i, j);
    const Quaternion& a = psi.values(i, j);
    std::array<Quaternion, 2> out{};
    for (int c = 0; c < 2; ++c) {
      const Quaternion b = -(a.conj() * twice(tangent_vec(c), kNu, a));
      for (int d = 0; d < 2; ++d) out[d] += p.coord_to_frame[d][c] * b;
    }
    return out;
  });
  return beta;
}

ResidualReport morel_compatibility_residual(const QuatOneForm& beta) {
  const GridSpec& g = beta.grid();
  const double hu = g.hu(), hv = g.hv();
  const auto& b = beta.values;
  ResidualAccumulator acc;
  for (int j = 0; j + 1 < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i) {
      const Quaternion curl = (0.5 * (b(i + 1, j)[1] + b(i + 1, j + 1)[1] - b(i, j)[1] - b(i, j + 1)[1])) / hu -
                              (0.5 * (b(i, j + 1)[0] + b(i + 1, j + 1)[0] - b(i, j)[0] - b(i + 1, j)[0])) / hv;
      Quaternion bracket;
      for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) {
          const auto& x = b(i + di, j + dj);
          bracket += 0.25 * (x[0] * x[1] - x[1] * x[0]);
        }
      acc.add((curl - bracket).norm());
    }
  return acc.finish("morel_compatibility", g);
}

ReconstructedImmersion integrate_beta(const QuatOneForm& beta, int base_i, int base_j, const Quaternion& f0) {
  ReconstructedImmersion rec;
  rec.F = integrate_linear<Quaternion, Quaternion>(beta.values, base_i, base_j, f0,
                                                   [](const Quaternion& a, const Quaternion& y) { return a * y; });
  rec.base_i = base_i;
  rec.base_j = base_j;
  rec.base_value = f0;
  rec.provenance = Provenance::Morel;
  return rec;
}

bool is_immersion(const Grid<Vec4>& x) {
  const Grid<Vec4> fu = diff_u(x), fv = diff_v(x);
  for (int j = 0; j < x.nv(); ++j)
    for (int i = 0; i < x.nu(); ++i) {
      const double a = fu(i, j).norm2(), b = fv(i, j).norm2(), c = dot(fu(i, j), fv(i, j));
      if (!(a * b - c * c > 1e-20 * std::max(1.0, a * b))) return false;
    }
  return true;
}

ReductionResult morel_sphere_immersion(const IntrinsicSpinorField& psi, const MorelOptions& opt) {
  require_unit_length(psi, opt.unit_tolerance);
  ReductionResult out;
  const ResidualReport eq = morel_residual(psi);
  check_budget(eq, opt.equation_budget, "Morel equation");
  out.reports.push_back(eq);
  const QuatOneForm beta = morel_beta(psi);
  const ResidualReport compat = morel_compatibility_residual(beta);
  check_budget(compat, opt.compatibility_budget, "compatibility");
  out.reports.push_back(compat);

  out.immersion = integrate_beta(beta, opt.base_i, opt.base_j, opt.f0);
  const GridSpec& g = psi.grid();
  const Grid<Vec4>& F = out.immersion.F;
  auto v = make_grid<SpinorPair>(g, [&](int i, int j) {
    const Quaternion& a = psi.values(i, j);
    return SpinorPair{a, -clifford_act(kNu, plus(a)).minus * F(i, j)};
  });
  out.field = SpinorField(psi.structure, std::move(v));

  ResidualAccumulator unit, agree;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      unit.add(std::abs(F(i, j).norm() - 1.0));
      agree.add(distance(F(i, j), xi_at(out.field.values(i, j), kNu)));
    }
  out.reports.push_back(unit.finish("unit_sphere", g));
  out.reports.push_back(agree.finish("xi_nu_agreement", g));

  IntegrationOptions io;
  io.base_i = opt.base_i;
  io.base_j = opt.base_j;
  io.base_value = opt.f0;
  const ReconstructedImmersion integrated = integrate_form(xi_form(out.field, 1e-4), io);
  ResidualAccumulator path;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) path.add(distance(F(i, j), integrated.F(i, j)));
  out.reports.push_back(path.finish("xi_integral_agreement", g));
  append(out.reports, verify_immersion(out.immersion, out.field));
  out.immersed = is_immersion(F);
  return out;
}

LawsonResult lawson_transform(const FramedPatch& source, const SpinorField& phi, const LawsonOptions& opt) {
  const GridSpec& g = phi.grid();
  LawsonResult out;
  {
    const auto h = mean_curvature_components(*phi.structure);
    ResidualAccumulator acc;
    for_interior(g, [&](int i, int j) {
      const auto& e = source.embedding(i, j);
      const Vec4 hv = h(i, j)[0] * e.frame[2] + h(i, j)[1] * e.frame[3];
      acc.add(distance(hv, -1.0 * e.position));
    });
    const ResidualReport r = acc.finish("minimality", g);
    if (r.max > opt.minimality_budget) {
      std::ostringstream os;
      os << "source surface is not minimal in S^3: |H + x| = " << r.max;
      throw Error(ErrorCode::PreconditionFailed, os.str());
    }
    out.reports.push_back(r);
  }

  auto v = make_grid<SpinorPair>(g, [&](int i, int j) {
    const Quaternion& a = phi.values(i, j).plus;
    return SpinorPair{a, opt.n_sign * clifford_act(kN, plus(a)).minus};
  });
  out.field = SpinorField(phi.structure, std::move(v));
  IntegrationOptions io;
  io.base_i = opt.base_i;
  io.base_j = opt.base_j;
  out.immersion = integrate_form(xi_form(out.field), io);

  ResidualAccumulator im;
  for (const auto& x : out.immersion.F) im.add(std::abs(x.w));
  out.reports.push_back(im.finish("imaginary_part", g));

  out.image = patch_from_samples(out.immersion.F, hyperplane_frame(Quaternion::one()), "lawson");
  out.H = Grid<double>(g);
  ResidualAccumulator mc;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const auto& e = out.image.embedding(i, j);
      const auto h = out.image.at(i, j).mean_curvature();
      const Vec4 hv = h[0] * e.frame[2] + h[1] * e.frame[3];
      out.H(i, j) = dot(hv, xi_at(out.field.values(i, j), kNu));
    }
  for_interior(g, [&](int i, int j) { mc.add(std::abs(out.H(i, j) + 1.0)); });
  out.reports.push_back(mc.finish("lawson_mean_curvature", g));
  return out;
}

}  // namespace spinsurf
