#include <gtest/gtest.h>

#include <random>

#include "spinsurf/spinor.hpp"

using namespace spinsurf;

namespace {

const SpinorPair kGeneric{Quaternion(0.8, 0.3, -0.5, 0.2).normalized(), Quaternion(-0.1, 0.6, 0.4, 0.7).normalized()};

GridSpec grid_for(const std::string& name, int n) { return GridSpec(default_domain(name), n, n); }

// Refinement study: coarse (n) vs fine (2n - 1) grid.
double order_of(const std::string& name, int n, const std::function<double(const FramedPatch&)>& residual,
                PatchMode mode = PatchMode::Analytic) {
  const double coarse = residual(build_patch(name, grid_for(name, n), mode));
  const double fine = residual(build_patch(name, grid_for(name, 2 * n - 1), mode));
  if (fine <= kRoundoffFloor) return 99.0;
  return convergence_order(coarse, 2.0, fine, 1.0);
}

// Smooth non-parallel field for compatibility checks.
SpinorField wavy_field(const FramedPatch& p, double phase) {
  auto v = make_grid<SpinorPair>(p.grid, [&](int i, int j) {
    const double u = p.grid.u(i), w = p.grid.v(j);
    return SpinorPair{{std::sin(u + phase), std::cos(w), u * w, 1.0},
                      {std::cos(u - w), phase, std::sin(u * w), w * w}};
  });
  return SpinorField(p.structure, std::move(v));
}

}  // namespace

TEST(Spinor, PlaneConstantFieldIsParallel) {
  const auto p = build_patch("plane", grid_for("plane", 17), PatchMode::Analytic);
  const SpinorField f = restrict_parallel_spinor(p, kGeneric);
  for (const auto& v : f.values) EXPECT_LT((v - kGeneric).norm(), 1e-14);
  for (int dir = 0; dir < 2; ++dir)
    for (const auto& d : covariant_derivative(f, dir)) EXPECT_LT(d.norm(), 1e-12);
  EXPECT_LT(dirac_residual(f).max, 1e-12);
  const auto b = recover_B(f);
  for (const auto& x : b)
    for (const auto& r : x)
      for (const auto& c : r) EXPECT_NEAR(c[0] + c[1], 0.0, 1e-12);
}

TEST(Spinor, RestrictedHalvesKeepUnitNorm) {
  for (const auto& name : builtin_surfaces()) {
    const auto p = build_patch(name, grid_for(name, 33), PatchMode::Analytic);
    const SpinorField f = restrict_parallel_spinor(p, {Quaternion::one(), Quaternion::one()});
    for (const auto& v : f.values) {
      EXPECT_NEAR(v.plus.norm(), 1.0, 1e-10) << name;
      EXPECT_NEAR(v.minus.norm(), 1.0, 1e-10) << name;
    }
  }
}

TEST(Spinor, GaussFormulaConverges) {
  for (const auto& name : builtin_surfaces()) {
    const double order = order_of(name, 33, [](const FramedPatch& p) {
      const auto r = gauss_formula_residual(restrict_parallel_spinor(p, kGeneric));
      return std::max(r[0].max, r[1].max);
    });
    EXPECT_GE(order, 1.9) << name;
  }
}

TEST(Spinor, DiracEquationConverges) {
  for (const auto& name : builtin_surfaces()) {
    const double order =
        order_of(name, 33, [](const FramedPatch& p) { return dirac_residual(restrict_parallel_spinor(p, kGeneric)).max; });
    EXPECT_GE(order, 1.9) << name;
  }
}

TEST(Spinor, SampledPatchAlsoConverges) {
  const double order = order_of(
      "catenoid", 33, [](const FramedPatch& p) { return dirac_residual(restrict_parallel_spinor(p, kGeneric)).max; },
      PatchMode::Sampled);
  EXPECT_GE(order, 1.9);
}

TEST(Spinor, NormConditionDetectsNonSolutions) {
  const auto p = build_patch("sphere", grid_for("sphere", 33), PatchMode::Analytic);
  SpinorField f = restrict_parallel_spinor(p, kGeneric);
  for (const auto& r : norm_condition_residual(f)) EXPECT_LT(r.max, 1e-10);
  SpinorField scaled = f;
  for (auto& v : scaled.values) v.plus *= 2.0;
  for (const auto& r : norm_condition_residual(scaled)) EXPECT_LT(r.max, 1e-10);
  SpinorField bent = f;
  for (int j = 0; j < p.grid.nv; ++j)
    for (int i = 0; i < p.grid.nu; ++i) bent.values(i, j).plus *= 1.0 + 0.3 * std::sin(p.grid.u(i));
  EXPECT_GT(norm_condition_residual(bent)[0].max, 0.1);
}

TEST(Spinor, RecoveredFormMatchesGeometry) {
  for (const auto& name : builtin_surfaces()) {
    const double order = order_of(name, 33, [](const FramedPatch& p) {
      const auto b = recover_B(restrict_parallel_spinor(p, kGeneric));
      return form_difference(b, *p.structure, "b").max;
    });
    EXPECT_GE(order, 1.9) << name;
  }
}

TEST(Spinor, FullAndSimplifiedFormulasAgree) {
  const auto p = build_patch("catenoid", grid_for("catenoid", 33), PatchMode::Analytic);
  const SpinorField f = restrict_parallel_spinor(p, kGeneric);
  const auto full = recover_B(f, BFormula::Full);
  const auto simple = recover_B(f, BFormula::Simplified);
  EXPECT_LT(form_difference(full, simple, "d").max, 1e-12);
  EXPECT_LT(form_asymmetry(full, "s").max, 1e-12);
}

TEST(Spinor, UnsymmetrizedFormulaIsSymmetricInTheLimit) {
  const double order = order_of("graph-z2", 33, [](const FramedPatch& p) {
    return form_asymmetry(recover_B(restrict_parallel_spinor(p, kGeneric), BFormula::Unsymmetrized), "s").max;
  });
  EXPECT_GE(order, 1.9);
}

TEST(Spinor, VanishingHalfIsRejected) {
  const auto p = build_patch("plane", grid_for("plane", 9), PatchMode::Analytic);
  const SpinorField f = restrict_parallel_spinor(p, {Quaternion::one(), Quaternion()});
  try {
    recover_B(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VanishingSpinor);
  }
}

TEST(Spinor, EtaCommutatorIdentity) {
  std::mt19937 rng(12);
  std::normal_distribution<double> n;
  for (int t = 0; t < 50; ++t) {
    FormComponents b{};
    for (auto& x : b)
      for (auto& y : x)
        for (auto& z : y) z = n(rng);
    b[1][0] = b[0][1];
    const EtaForm eta = eta_at(b);
    const SpinorPair phi{{n(rng), n(rng), n(rng), n(rng)}, {n(rng), n(rng), n(rng), n(rng)}};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const SpinorPair lhs = clifford_act(tangent_vec(x), eta[y].apply(phi)) - eta[y].apply(clifford_act(tangent_vec(x), phi));
        const SpinorPair rhs = clifford_act(normal_vec(b[x][y]), phi);
        EXPECT_LT((lhs - rhs).norm(), 1e-12);
      }
  }
}

TEST(Spinor, EtaResidualConverges) {
  const double order = order_of("catenoid", 33, [](const FramedPatch& p) {
    const SpinorField f = restrict_parallel_spinor(p, kGeneric);
    const auto r = eta_residual(f, compute_eta(recover_B(f)));
    return std::max(r[0].max, r[1].max);
  });
  EXPECT_GE(order, 1.9);
}

TEST(Spinor, CurvatureIdentityConverges) {
  for (const auto& name : builtin_surfaces()) {
    const double order =
        order_of(name, 33, [](const FramedPatch& p) { return curvature_residual(restrict_parallel_spinor(p, kGeneric)).max; });
    EXPECT_GE(order, 1.9) << name;
  }
}

TEST(Spinor, CurvatureIdentityIsTensorial) {
  // Holds for any field, not only restricted parallel ones.
  const double order = order_of("graph-z2", 33, [](const FramedPatch& p) { return curvature_residual(wavy_field(p, 0.2)).max; });
  EXPECT_GE(order, 1.9);
}

TEST(Spinor, MetricCompatibilityConverges) {
  const double order = order_of("sphere", 33, [](const FramedPatch& p) {
    return compatibility_residual(wavy_field(p, 0.1), wavy_field(p, 0.7)).max;
  });
  EXPECT_GE(order, 1.9);
}

TEST(Spinor, DiracMapsQuadrantsAsExpected) {
  const auto p = build_patch("clifford-torus", grid_for("clifford-torus", 17), PatchMode::Analytic);
  const SpinorField f = wavy_field(p, 0.3);
  // D sends Sigma^{-+} to Sigma^{++}, Sigma^{--} to Sigma^{+-}, and so on.
  const int target[4] = {3, 2, 1, 0};
  for (int k = 0; k < 4; ++k) {
    SpinorField part = f;
    for (auto& v : part.values) {
      const Quadrants q = project_quadrants(v);
      const SpinorPair parts[4] = {q.pp, q.mm, q.pm, q.mp};
      v = parts[k];
    }
    for (const auto& d : dirac(part)) {
      const Quadrants q = project_quadrants(d);
      const SpinorPair parts[4] = {q.pp, q.mm, q.pm, q.mp};
      for (int m = 0; m < 4; ++m)
        if (m != target[k]) EXPECT_LT(parts[m].norm(), 1e-12);
    }
  }
}

TEST(Spinor, RotationConjugatesRestrictedField) {
  SurfaceSpec s;
  s.name = "enneper";
  const GridSpec g = grid_for(s.name, 21);
  const auto base = build_patch(s, g, PatchMode::Analytic);
  const Spin4 rot{Quaternion(0.2, 0.9, -0.3, 0.1).normalized(), Quaternion(0.7, -0.1, 0.5, 0.5).normalized()};
  s.motion.rotation = rot;
  FrameOptions opt;
  opt.normal = FrameOptions::Normal::Fixed;
  opt.seeds = {rot.rotate(base.normal_seeds[0]), rot.rotate(base.normal_seeds[1])};
  const auto moved = build_patch(s, g, PatchMode::Analytic, opt);
  const SpinorField a = restrict_parallel_spinor(base, kGeneric);
  const SpinorField b = restrict_parallel_spinor(moved, spin4_frame_act(rot, kGeneric));
  const double sign = real_inner(a.values(0, 0), b.values(0, 0)) > 0 ? 1.0 : -1.0;
  double worst = 0;
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) worst = std::max(worst, (a.values(i, j) - sign * b.values(i, j)).norm());
  EXPECT_LT(worst, 1e-8);
}

TEST(Spinor, AFormInvariants) {
  // Fields whose four quadrant parts stay well away from zero on the patch.
  const SpinorPair balanced{Quaternion(1, 0, 1, 0).normalized(), Quaternion(1, 0, 1, 0).normalized()};
  const std::vector<std::pair<std::string, SpinorPair>> cases = {{"clifford-torus", kGeneric}, {"enneper", balanced}};
  for (const auto& [name, phi0] : cases) {
    const double order = order_of(name, 33, [&](const FramedPatch& p) {
      const SpinorField f = restrict_parallel_spinor(p, phi0);
      const AForms forms = a_forms(f);
      EXPECT_EQ(forms.excluded, 0);
      double worst = 0;
      for (const auto& r : a_form_residuals(f, forms)) worst = std::max(worst, r.max);
      return worst;
    });
    EXPECT_GE(order, 1.9) << name;
  }
}

TEST(Spinor, AFormsExcludeVanishingQuadrants) {
  const auto p = build_patch("plane", grid_for("plane", 17), PatchMode::Analytic);
  const SpinorField f = restrict_parallel_spinor(p, {Quaternion::one(), Quaternion::one()});
  const AForms forms = a_forms(f);
  EXPECT_EQ(forms.excluded, 17 * 17);
  EXPECT_EQ(forms.e3_fallbacks, 17 * 17);
}

TEST(Spinor, LambdaMustBeRealOrImaginary) {
  const auto p = build_patch("plane", grid_for("plane", 9), PatchMode::Analytic);
  EXPECT_THROW(SpinorField(p.structure, Grid<SpinorPair>(p.grid), {1.0, 1.0}), Error);
  EXPECT_NO_THROW(SpinorField(p.structure, Grid<SpinorPair>(p.grid), {0.0, 0.5}));
}
