#include <gtest/gtest.h>

#include <cmath>

#include "spinsurf/surface.hpp"

using namespace spinsurf;

namespace {

GridSpec grid_for(const std::string& name, int n) { return GridSpec(default_domain(name), n, n); }

double max_abs_over_interior(const FramedPatch& p, const std::function<double(int, int)>& f) {
  double m = 0;
  for (int j = 1; j < p.grid.nv - 1; ++j)
    for (int i = 1; i < p.grid.nu - 1; ++i) m = std::max(m, std::abs(f(i, j)));
  return m;
}

}  // namespace

TEST(Surface, SphereCurvatures) {
  SurfaceSpec s;
  s.name = "sphere";
  s.radius = 2.0;
  for (auto mode : {PatchMode::Analytic, PatchMode::Sampled}) {
    const auto p = build_patch(s, grid_for("sphere", 41), mode);
    const double tol = mode == PatchMode::Analytic ? 1e-10 : 2e-3;
    EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) { return p.at(i, j).gauss_curvature - 0.25; }), tol);
    EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) { return p.at(i, j).normal_curvature; }), tol);
    const auto h = mean_curvature_vector(p);
    // H = -x / r^2 for the round sphere.
    EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) { return (h(i, j) + 0.25 * p.embedding(i, j).position).norm(); }),
              tol);
  }
}

TEST(Surface, CatenoidIsMinimal) {
  const auto p = build_patch("catenoid", grid_for("catenoid", 33), PatchMode::Analytic);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) {
              const auto h = p.at(i, j).mean_curvature();
              return std::hypot(h[0], h[1]);
            }),
            1e-12);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) {
              return p.at(i, j).gauss_curvature + std::pow(std::cosh(p.grid.v(j)), -4.0);
            }),
            1e-10);
}

TEST(Surface, EnneperCurvature) {
  const auto p = build_patch("enneper", grid_for("enneper", 33), PatchMode::Analytic);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) {
              const double r2 = p.grid.u(i) * p.grid.u(i) + p.grid.v(j) * p.grid.v(j);
              return p.at(i, j).gauss_curvature + 4.0 / std::pow(1 + r2, 4.0);
            }),
            1e-10);
}

TEST(Surface, CliffordTorusIsFlatWithMeanCurvatureMinusPosition) {
  const auto p = build_patch("clifford-torus", grid_for("clifford-torus", 33), PatchMode::Analytic);
  const auto h = mean_curvature_vector(p);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) { return p.at(i, j).gauss_curvature; }), 1e-12);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) { return p.at(i, j).normal_curvature; }), 1e-12);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) { return (h(i, j) + p.embedding(i, j).position).norm(); }),
            1e-12);
}

TEST(Surface, HolomorphicGraphHasNormalCurvatureOfGaussMagnitude) {
  const auto p = build_patch("graph-z2", grid_for("graph-z2", 33), PatchMode::Analytic);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) {
              const double r2 = p.grid.u(i) * p.grid.u(i) + p.grid.v(j) * p.grid.v(j);
              return p.at(i, j).gauss_curvature + 8.0 / std::pow(1 + 4 * r2, 3.0);
            }),
            1e-10);
  EXPECT_LT(max_abs_over_interior(p, [&](int i, int j) {
              return std::abs(p.at(i, j).normal_curvature) - std::abs(p.at(i, j).gauss_curvature);
            }),
            1e-10);
  EXPECT_GT(std::abs(p.at(5, 5).normal_curvature), 0.1);
}

TEST(Surface, StructureEquationsHoldAnalytically) {
  for (const auto& name : builtin_surfaces()) {
    const auto p = build_patch(name, grid_for(name, 25), PatchMode::Analytic);
    for (const auto& r : structure_residuals(p, 0.0)) EXPECT_LT(r.max, 1e-9) << name << " " << r.name;
    const auto q = frame_quality(p);
    EXPECT_LT(q.orthonormality, 1e-12) << name;
    EXPECT_NEAR(q.min_det, 1.0, 1e-12) << name;
    EXPECT_TRUE(p.normal_frame_continuous) << name;
  }
}

TEST(Surface, StructureResidualsConvergeSecondOrder) {
  for (const auto& name : builtin_surfaces()) {
    const auto coarse = structure_residuals(build_patch(name, grid_for(name, 33), PatchMode::Sampled), 0.0);
    const auto fine = structure_residuals(build_patch(name, grid_for(name, 65), PatchMode::Sampled), 0.0);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      if (fine[k].max <= kRoundoffFloor) continue;
      const double order = convergence_order(coarse[k].max, 2.0, fine[k].max, 1.0);
      EXPECT_GE(order, 1.9) << name << " " << coarse[k].name << " " << coarse[k].max << " " << fine[k].max;
    }
  }
}

TEST(Surface, RigidMotionInvariance) {
  SurfaceSpec s;
  s.name = "graph-z2";
  const auto base = build_patch(s, grid_for(s.name, 21), PatchMode::Analytic);
  s.motion.rotation = {Quaternion(0.3, -0.5, 0.7, 0.1).normalized(), Quaternion(-0.2, 0.9, 0.4, 0.3).normalized()};
  s.motion.translation = {1.0, -2.0, 0.5, 3.0};
  const auto moved = build_patch(s, grid_for(s.name, 21), PatchMode::Analytic);
  EXPECT_LT(max_abs_over_interior(base, [&](int i, int j) {
              const auto a = base.at(i, j).mean_curvature(), b = moved.at(i, j).mean_curvature();
              return std::hypot(a[0], a[1]) - std::hypot(b[0], b[1]);
            }),
            1e-10);
  EXPECT_LT(max_abs_over_interior(base, [&](int i, int j) {
              return base.at(i, j).gauss_curvature - moved.at(i, j).gauss_curvature;
            }),
            1e-10);
  EXPECT_LT(max_abs_over_interior(base, [&](int i, int j) {
              return std::abs(base.at(i, j).normal_curvature) - std::abs(moved.at(i, j).normal_curvature);
            }),
            1e-10);
}

TEST(Surface, DegenerateParametrizationIsReported) {
  const GridSpec g(Domain{0, 1, 0, 1}, 9, 9);
  const auto pos = make_grid<Vec4>(g, [&](int i, int j) { return Vec4{g.u(i) + g.v(j), 0, 0, 0}; });
  try {
    patch_from_samples(pos);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DegenerateParametrization);
    EXPECT_NE(std::string(err.what()).find("(0, 0)"), std::string::npos);
  }
}

TEST(Surface, ShapeOperatorIsSymmetric) {
  const auto p = build_patch("catenoid", grid_for("catenoid", 17), PatchMode::Sampled);
  for (int k = 0; k < 2; ++k) {
    const auto s = shape_operator(p, k);
    for (const auto& m : s) EXPECT_NEAR(m[0][1], m[1][0], 1e-12);
  }
  EXPECT_THROW(shape_operator(p, 2), Error);
}

TEST(Surface, RejectsTinyGrid) { EXPECT_THROW(GridSpec(Domain{0, 1, 0, 1}, 4, 20), Error); }
