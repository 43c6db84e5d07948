#ifndef SPINSURF_SURFACE_HPP
#define SPINSURF_SURFACE_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spinsurf/clifford.hpp"
#include "spinsurf/grid.hpp"
#include "spinsurf/report.hpp"

namespace spinsurf {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Intrinsic and normal-bundle data of a surface at one grid node, in the
/// adapted orthonormal frame (e1, e2 tangent; e3, e4 normal).
struct StructurePoint {
  double guu = 0, guv = 0, gvv = 0;
  /// d_i = sum_a coord_to_frame[i][a] e_a.
  Mat2 coord_to_frame{};
  /// e_a = sum_i frame_to_coord[a][i] d_i.
  Mat2 frame_to_coord{};
  /// Connection forms on coordinate directions: w12(d_i) = <nabla_{d_i} e1, e2>,
  /// w34(d_i) = <nabla_{d_i} e3, e4>.
  std::array<double, 2> w12{};
  std::array<double, 2> w34{};
  /// b[a][b][k] = <B(e_a, e_b), e_{3+k}>.
  double b[2][2][2]{};
  /// Gauss curvature from the metric alone (Brioschi).
  double gauss_curvature = 0;
  /// Normal curvature, K_N = -dw34(e1, e2).
  double normal_curvature = 0;
  /// Codazzi defect (nabla_{e1} B)(e2, e_j) - (nabla_{e2} B)(e1, e_j), normal components.
  double codazzi[2][2]{};

  /// B(X, Y) for X, Y given by frame components, as normal components (k = 0 -> e3).
  std::array<double, 2> second_form(const std::array<double, 2>& x, const std::array<double, 2>& y) const;
  /// Frame components of the coordinate direction d_i.
  std::array<double, 2> coord_dir(int i) const { return coord_to_frame[i]; }
  /// Mean curvature vector components along (e3, e4).
  std::array<double, 2> mean_curvature() const {
    return {0.5 * (b[0][0][0] + b[1][1][0]), 0.5 * (b[0][0][1] + b[1][1][1])};
  }
};

/// (g, connection, B) on a grid, with the curvature quantities needed by the
/// structure equations.
struct StructureData {
  GridSpec grid;
  Grid<StructurePoint> points;
};

enum class PatchMode { Analytic, Sampled };

/// x -> rotation.rotate(x) + translation.
struct RigidMotion {
  Spin4 rotation;
  Vec4 translation;
  Vec4 apply(const Vec4& x) const { return rotation.rotate(x) + translation; }
  Vec4 apply_linear(const Vec4& x) const { return rotation.rotate(x); }
};

struct SurfaceSpec {
  std::string name;
  /// Radius for "sphere".
  double radius = 1.0;
  RigidMotion motion;
};

/// How (e3, e4) are seeded before Gram-Schmidt.
struct FrameOptions {
  enum class Normal { Auto, Fixed, Radial, Hyperplane };
  Normal normal = Normal::Auto;
  /// Seeds for Fixed; for Radial, seeds[0] seeds e4 (zero means auto); for
  /// Hyperplane, seeds[0] is the constant unit normal of the hyperplane, taken as e3.
  std::array<Vec4, 2> seeds{};
};

struct EmbeddingPoint {
  Vec4 position;
  Vec4 du;
  Vec4 dv;
  std::array<Vec4, 4> frame;
};

/// Grid-sampled immersion F : [u0,u1]x[v0,v1] -> R^4 with its adapted frame.
struct FramedPatch {
  std::string name;
  PatchMode mode = PatchMode::Analytic;
  GridSpec grid;
  Grid<EmbeddingPoint> embedding;
  std::shared_ptr<const StructureData> structure;
  /// Normal seeds used; false continuity means a per-point fallback happened
  /// and normal-connection quantities are unreliable.
  std::array<Vec4, 2> normal_seeds{};
  bool normal_frame_continuous = true;

  const StructurePoint& at(int i, int j) const { return structure->points(i, j); }
  Grid<Vec4> positions() const;
};

/// Names of the built-in surfaces.
std::vector<std::string> builtin_surfaces();
/// Default parameter domain of a built-in surface.
Domain default_domain(const std::string& name);
/// Whether a built-in surface lies in the hyperplane x4 = 0.
bool builtin_in_r3(const std::string& name);

/// Built-in surface sampled on the grid; analytic mode evaluates exact
/// derivatives, sampled mode uses finite differences of the node positions.
FramedPatch build_patch(const SurfaceSpec& surface, const GridSpec& grid, PatchMode mode,
                        const FrameOptions& frame = {});
FramedPatch build_patch(const std::string& name, const GridSpec& grid, PatchMode mode,
                        const FrameOptions& frame = {});

/// Patch from node positions alone (sampled mode).
FramedPatch patch_from_samples(const Grid<Vec4>& positions, const FrameOptions& frame = {},
                               std::string name = "samples");

/// Closed-form position of a built-in surface.
Vec4 builtin_position(const SurfaceSpec& surface, double u, double v);

/// S_{e_{3+k}} in the (e1, e2) frame.
Grid<Mat2> shape_operator(const FramedPatch& patch, int normal_index);

/// Mean curvature vector in ambient coordinates.
Grid<Vec4> mean_curvature_vector(const FramedPatch& patch);

/// Gauss, Ricci and Codazzi residuals over interior nodes: "gauss", "ricci",
/// "codazzi_1", "codazzi_2".
std::vector<ResidualReport> structure_residuals(const StructureData& data, double c);
inline std::vector<ResidualReport> structure_residuals(const FramedPatch& patch, double c) {
  return structure_residuals(*patch.structure, c);
}

/// Frame orthonormality defect max_{a,b} |<e_a,e_b> - delta_ab| and min det over the grid.
struct FrameQuality {
  double orthonormality = 0;
  double min_det = 0;
};
FrameQuality frame_quality(const FramedPatch& patch);

}  // namespace spinsurf

#endif  // SPINSURF_SURFACE_HPP
