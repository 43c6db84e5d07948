#ifndef SPINSURF_SPINOR_HPP
#define SPINSURF_SPINOR_HPP

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "spinsurf/clifford.hpp"
#include "spinsurf/report.hpp"
#include "spinsurf/surface.hpp"

namespace spinsurf {

/// Spinor field in the adapted gauge of a patch. lambda must be real or
/// purely imaginary.
struct SpinorField {
  std::shared_ptr<const StructureData> structure;
  Grid<SpinorPair> values;
  std::complex<double> lambda{0.0, 0.0};

  SpinorField() = default;
  SpinorField(std::shared_ptr<const StructureData> s, Grid<SpinorPair> v, std::complex<double> l = {});

  const GridSpec& grid() const { return values.spec(); }
};

/// B_ab^k with k = 0 for e3, k = 1 for e4.
using FormComponents = std::array<std::array<std::array<double, 2>, 2>, 2>;

FormComponents geometric_form(const StructurePoint& p);

/// Tangent frame vector e_{a+1} and normal vector sum_k n[k] e_{3+k} as quaternions.
inline Vec4 tangent_vec(int a) { return Quaternion::basis(a); }
inline Vec4 normal_vec(const std::array<double, 2>& n) { return {0.0, 0.0, n[0], n[1]}; }

/// lambda * phi.
SpinorPair lambda_scale(const SpinorPair& phi, std::complex<double> lambda);

/// nabla along coordinate direction d_i (dir 0 = u, 1 = v).
Grid<SpinorPair> covariant_derivative_coord(const SpinorField& f, int dir);
/// nabla along the frame vector e1 (dir 0) or e2 (dir 1).
Grid<SpinorPair> covariant_derivative(const SpinorField& f, int dir);
/// D = e1 . nabla_{e1} + e2 . nabla_{e2}.
Grid<SpinorPair> dirac(const SpinorField& f);

/// Spin lift (qp, qm) of the adapted frame at every node, with signs chosen
/// continuously from node (0, 0). Throws LiftDiscontinuity across a branch cut.
Grid<Spin4> frame_spin_lift(const FramedPatch& patch);

/// Components of the ambient constant spinor phi0 in the adapted frame.
SpinorField restrict_parallel_spinor(const FramedPatch& patch, const SpinorPair& phi0);

/// nabla_X phi + 1/2 sum_j e_j . B(X, e_j) . phi - lambda X . phi for X = e1, e2:
/// "gauss_formula_e1", "gauss_formula_e2".
std::vector<ResidualReport> gauss_formula_residual(const SpinorField& f);

/// D phi - H . phi + 2 lambda phi, "dirac". hvec holds normal components (e3, e4).
ResidualReport dirac_residual(const SpinorField& f, const Grid<std::array<double, 2>>& hvec);
ResidualReport dirac_residual(const SpinorField& f);

/// Mean curvature vector of the structure in normal components.
Grid<std::array<double, 2>> mean_curvature_components(const StructureData& s);

/// X|phi^+-|^2 - 2 Re<lambda X . phi^-+, phi^+->: "norm_plus", "norm_minus".
std::vector<ResidualReport> norm_condition_residual(const SpinorField& f);

enum class BFormula {
  /// Weighted by |phi^+|^2, |phi^-|^2, with the lambda terms.
  Full,
  /// 1/2 Re<X . nabla_Y phi + Y . nabla_X phi, xi . phi>, valid for lambda = 0 and unit half norms.
  Simplified,
  /// Re<X . nabla_Y phi, xi . phi> without symmetrization.
  Unsymmetrized,
};

/// Second fundamental form read off from the spinor field. Throws
/// VanishingSpinor if |phi^+| or |phi^-| drops below 1e-8.
Grid<FormComponents> recover_B(const SpinorField& f, BFormula formula = BFormula::Full);

/// max over interior nodes of |B1 - B2| (Frobenius over components): "name".
ResidualReport form_difference(const Grid<FormComponents>& a, const Grid<FormComponents>& b, const std::string& name);
/// Compare against the geometric B of the field's structure.
ResidualReport form_difference(const Grid<FormComponents>& a, const StructureData& s, const std::string& name);
/// |B(e1,e2) - B(e2,e1)| over interior nodes.
ResidualReport form_asymmetry(const Grid<FormComponents>& b, const std::string& name);

/// eta(e1), eta(e2) with eta(X) = -1/2 sum_j e_j . B(e_j, X).
using EtaForm = std::array<CliffordOrder2, 2>;
EtaForm eta_at(const FormComponents& b);
Grid<EtaForm> compute_eta(const Grid<FormComponents>& b);
/// nabla_X phi - eta(X) . phi - lambda X . phi: "eta_e1", "eta_e2".
std::vector<ResidualReport> eta_residual(const SpinorField& f, const Grid<EtaForm>& eta);

/// R(e1,e2) phi + 1/2 K e1.e2.phi + 1/2 K_N e3.e4.phi with R from the
/// discrete commutator: "curvature".
ResidualReport curvature_residual(const SpinorField& f);

/// d Re<phi,psi>(X) - Re<nabla_X phi, psi> - Re<phi, nabla_X psi>: "compatibility".
ResidualReport compatibility_residual(const SpinorField& phi, const SpinorField& psi);

/// Bilinear forms on (e1, e2); value[a][b] = form(e_a, e_b).
using Bilinear = Mat2;

struct AFormPoint {
  bool valid = false;
  /// Quadrant order: ++, --, +-, -+.
  std::array<Bilinear, 4> F{};
  std::array<Bilinear, 4> B{};
  std::array<Bilinear, 4> A{};
  Bilinear A_plus{};
  Bilinear A_minus{};
  Bilinear F_plus{};
  Bilinear F_minus{};
  /// |phi^{++}|^2, |phi^{--}|^2, |phi^{+-}|^2, |phi^{-+}|^2.
  std::array<double, 4> quadrant_norm2{};
  double h_norm = 0;
  /// Unit normal used as e3 (normal components).
  std::array<double, 2> e3{1.0, 0.0};
};

struct AForms {
  Grid<AFormPoint> points;
  int excluded = 0;
  int e3_fallbacks = 0;
};

/// Quadrants vanishing below this norm exclude the point.
inline constexpr double kQuadrantThreshold = 1e-3;

AForms a_forms(const SpinorField& f, double quadrant_threshold = kQuadrantThreshold);

/// Invariant checks of the A-forms over interior valid nodes: "trace_pp",
/// "trace_mm", "trace_pm", "trace_mp", "symmetry_pp", ..., "f_plus", "f_minus",
/// "ratio_plus", "ratio_minus".
std::vector<ResidualReport> a_form_residuals(const SpinorField& f, const AForms& forms);

/// Spectral norm of a 2x2 matrix.
double operator_norm(const Mat2& m);

}  // namespace spinsurf

#endif  // SPINSURF_SPINOR_HPP
