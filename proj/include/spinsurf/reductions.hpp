#ifndef SPINSURF_REDUCTIONS_HPP
#define SPINSURF_REDUCTIONS_HPP

// Surfaces in a hyperplane or in S^3. The normal bundle is trivial with
// nu = e3 and N = e4 parallel; intrinsic spinors of M are plus halves.

#include "spinsurf/weierstrass.hpp"

namespace spinsurf {

/// Frame options making e3 = nu and e4 = N for the two reductions.
FrameOptions hyperplane_frame(const Vec4& normal = Quaternion::K());
FrameOptions sphere_frame();

struct IntrinsicSpinorField {
  std::shared_ptr<const StructureData> structure;
  Grid<Quaternion> values;
  /// Mean curvature along N.
  Grid<double> H;
  const GridSpec& grid() const { return values.spec(); }
};

/// psi = phi^+, H = <H, N>.
IntrinsicSpinorField intrinsic_from_field(const SpinorField& f);

/// X ._M psi = N . X . psi for X = x[0] e1 + x[1] e2.
Quaternion intrinsic_clifford(const std::array<double, 2>& x, const Quaternion& psi);

/// e1 ._M nabla_{e1} psi + e2 ._M nabla_{e2} psi with the intrinsic spin connection.
Grid<Quaternion> intrinsic_dirac(const IntrinsicSpinorField& psi);

/// D_M psi - N . D phi^+ over interior nodes: "identification".
ResidualReport identification_residual(const IntrinsicSpinorField& psi, const SpinorField& phi);

/// D_M psi + H psi: "friedrich".
ResidualReport friedrich_residual(const IntrinsicSpinorField& psi);

/// D_M psi + H psi + N . nu . psi: "morel". The last term is the conjugate term
/// of the sphere equation.
ResidualReport morel_residual(const IntrinsicSpinorField& psi);

/// Throws NormViolation unless |psi| = 1 to the tolerance.
void require_unit_length(const IntrinsicSpinorField& psi, double tolerance = 1e-8);

struct ReductionOptions {
  int base_i = 0;
  int base_j = 0;
  /// Max admissible residual of the intrinsic equation.
  double equation_budget = 1e-2;
  double unit_tolerance = 1e-8;
};

struct ReductionResult {
  SpinorField field;
  ReconstructedImmersion immersion;
  std::vector<ResidualReport> reports;
  bool immersed = true;
};

/// phi = (psi, -nu . psi).
SpinorField friedrich_lift(const IntrinsicSpinorField& psi);

/// Lift, integrate and check: "friedrich", "dirac", "d_minus_identity",
/// "xi_nu_constancy", "xi_real_part", "hyperplane" and the immersion families.
ReductionResult friedrich_reduction(const IntrinsicSpinorField& psi, const ReductionOptions& opt = {});

/// beta(X) = -<<X . nu . psi, psi>> on d_u, d_v.
QuatOneForm morel_beta(const IntrinsicSpinorField& psi);

/// d beta(d_u, d_v) - [beta(d_u), beta(d_v)] at cell centers: "morel_compatibility".
ResidualReport morel_compatibility_residual(const QuatOneForm& beta);

/// dF = beta F with F(base) = f0, fourth-order edge stepper, no renormalization.
ReconstructedImmersion integrate_beta(const QuatOneForm& beta, int base_i, int base_j, const Quaternion& f0);

/// False if dF has rank < 2 somewhere (finite differences).
bool is_immersion(const Grid<Vec4>& x);

struct MorelOptions : ReductionOptions {
  Quaternion f0 = Quaternion::one();
  double compatibility_budget = 1e-2;
};

/// Integrates beta, sets phi^- = -nu . psi . F and checks: "morel",
/// "morel_compatibility", "unit_sphere", "xi_nu_agreement",
/// "xi_integral_agreement" and the immersion families.
ReductionResult morel_sphere_immersion(const IntrinsicSpinorField& psi, const MorelOptions& opt = {});

struct LawsonOptions {
  int base_i = 0;
  int base_j = 0;
  /// +1 or -1: orientation of N.
  double n_sign = 1.0;
  /// Max admissible |H + x| of the source surface.
  double minimality_budget = 1e-2;
};

struct LawsonResult {
  SpinorField field;
  ReconstructedImmersion immersion;
  FramedPatch image;
  /// Mean curvature of the image along xi(nu).
  Grid<double> H;
  std::vector<ResidualReport> reports;
};

/// (phi^+, N . phi^+) for a minimal surface in S^3 framed by sphere_frame(). Reports
/// "minimality", "imaginary_part", "lawson_mean_curvature" (|H + 1|).
LawsonResult lawson_transform(const FramedPatch& source, const SpinorField& phi, const LawsonOptions& opt = {});

}  // namespace spinsurf

#endif  // SPINSURF_REDUCTIONS_HPP
