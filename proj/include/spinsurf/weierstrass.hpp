#ifndef SPINSURF_WEIERSTRASS_HPP
#define SPINSURF_WEIERSTRASS_HPP

#include <array>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "spinsurf/expr.hpp"
#include "spinsurf/spinor.hpp"

namespace spinsurf {

/// H-valued 1-form sampled at nodes, evaluated on the coordinate directions d_u, d_v.
struct QuatOneForm {
  Grid<std::array<Quaternion, 2>> values;
  const GridSpec& grid() const { return values.spec(); }
};

enum class Provenance { FromSpinor, ClassicalR3, ClassicalR4, TwoStep, Morel };
const char* to_string(Provenance p);

struct ReconstructedImmersion {
  Grid<Vec4> F;
  int base_i = 0;
  int base_j = 0;
  Vec4 base_value;
  Provenance provenance = Provenance::FromSpinor;
};

/// Tolerance on |phi+| = |phi-| = 1 for xi_form.
inline constexpr double kUnitHalfTolerance = 1e-8;

/// xi(X) = <<X . phi^-, phi^+>> = conj(phi^+) X phi^- (X in frame components).
Quaternion xi_at(const SpinorPair& phi, const Vec4& x);

/// Throws NormViolation unless both halves have unit norm to the tolerance.
QuatOneForm xi_form(const SpinorField& f, double tolerance = kUnitHalfTolerance);

/// Per-cell circulation of xi divided by the cell area: "closedness".
ResidualReport closedness_residual(const QuatOneForm& xi);
/// Sum of |circulation| over all cells.
double total_circulation(const QuatOneForm& xi);

/// d xi(e1,e2) against <<e1 e2 D phi^-, phi^+>> + <<e1 e2 phi^-, D phi^+>> at cell
/// centers: "dxi_identity".
ResidualReport dxi_identity_residual(const SpinorField& f);

enum class PathOrder { RowFirst, ColumnFirst };

struct IntegrationOptions {
  int base_i = 0;
  int base_j = 0;
  Vec4 base_value;
  PathOrder order = PathOrder::RowFirst;
  /// Maximum admissible closedness residual; BudgetExceeded beyond it.
  double closedness_budget = std::numeric_limits<double>::infinity();
};

/// Trapezoid integration of xi along a spanning tree rooted at the base node.
ReconstructedImmersion integrate_form(const QuatOneForm& xi, const IntegrationOptions& opt = {});

/// Max over nodes of |F_a - F_b|.
double max_distance(const Grid<Vec4>& a, const Grid<Vec4>& b);

/// Families "df_xi", "tangent_isometry", "normal_isometry", "b_preservation",
/// "normal_connection" for an immersion integrated from f.
std::vector<ResidualReport> verify_immersion(const ReconstructedImmersion& rec, const SpinorField& f);

/// Holomorphic data on the rectangle domain, z = u + i v.
struct ComplexDomain {
  Domain domain;
  int nu = 0;
  int nv = 0;
  /// Lower limit of the integrals.
  std::complex<double> z_ref{0.0, 0.0};
};

using Holomorphic = std::function<std::complex<double>(std::complex<double>)>;

/// Re int (f(1-g^2), i f(1+g^2), 2 f g) dz with fourth coordinate 0. Throws Pole
/// if f g^2 is not finite at a sample.
ReconstructedImmersion classical_weierstrass_r3(const Holomorphic& f, const Holomorphic& g, const ComplexDomain& d);
ReconstructedImmersion classical_weierstrass_r3(const std::string& f, const std::string& g, const ComplexDomain& d);

/// Closed-form point value of the classical integral at z.
Vec4 classical_weierstrass_point(const Holomorphic& f, const Holomorphic& g, std::complex<double> z,
                                 std::complex<double> z_ref = {});

struct MinimalR4 {
  ReconstructedImmersion immersion;
  FramedPatch patch;
  SpinorField field;
};

/// Re int psi_k dz. Throws DegenerateParametrization if the induced metric degenerates.
MinimalR4 minimal_r4_from_holomorphic(const std::array<Holomorphic, 4>& psi, const ComplexDomain& d,
                                      const SpinorPair& phi0 = {Quaternion::one(), Quaternion::one()});
MinimalR4 minimal_r4_from_holomorphic(const std::array<std::string, 4>& psi, const ComplexDomain& d,
                                      const SpinorPair& phi0 = {Quaternion::one(), Quaternion::one()});

/// Mean curvature of a patch, sup norm over interior nodes: "mean_curvature".
ResidualReport mean_curvature_norm(const FramedPatch& p);

/// d-bar of psi = F_u - i F_v, i.e. (psi_u + i psi_v)/2, over interior nodes: "cauchy_riemann".
ResidualReport cauchy_riemann_residual(const Grid<Vec4>& positions);

/// Step 1 operator: d_i phi = A_i phi with A_i = -1/2 w12 e1e2 - 1/2 w34 e3e4 + eta(d_i).
std::array<CliffordOrder2, 2> parallel_transport_generator(const StructurePoint& p);

struct TwoStepOptions {
  int base_i = 0;
  int base_j = 0;
  Vec4 base_value;
  /// Max admissible structure residual (Gauss, Ricci, Codazzi).
  double integrability_budget = 1e-2;
  /// Tolerance on unit half norms after step 1.
  double norm_tolerance = 1e-4;
};

struct TwoStepResult {
  SpinorField field;
  ReconstructedImmersion immersion;
  std::vector<ResidualReport> structure;
};

/// Solve nabla phi = eta phi from phi0 at the base node, then dF = xi.
TwoStepResult two_step_integration(std::shared_ptr<const StructureData> data, const SpinorPair& phi0,
                                   const TwoStepOptions& opt = {});

/// Fourth-order edge stepper for d_i y = A_i y along the spanning tree
/// (rows from the base node, then columns).
template <class State, class Op, class Apply>
Grid<State> integrate_linear(const Grid<std::array<Op, 2>>& ops, int bi, int bj, const State& y0, Apply apply);

/// x -> R x + t with R in SO(4).
struct RigidAlignment {
  std::array<std::array<double, 4>, 4> rotation{};
  Vec4 translation;
  double max_error = 0;
  double rms_error = 0;
  Vec4 apply(const Vec4& x) const;
};

/// Best rigid motion taking `moving` onto `fixed` (least squares, det = +1).
RigidAlignment align_rigid(const Grid<Vec4>& moving, const Grid<Vec4>& fixed);

/// Max over nodes of |phi_b^s - phi_a^s c_s| with c_s = conj(a0^s) b0^s / |a0^s|^2
/// taken at the base node, per half.
double right_factor_defect(const SpinorField& a, const SpinorField& b, int bi = 0, int bj = 0);

// ---------------------------------------------------------------------------

namespace detail {

template <class Op>
Op midpoint(const Op& a, const Op& b, const Op& c, const Op& d, int where) {
  // Cubic interpolation at the middle of one of the three intervals of four
  // equally spaced samples a, b, c, d: where = 0, 1, 2.
  switch (where) {
    case 0: return (5.0 / 16.0) * a + (15.0 / 16.0) * b + (-5.0 / 16.0) * c + (1.0 / 16.0) * d;
    case 1: return (-1.0 / 16.0) * a + (9.0 / 16.0) * b + (9.0 / 16.0) * c + (-1.0 / 16.0) * d;
    default: return (1.0 / 16.0) * a + (-5.0 / 16.0) * b + (15.0 / 16.0) * c + (5.0 / 16.0) * d;
  }
}

// Operator at the midpoint between samples k and k+1 of a line of n samples.
template <class Op, class Get>
Op line_midpoint(int k, int n, Get get) {
  if (n < 4) return 0.5 * get(k) + 0.5 * get(k + 1);
  if (k == 0) return midpoint(get(0), get(1), get(2), get(3), 0);
  if (k == n - 2) return midpoint(get(n - 4), get(n - 3), get(n - 2), get(n - 1), 2);
  return midpoint(get(k - 1), get(k), get(k + 1), get(k + 2), 1);
}

template <class State, class Op, class Apply>
State rk4_step(const State& y, const Op& a0, const Op& am, const Op& a1, double h, Apply apply) {
  const State k1 = apply(a0, y);
  const State k2 = apply(am, y + (0.5 * h) * k1);
  const State k3 = apply(am, y + (0.5 * h) * k2);
  const State k4 = apply(a1, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

template <class State, class Op, class Apply>
Grid<State> integrate_linear(const Grid<std::array<Op, 2>>& ops, int bi, int bj, const State& y0, Apply apply) {
  const GridSpec& g = ops.spec();
  Grid<State> y(g);
  y(bi, bj) = y0;
  const double hu = g.hu(), hv = g.hv();
  auto along_u = [&](int j) {
    auto get = [&](int k) { return ops(k, j)[0]; };
    for (int i = bi; i + 1 < g.nu; ++i)
      y(i + 1, j) = detail::rk4_step(y(i, j), get(i), detail::line_midpoint<Op>(i, g.nu, get), get(i + 1), hu, apply);
    for (int i = bi; i > 0; --i)
      y(i - 1, j) =
          detail::rk4_step(y(i, j), get(i), detail::line_midpoint<Op>(i - 1, g.nu, get), get(i - 1), -hu, apply);
  };
  along_u(bj);
  for (int i = 0; i < g.nu; ++i) {
    auto get = [&](int k) { return ops(i, k)[1]; };
    for (int j = bj; j + 1 < g.nv; ++j)
      y(i, j + 1) = detail::rk4_step(y(i, j), get(j), detail::line_midpoint<Op>(j, g.nv, get), get(j + 1), hv, apply);
    for (int j = bj; j > 0; --j)
      y(i, j - 1) =
          detail::rk4_step(y(i, j), get(j), detail::line_midpoint<Op>(j - 1, g.nv, get), get(j - 1), -hv, apply);
  }
  return y;
}

}  // namespace spinsurf

#endif  // SPINSURF_WEIERSTRASS_HPP
