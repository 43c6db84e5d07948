#include "spinsurf/clifford.hpp"

#include <cmath>

#include "spinsurf/error.hpp"

namespace spinsurf {

namespace {

constexpr double kUnitTolerance = 1e-10;

void require_unit(const Quaternion& q, const char* which) {
  if (std::abs(q.norm() - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::InvalidSpinElement,
                std::string("invalid spin element: |") + which + "| = " + std::to_string(q.norm()));
  }
}

// Unit quaternion q with v -> q v conj(q) given by the 3x3 matrix m (rows/cols over I,J,K).
Quaternion quaternion_from_rotation(const double m[3][3]) {
  const double trace = m[0][0] + m[1][1] + m[2][2];
  Quaternion q;
  if (trace > 0) {
    const double s = 2.0 * std::sqrt(1.0 + trace);
    q = {0.25 * s, (m[2][1] - m[1][2]) / s, (m[0][2] - m[2][0]) / s, (m[1][0] - m[0][1]) / s};
  } else if (m[0][0] > m[1][1] && m[0][0] > m[2][2]) {
    const double s = 2.0 * std::sqrt(1.0 + m[0][0] - m[1][1] - m[2][2]);
    q = {(m[2][1] - m[1][2]) / s, 0.25 * s, (m[0][1] + m[1][0]) / s, (m[0][2] + m[2][0]) / s};
  } else if (m[1][1] > m[2][2]) {
    const double s = 2.0 * std::sqrt(1.0 + m[1][1] - m[0][0] - m[2][2]);
    q = {(m[0][2] - m[2][0]) / s, (m[0][1] + m[1][0]) / s, 0.25 * s, (m[1][2] + m[2][1]) / s};
  } else {
    const double s = 2.0 * std::sqrt(1.0 + m[2][2] - m[0][0] - m[1][1]);
    q = {(m[1][0] - m[0][1]) / s, (m[0][2] + m[2][0]) / s, (m[1][2] + m[2][1]) / s, 0.25 * s};
  }
  return q.normalized();
}

}  // namespace

SpinorPair spin4_frame_act(const Quaternion& qp, const Quaternion& qm, const SpinorPair& phi) {
  require_unit(qp, "qp");
  require_unit(qm, "qm");
  return {qp * phi.plus, qm * phi.minus};
}

SpinorPair spin4_frame_act(const Spin4& s, const SpinorPair& phi) { return spin4_frame_act(s.qp, s.qm, phi); }

Spin4 spin_lift(const std::array<Vec4, 4>& cols) {
  // x -> R(x) conj(R(1)) = qp x conj(qp) is a rotation of Im H.
  const Quaternion r1c = cols[0].conj();
  double m[3][3];
  for (int c = 0; c < 3; ++c) {
    const Quaternion img = cols[c + 1] * r1c;
    m[0][c] = img.x;
    m[1][c] = img.y;
    m[2][c] = img.z;
  }
  const Quaternion qp = quaternion_from_rotation(m);
  const Quaternion qm = (r1c * qp).normalized();
  return {qp, qm};
}

}  // namespace spinsurf
