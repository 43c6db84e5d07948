#include "spinsurf/grid.hpp"

#include <algorithm>
#include <string>

namespace spinsurf {

GridSpec::GridSpec(const Domain& d, int nu_, int nv_) : domain(d), nu(nu_), nv(nv_) {
  if (nu < 8 || nv < 8) {
    throw Error(ErrorCode::InvalidArgument,
                "grid resolution must be at least 8x8, got " + std::to_string(nu) + "x" + std::to_string(nv));
  }
  if (!(d.u1 > d.u0) || !(d.v1 > d.v0)) {
    throw Error(ErrorCode::InvalidArgument, "degenerate parameter domain");
  }
}

double GridSpec::h() const { return std::max(hu(), hv()); }

}  // namespace spinsurf
