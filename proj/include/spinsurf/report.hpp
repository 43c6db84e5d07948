#ifndef SPINSURF_REPORT_HPP
#define SPINSURF_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinsurf/grid.hpp"

namespace spinsurf {

/// Named residual statistics over interior grid points.
struct ResidualReport {
  std::string name;
  int nu = 0;
  int nv = 0;
  double max = 0.0;
  double mean = 0.0;
  std::optional<double> order_vs_coarser;
};

/// Accumulates fiber norms and produces max/mean.
class ResidualAccumulator {
 public:
  void add(double value) {
    max_ = value > max_ ? value : max_;
    sum_ += value;
    ++count_;
  }
  std::size_t count() const { return count_; }
  ResidualReport finish(std::string name, const GridSpec& spec) const {
    return {std::move(name), spec.nu, spec.nv, max_, count_ ? sum_ / static_cast<double>(count_) : 0.0, {}};
  }

 private:
  double max_ = 0.0;
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

/// Find a report by name; throws InvalidArgument if absent.
const ResidualReport& find_report(const std::vector<ResidualReport>& reports, const std::string& name);

/// Observed convergence order between a coarse and a fine run.
double convergence_order(double err_coarse, double h_coarse, double err_fine, double h_fine);

/// Residuals at or below this are treated as exact (round-off only); their
/// convergence order is not meaningful.
inline constexpr double kRoundoffFloor = 1e-10;

void to_json(nlohmann::json& j, const ResidualReport& r);
void from_json(const nlohmann::json& j, ResidualReport& r);

}  // namespace spinsurf

#endif  // SPINSURF_REPORT_HPP
