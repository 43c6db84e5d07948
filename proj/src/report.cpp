#include "spinsurf/report.hpp"

#include <cmath>

namespace spinsurf {

const ResidualReport& find_report(const std::vector<ResidualReport>& reports, const std::string& name) {
  for (const auto& r : reports)
    if (r.name == name) return r;
  throw Error(ErrorCode::InvalidArgument, "no residual named '" + name + "'");
}

double convergence_order(double err_coarse, double h_coarse, double err_fine, double h_fine) {
  return std::log(err_coarse / err_fine) / std::log(h_coarse / h_fine);
}

void to_json(nlohmann::json& j, const ResidualReport& r) {
  j = nlohmann::json{{"name", r.name}, {"grid", {r.nu, r.nv}}, {"max", r.max}, {"mean", r.mean}};
  if (r.order_vs_coarser) j["order_vs_coarser"] = *r.order_vs_coarser;
}

void from_json(const nlohmann::json& j, ResidualReport& r) {
  r.name = j.at("name").get<std::string>();
  r.nu = j.at("grid").at(0).get<int>();
  r.nv = j.at("grid").at(1).get<int>();
  r.max = j.at("max").get<double>();
  r.mean = j.at("mean").get<double>();
  if (j.contains("order_vs_coarser")) r.order_vs_coarser = j.at("order_vs_coarser").get<double>();
}

}  // namespace spinsurf
