#ifndef SPINSURF_SUITES_HPP
#define SPINSURF_SUITES_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinsurf/clifford.hpp"

namespace spinsurf {

/// Refinement study of one residual family.
struct Study {
  std::string name;
  std::vector<int> sizes;
  std::vector<double> h;
  std::vector<double> errors;
  /// Orders between consecutive sizes.
  std::vector<double> orders;
  /// errors.back() / h.back()^2.
  double constant = 0.0;
  bool passed = false;
};

/// Passes if every order reaches min_order or the finer error is at round-off.
Study make_study(std::string name, std::vector<int> sizes, std::vector<double> h, std::vector<double> errors,
                 double min_order);

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  /// value <= limit if true, value >= limit otherwise.
  bool upper = true;
  bool passed = false;
};

Check make_check(std::string name, double value, double limit, bool upper = true);

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<Study> studies;
  bool passed = false;
  /// Wall time, kept out of the JSON form.
  double seconds = 0.0;

  void finalize();
};

struct SuiteOptions {
  std::vector<int> sizes{32, 64, 128};
  /// Sizes for the reduction suites.
  std::vector<int> reduction_sizes{32, 64};
  double min_order = 1.9;
  int cases = 10000;
  unsigned seed = 20240601;
  double algebra_tolerance = 1e-12;
  /// Max residual allowed on the finest restriction grid.
  double fine_limit = 1e-3;
  /// Pass threshold for the Cauchy-Riemann cross-check and point values.
  double geometry_tolerance = 1e-8;
  double point_tolerance = 1e-10;
};

SuiteReport algebra_suite(const SuiteOptions& opt = {});
SuiteReport restriction_suite(const SuiteOptions& opt = {});
SuiteReport b_recovery_suite(const SuiteOptions& opt = {});
SuiteReport form_suite(const SuiteOptions& opt = {});
SuiteReport xi_suite(const SuiteOptions& opt = {});
SuiteReport weierstrass_suite(const SuiteOptions& opt = {});
SuiteReport two_step_suite(const SuiteOptions& opt = {});
SuiteReport friedrich_suite(const SuiteOptions& opt = {});
SuiteReport morel_suite(const SuiteOptions& opt = {});
SuiteReport lawson_suite(const SuiteOptions& opt = {});

/// "algebra", "restriction", "b-recovery", "forms", "xi", "weierstrass",
/// "two-step", "friedrich", "morel", "lawson".
const std::vector<std::string>& suite_names();
/// Runs a suite by name and fills in its wall time. Throws InvalidArgument for unknown names.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

void to_json(nlohmann::json& j, const Study& s);
void to_json(nlohmann::json& j, const Check& c);
void to_json(nlohmann::json& j, const SuiteReport& r);
void from_json(const nlohmann::json& j, SuiteOptions& o);

}  // namespace spinsurf

#endif  // SPINSURF_SUITES_HPP
