#ifndef SPINSURF_APP_HPP
#define SPINSURF_APP_HPP

#include <array>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "spinsurf/suites.hpp"
#include "spinsurf/surface.hpp"

namespace spinsurf {

enum ExitCode { kExitOk = 0, kExitValidation = 1, kExitResidual = 2, kExitIo = 3 };

struct Tolerances {
  double algebra = 1e-12;
  double geometry = 1e-8;
  double order = 1.9;
  /// Discretization budget C h^2.
  double c = 10.0;
};

struct RunConfig {
  std::string command;
  std::string suite;
  std::string surface;
  std::string f;
  std::string g;
  std::array<std::string, 4> psi;
  std::optional<Domain> domain;
  int nu = 64;
  int nv = 64;
  double lambda = 0.0;
  std::string reduction;
  std::string out;
  std::string report;
  std::array<int, 3> obj_axes{0, 1, 2};
  Tolerances tol;
  SuiteOptions suite_options;
};

/// Parses and validates. Throws InvalidArgument on any violation.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

struct RunOutcome {
  int exit_code = kExitOk;
  nlohmann::json report;
};

/// Runs a command; never throws. The report is written to config.report when set.
RunOutcome run(const RunConfig& config);
/// Same, from an unvalidated JSON config.
RunOutcome run(const nlohmann::json& config);

}  // namespace spinsurf

#endif  // SPINSURF_APP_HPP
