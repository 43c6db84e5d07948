#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "spinsurf_c.h"

namespace {

struct Flags {
  std::string surface, f, g, out, report, reduction, suite, res;
  std::string psi[4];
  std::vector<double> domain;
  std::vector<int> obj_axes;
  std::vector<int> sizes;
  double lambda = 0.0;
  double tol_algebra = 1e-12;
  double tol_geometry = 1e-8;
  double tol_order = 1.9;
  double tol_c = 10.0;
  bool json = false;
};

bool parse_res(const std::string& s, int& nu, int& nv) {
  const auto x = s.find_first_of("xX");
  try {
    std::size_t used = 0;
    if (x == std::string::npos) {
      nu = nv = std::stoi(s, &used);
      return used == s.size();
    }
    nu = std::stoi(s.substr(0, x), &used);
    if (used != x) return false;
    nv = std::stoi(s.substr(x + 1), &used);
    return used == s.size() - x - 1;
  } catch (const std::exception&) {
    return false;
  }
}

void print_entries(const nlohmann::json& items) {
  for (const auto& r : items) {
    std::printf("  %-28s max %.3e  budget %.3e  %s\n", r.value("name", "").c_str(), r.value("max", 0.0),
                r.value("budget", 0.0), r.value("passed", false) ? "ok" : "FAIL");
  }
}

void print_summary(const nlohmann::json& rep) {
  if (rep.contains("reduction")) std::printf("reduction: %s\n", rep["reduction"].get<std::string>().c_str());
  if (rep.contains("residuals")) print_entries(rep["residuals"]);
  if (rep.contains("suite")) {
    const auto& s = rep["suite"];
    for (const auto& c : s["checks"])
      std::printf("  %-36s %.3e %s %.3e  %s\n", c.value("name", "").c_str(), c.value("value", NAN),
                  c.value("relation", "<=").c_str(), c.value("limit", NAN), c.value("passed", false) ? "ok" : "FAIL");
    for (const auto& st : s["studies"]) {
      std::printf("  %-36s errors", st.value("name", "").c_str());
      for (const auto& e : st["errors"]) std::printf(" %.3e", e.is_number() ? e.get<double>() : NAN);
      std::printf("  orders");
      for (const auto& o : st["orders"]) std::printf(" %.2f", o.is_number() ? o.get<double>() : NAN);
      std::printf("  %s\n", st.value("passed", false) ? "ok" : "FAIL");
    }
  }
  if (rep.contains("error")) std::fprintf(stderr, "error: %s\n", rep["error"]["message"].get<std::string>().c_str());
  std::printf("%s\n", rep.value("passed", false) ? "PASSED" : "FAILED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spinorial representation toolkit for surfaces in R^4"};
  app.set_config("--config", "", "TOML file mirroring the flags; flags given on the command line win");
  app.require_subcommand(1);
  Flags fl;

  app.add_option("--surface", fl.surface, "built-in surface name");
  app.add_option("--f", fl.f, "classical Weierstrass f(z)");
  app.add_option("--g", fl.g, "classical Weierstrass g(z)");
  for (int k = 0; k < 4; ++k)
    app.add_option("--psi" + std::to_string(k + 1), fl.psi[k], "holomorphic component of the R^4 minimal data");
  app.add_option("--domain", fl.domain, "u0,u1,v0,v1")->delimiter(',')->expected(4);
  app.add_option("--res", fl.res, "grid resolution NuxNv or N");
  app.add_option("--lambda", fl.lambda, "Killing number");
  app.add_option("--out", fl.out, "mesh output (.csv or .obj)");
  app.add_option("--report", fl.report, "JSON report path");
  app.add_option("--obj-axes", fl.obj_axes, "coordinates written to OBJ, e.g. 0,1,2")->delimiter(',')->expected(3);
  app.add_option("--tol-algebra", fl.tol_algebra);
  app.add_option("--tol-geometry", fl.tol_geometry);
  app.add_option("--tol-order", fl.tol_order, "minimum convergence order");
  app.add_option("--tol-c", fl.tol_c, "constant C of the C h^2 budget");
  app.add_flag("--json", fl.json, "print the full report to stdout");

  app.add_subcommand("generate", "build a surface and write its mesh")->fallthrough();
  auto* verify = app.add_subcommand("verify", "restriction, form and immersion residuals or a named suite");
  verify->fallthrough();
  verify->add_option("--suite", fl.suite, "algebra, restriction, b-recovery, forms, xi, weierstrass, two-step, friedrich, morel, lawson");
  verify->add_option("--sizes", fl.sizes, "refinement sizes for --suite")->delimiter(',');
  app.add_subcommand("reconstruct", "rebuild from the spinor and from (g, connection, B)")->fallthrough();
  auto* reduce = app.add_subcommand("reduce", "hyperplane and S^3 reductions");
  reduce->fallthrough();
  reduce->add_option("--reduction", fl.reduction, "friedrich, morel or lawson");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  nlohmann::json cfg;
  cfg["command"] = app.get_subcommands().front()->get_name();
  if (!fl.surface.empty()) cfg["surface"] = fl.surface;
  if (!fl.f.empty()) cfg["f"] = fl.f;
  if (!fl.g.empty()) cfg["g"] = fl.g;
  if (!fl.psi[0].empty() || !fl.psi[1].empty() || !fl.psi[2].empty() || !fl.psi[3].empty())
    cfg["psi"] = {fl.psi[0], fl.psi[1], fl.psi[2], fl.psi[3]};
  if (!fl.domain.empty()) cfg["domain"] = fl.domain;
  if (!fl.res.empty()) {
    int nu = 0, nv = 0;
    if (!parse_res(fl.res, nu, nv)) {
      std::fprintf(stderr, "error: --res expects NuxNv, got '%s'\n", fl.res.c_str());
      return 1;
    }
    cfg["res"] = {nu, nv};
  }
  cfg["lambda"] = fl.lambda;
  if (!fl.out.empty()) cfg["out"] = fl.out;
  if (!fl.report.empty()) cfg["report"] = fl.report;
  if (!fl.reduction.empty()) cfg["reduction"] = fl.reduction;
  if (!fl.suite.empty()) cfg["suite"] = fl.suite;
  if (!fl.obj_axes.empty()) cfg["obj_axes"] = fl.obj_axes;
  if (!fl.sizes.empty()) cfg["suite_options"] = {{"sizes", fl.sizes}, {"reduction_sizes", fl.sizes}};
  cfg["tol"] = {{"algebra", fl.tol_algebra}, {"geometry", fl.tol_geometry}, {"order", fl.tol_order}, {"c", fl.tol_c}};

  char* report = nullptr;
  int exit_code = 1;
  if (spinsurf_run(cfg.dump().c_str(), &report, &exit_code) != SPINSURF_OK) {
    std::fprintf(stderr, "error: %s\n", spinsurf_last_error());
    return 1;
  }
  const auto rep = nlohmann::json::parse(report);
  spinsurf_string_free(report);
  if (fl.json)
    std::cout << rep.dump(2) << "\n";
  else
    print_summary(rep);
  return exit_code;
}
