#include "spinsurf/app.hpp"

#include <ctime>
#include <set>

#include "spinsurf/io.hpp"
#include "spinsurf/reductions.hpp"

namespace spinsurf {

namespace {

const SpinorPair kPhi0{Quaternion(0.8, 0.3, -0.5, 0.2).normalized(), Quaternion(-0.1, 0.6, 0.4, 0.7).normalized()};
const SpinorPair kPhi1{Quaternion(0.2, 0.9, -0.3, 0.1).normalized(), Quaternion(0.6, 0.0, 0.8, 0.0)};

void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

std::string timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool has_expr_f(const RunConfig& c) { return !c.f.empty() || !c.g.empty(); }
bool has_psi(const RunConfig& c) {
  for (const auto& s : c.psi)
    if (!s.empty()) return true;
  return false;
}

struct Source {
  FramedPatch patch;
  std::optional<Grid<Vec4>> positions;
};

Domain domain_for(const RunConfig& c) {
  if (c.domain) return *c.domain;
  if (!c.surface.empty()) return default_domain(c.surface);
  return {-1.0, 1.0, -1.0, 1.0};
}

Source make_source(const RunConfig& c, const FrameOptions& frame = {}) {
  Source s;
  const Domain d = domain_for(c);
  if (!c.surface.empty()) {
    s.patch = build_patch(c.surface, GridSpec(d, c.nu, c.nv), PatchMode::Analytic, frame);
    return s;
  }
  const ComplexDomain cd{d, c.nu, c.nv, {0.0, 0.0}};
  if (has_expr_f(c)) {
    auto rec = classical_weierstrass_r3(c.f, c.g, cd);
    s.patch = patch_from_samples(rec.F, frame, "weierstrass-r3");
    s.positions = std::move(rec.F);
  } else {
    auto m = minimal_r4_from_holomorphic(c.psi, cd);
    s.patch = std::move(m.patch);
    s.positions = std::move(m.immersion.F);
  }
  return s;
}

class Residuals {
 public:
  Residuals(double budget) : budget_(budget) {}
  void add(const ResidualReport& r) {
    nlohmann::json j = r;
    j["budget"] = budget_;
    j["passed"] = r.max <= budget_;
    passed_ = passed_ && r.max <= budget_;
    items_.push_back(std::move(j));
  }
  void add(const std::vector<ResidualReport>& rs) {
    for (const auto& r : rs) add(r);
  }
  bool passed() const { return passed_; }
  const nlohmann::json& json() const { return items_; }

 private:
  double budget_;
  bool passed_ = true;
  nlohmann::json items_ = nlohmann::json::array();
};

ResidualReport alignment_report(const std::string& name, const RigidAlignment& a, const GridSpec& g) {
  return {name, g.nu, g.nv, a.max_error, a.rms_error, {}};
}

int run_generate(const RunConfig& c, nlohmann::json& rep) {
  const Source s = make_source(c);
  const GridSpec& g = s.patch.grid;
  Residuals res(c.tol.c * g.h() * g.h());
  if (s.positions) {
    res.add(mean_curvature_norm(s.patch));
    res.add(cauchy_riemann_residual(*s.positions));
  } else {
    res.add(structure_residuals(s.patch, 0.0));
  }
  rep["residuals"] = res.json();
  if (!c.out.empty()) write_mesh(c.out, s.positions ? *s.positions : s.patch.positions(), c.obj_axes);
  return res.passed() ? kExitOk : kExitResidual;
}

int run_verify(const RunConfig& c, nlohmann::json& rep) {
  if (!c.suite.empty()) {
    SuiteOptions opt = c.suite_options;
    opt.algebra_tolerance = c.tol.algebra;
    opt.geometry_tolerance = c.tol.geometry;
    opt.min_order = c.tol.order;
    const SuiteReport r = run_suite(c.suite, opt);
    rep["suite"] = r;
    return r.passed ? kExitOk : kExitResidual;
  }
  const Source s = make_source(c);
  const GridSpec& g = s.patch.grid;
  Residuals res(c.tol.c * g.h() * g.h());
  SpinorField f = restrict_parallel_spinor(s.patch, kPhi0);
  f.lambda = c.lambda;
  res.add(structure_residuals(s.patch, 0.0));
  res.add(dirac_residual(f));
  res.add(gauss_formula_residual(f));
  res.add(norm_condition_residual(f));
  res.add(form_difference(recover_B(f), *s.patch.structure, "recover_B"));
  const QuatOneForm xi = xi_form(f);
  res.add(closedness_residual(xi));
  const ReconstructedImmersion rec = integrate_form(xi);
  res.add(verify_immersion(rec, f));
  rep["residuals"] = res.json();
  if (!c.out.empty()) write_mesh(c.out, rec.F, c.obj_axes);
  return res.passed() ? kExitOk : kExitResidual;
}

int run_reconstruct(const RunConfig& c, nlohmann::json& rep) {
  const Source s = make_source(c);
  const GridSpec& g = s.patch.grid;
  const Grid<Vec4> original = s.positions ? *s.positions : s.patch.positions();
  Residuals res(c.tol.c * g.h() * g.h());
  const SpinorField f = restrict_parallel_spinor(s.patch, kPhi0);
  const ReconstructedImmersion from_spinor = integrate_form(xi_form(f));
  res.add(alignment_report("from_spinor_alignment", align_rigid(from_spinor.F, original), g));
  const TwoStepResult a = two_step_integration(s.patch.structure, kPhi0);
  const TwoStepResult b = two_step_integration(s.patch.structure, kPhi1);
  const RigidAlignment al = align_rigid(a.immersion.F, original);
  res.add(alignment_report("two_step_alignment", al, g));
  res.add({"gauge_right_factor", g.nu, g.nv, right_factor_defect(a.field, b.field), 0.0, {}});
  res.add(a.structure);
  rep["residuals"] = res.json();
  if (!c.out.empty()) {
    const Grid<Vec4> aligned = make_grid<Vec4>(g, [&](int i, int j) { return al.apply(a.immersion.F(i, j)); });
    write_mesh(c.out, aligned, c.obj_axes);
  }
  return res.passed() ? kExitOk : kExitResidual;
}

int run_reduce(const RunConfig& c, nlohmann::json& rep) {
  std::string kind = c.reduction;
  if (kind.empty()) kind = builtin_in_r3(c.surface) ? "friedrich" : "morel";
  rep["reduction"] = kind;
  Grid<Vec4> out;
  std::vector<ResidualReport> reports;
  GridSpec g;
  if (kind == "friedrich") {
    if (!builtin_in_r3(c.surface)) invalid("the hyperplane reduction needs a surface in R^3, got '" + c.surface + "'");
    const Source s = make_source(c, hyperplane_frame());
    g = s.patch.grid;
    const auto r = friedrich_reduction(intrinsic_from_field(restrict_parallel_spinor(s.patch, kPhi0)));
    reports = r.reports;
    out = r.immersion.F;
  } else {
    const Source s = make_source(c, sphere_frame());
    g = s.patch.grid;
    for (const auto& e : s.patch.embedding)
      if (std::abs(e.position.norm() - 1.0) > 1e-8) invalid("surface '" + c.surface + "' does not lie in the unit S^3");
    const SpinorField f = restrict_parallel_spinor(s.patch, kPhi0);
    if (kind == "morel") {
      const auto r = morel_sphere_immersion(intrinsic_from_field(f));
      reports = r.reports;
      out = r.immersion.F;
    } else {
      const auto r = lawson_transform(s.patch, f);
      reports = r.reports;
      out = r.immersion.F;
      double lo = 1e300, hi = -1e300;
      for (int j = 1; j < g.nv - 1; ++j)
        for (int i = 1; i < g.nu - 1; ++i) lo = std::min(lo, r.H(i, j)), hi = std::max(hi, r.H(i, j));
      rep["mean_curvature_range"] = {lo, hi};
    }
  }
  Residuals res(c.tol.c * g.h() * g.h());
  res.add(reports);
  rep["residuals"] = res.json();
  if (!c.out.empty()) write_mesh(c.out, out, c.obj_axes);
  return res.passed() ? kExitOk : kExitResidual;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return kExitIo;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::NormViolation: return kExitResidual;
    default: return kExitValidation;
  }
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = j.value("command", "");
    c.suite = j.value("suite", "");
    c.surface = j.value("surface", "");
    c.f = j.value("f", "");
    c.g = j.value("g", "");
    if (j.contains("psi")) c.psi = j.at("psi").get<std::array<std::string, 4>>();
    if (j.contains("domain") && !j.at("domain").is_null()) {
      const auto d = j.at("domain").get<std::array<double, 4>>();
      c.domain = Domain{d[0], d[1], d[2], d[3]};
    }
    if (j.contains("res")) {
      const auto r = j.at("res").get<std::array<int, 2>>();
      c.nu = r[0];
      c.nv = r[1];
    }
    c.lambda = j.value("lambda", 0.0);
    c.reduction = j.value("reduction", "");
    c.out = j.value("out", "");
    c.report = j.value("report", "");
    if (j.contains("obj_axes")) c.obj_axes = j.at("obj_axes").get<std::array<int, 3>>();
    if (j.contains("tol")) {
      const auto& t = j.at("tol");
      c.tol.algebra = t.value("algebra", c.tol.algebra);
      c.tol.geometry = t.value("geometry", c.tol.geometry);
      c.tol.order = t.value("order", c.tol.order);
      c.tol.c = t.value("c", c.tol.c);
    }
    if (j.contains("suite_options")) c.suite_options = j.at("suite_options").get<SuiteOptions>();
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("malformed configuration: ") + e.what());
  }

  static const std::set<std::string> commands{"generate", "verify", "reconstruct", "reduce"};
  if (!commands.count(c.command)) invalid("command must be generate, verify, reconstruct or reduce");
  const int sources = (c.surface.empty() ? 0 : 1) + (has_expr_f(c) ? 1 : 0) + (has_psi(c) ? 1 : 0) +
                      (c.suite.empty() ? 0 : 1);
  if (sources != 1) invalid("exactly one surface source is required (--surface, --f/--g, --psi1..4 or --suite)");
  if (!c.suite.empty()) {
    if (c.command != "verify") invalid("--suite is only valid with verify");
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end()) invalid("unknown suite '" + c.suite + "'");
  }
  if (!c.surface.empty()) {
    const auto names = builtin_surfaces();
    if (std::find(names.begin(), names.end(), c.surface) == names.end())
      invalid("unknown surface '" + c.surface + "'");
  }
  if (has_expr_f(c)) {
    if (c.f.empty() || c.g.empty()) invalid("--f and --g must be given together");
    Expr::parse(c.f);
    Expr::parse(c.g);
  }
  if (has_psi(c))
    for (const auto& s : c.psi) {
      if (s.empty()) invalid("all of --psi1..--psi4 are required");
      Expr::parse(s);
    }
  if (c.command == "reduce" && c.surface.empty()) invalid("reduce needs a built-in --surface");
  if (!c.reduction.empty() && c.reduction != "friedrich" && c.reduction != "morel" && c.reduction != "lawson")
    invalid("reduction must be friedrich, morel or lawson");
  if (c.nu < 8 || c.nv < 8) invalid("resolution must be at least 8x8");
  if (c.domain && !(c.domain->u0 < c.domain->u1 && c.domain->v0 < c.domain->v1)) invalid("empty domain");
  if (!(c.tol.algebra > 0 && c.tol.geometry > 0 && c.tol.order > 0 && c.tol.c > 0)) invalid("tolerances must be positive");
  for (int a : c.obj_axes)
    if (a < 0 || a > 3) invalid("OBJ axes must be in 0..3");
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j{{"command", c.command}, {"res", {c.nu, c.nv}}, {"lambda", c.lambda},
                   {"tol", {{"algebra", c.tol.algebra}, {"geometry", c.tol.geometry}, {"order", c.tol.order}, {"c", c.tol.c}}}};
  if (!c.suite.empty()) j["suite"] = c.suite;
  if (!c.surface.empty()) j["surface"] = c.surface;
  if (has_expr_f(c)) j["f"] = c.f, j["g"] = c.g;
  if (has_psi(c)) j["psi"] = c.psi;
  if (c.domain) j["domain"] = {c.domain->u0, c.domain->u1, c.domain->v0, c.domain->v1};
  if (!c.reduction.empty()) j["reduction"] = c.reduction;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.report.empty()) j["report"] = c.report;
  j["obj_axes"] = c.obj_axes;
  return j;
}

RunOutcome run(const RunConfig& c) {
  RunOutcome o;
  o.report = {{"schema", 1}, {"command", c.command}, {"config", config_to_json(c)}};
  try {
    if (c.command == "generate") o.exit_code = run_generate(c, o.report);
    else if (c.command == "verify") o.exit_code = run_verify(c, o.report);
    else if (c.command == "reconstruct") o.exit_code = run_reconstruct(c, o.report);
    else o.exit_code = run_reduce(c, o.report);
  } catch (const Error& e) {
    o.exit_code = exit_for(e.code());
    o.report["error"] = {{"code", static_cast<int>(e.code())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    o.exit_code = kExitValidation;
    o.report["error"] = {{"code", 0}, {"message", e.what()}};
  }
  o.report["passed"] = o.exit_code == kExitOk;
  o.report["exit_code"] = o.exit_code;
  o.report["timestamp"] = timestamp();
  if (!c.report.empty()) {
    try {
      write_json(c.report, o.report);
    } catch (const Error& e) {
      o.exit_code = kExitIo;
      o.report["exit_code"] = o.exit_code;
      o.report["error"] = {{"code", static_cast<int>(e.code())}, {"message", e.what()}};
    }
  }
  return o;
}

RunOutcome run(const nlohmann::json& config) {
  try {
    return run(config_from_json(config));
  } catch (const Error& e) {
    RunOutcome o;
    o.exit_code = exit_for(e.code()) == kExitIo ? kExitIo : kExitValidation;
    o.report = {{"schema", 1},
                {"command", config.value("command", "")},
                {"error", {{"code", static_cast<int>(e.code())}, {"message", e.what()}}},
                {"passed", false},
                {"exit_code", o.exit_code},
                {"timestamp", timestamp()}};
    const std::string path = config.is_object() ? config.value("report", "") : "";
    if (!path.empty()) {
      try {
        write_json(path, o.report);
      } catch (const Error&) {
        o.exit_code = kExitIo;
        o.report["exit_code"] = o.exit_code;
      }
    }
    return o;
  }
}

}  // namespace spinsurf
