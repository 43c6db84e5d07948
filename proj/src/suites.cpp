#include "spinsurf/suites.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "spinsurf/reductions.hpp"

namespace spinsurf {

namespace {

const SpinorPair kGeneric{Quaternion(0.8, 0.3, -0.5, 0.2).normalized(), Quaternion(-0.1, 0.6, 0.4, 0.7).normalized()};
const SpinorPair kBalanced{Quaternion(1, 0, 1, 0).normalized(), Quaternion(1, 0, 1, 0).normalized()};
const SpinorPair kUnit{Quaternion::one(), Quaternion::one()};

FramedPatch patch(const std::string& name, int n) {
  return build_patch(name, GridSpec(default_domain(name), n, n), PatchMode::Analytic);
}

// Runs `measure` at every size and returns one study per named family.
std::vector<Study> refine(const std::string& prefix, const std::vector<int>& sizes, double min_order,
                          const std::function<std::vector<std::pair<std::string, double>>(int, double&)>& measure) {
  std::vector<std::string> names;
  std::map<std::string, std::vector<double>> errors;
  std::vector<double> h;
  for (int n : sizes) {
    double hn = 0.0;
    for (const auto& [name, e] : measure(n, hn)) {
      if (!errors.count(name)) names.push_back(name);
      errors[name].push_back(e);
    }
    h.push_back(hn);
  }
  std::vector<Study> out;
  for (const auto& name : names)
    out.push_back(make_study(prefix.empty() ? name : prefix + "/" + name, sizes, h, errors[name], min_order));
  return out;
}

void add(std::vector<Study>& into, std::vector<Study> more) {
  for (auto& s : more) into.push_back(std::move(s));
}

double max_of(const std::vector<ResidualReport>& reports, const std::string& prefix) {
  double m = 0;
  for (const auto& r : reports)
    if (r.name.rfind(prefix, 0) == 0) m = std::max(m, r.max);
  return m;
}

}  // namespace

Study make_study(std::string name, std::vector<int> sizes, std::vector<double> h, std::vector<double> errors,
                 double min_order) {
  Study s{std::move(name), std::move(sizes), std::move(h), std::move(errors), {}, 0.0, true};
  for (std::size_t k = 1; k < s.errors.size(); ++k) {
    const bool floor = s.errors[k] <= kRoundoffFloor;
    const double order = floor ? 0.0 : convergence_order(s.errors[k - 1], s.h[k - 1], s.errors[k], s.h[k]);
    s.orders.push_back(order);
    if (!floor && !(order >= min_order)) s.passed = false;
  }
  if (!s.errors.empty()) s.constant = s.errors.back() / (s.h.back() * s.h.back());
  return s;
}

Check make_check(std::string name, double value, double limit, bool upper) {
  const bool ok = upper ? value <= limit : value >= limit;
  return {std::move(name), value, limit, upper, ok};
}

void SuiteReport::finalize() {
  passed = true;
  for (const auto& c : checks) passed = passed && c.passed;
  for (const auto& s : studies) passed = passed && s.passed;
}

SuiteReport algebra_suite(const SuiteOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto quat = [&] { return Quaternion(u(rng), u(rng), u(rng), u(rng)); };
  auto imag = [&] { return Quaternion(0.0, u(rng), u(rng), u(rng)); };
  auto spinor = [&] { return SpinorPair{quat(), quat()}; };

  double rho2 = 0, om2 = 0, complete = 0, orth = 0, eigen = 0, pair1 = 0, pair2 = 0, anti = 0, inj = 0;
  const CliffordOrder2 e12 = clifford_product(Quaternion::one(), Quaternion::I());
  const CliffordOrder2 e34 = clifford_product(Quaternion::J(), Quaternion::K());
  for (int k = 0; k < opt.cases; ++k) {
    const Vec4 x = quat();
    const SpinorPair phi = spinor(), psi = spinor();

    rho2 = std::max(rho2, (clifford_act(x, clifford_act(x, phi)) + x.norm2() * phi).norm());
    om2 = std::max(om2, (omega4(omega4(phi)) - phi).norm());

    const Quadrants q = project_quadrants(phi);
    const Quadrants r = project_quadrants(psi);
    complete = std::max(complete, (q.pp + q.mm + q.pm + q.mp - phi).norm());
    const SpinorPair qs[4] = {q.pp, q.mm, q.pm, q.mp};
    const SpinorPair rs[4] = {r.pp, r.mm, r.pm, r.mp};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (a != b) orth = std::max(orth, std::abs(herm_inner(qs[a], rs[b])));
    // e1e2 and e3e4 act by i times the signs in the labels, i right multiplication by I.
    const double s12[4] = {1, -1, 1, -1}, s34[4] = {1, -1, -1, 1};
    for (int a = 0; a < 4; ++a) {
      eigen = std::max(eigen, (e12.apply(qs[a]) - s12[a] * right_mul(qs[a], Quaternion::I())).norm());
      eigen = std::max(eigen, (e34.apply(qs[a]) - s34[a] * right_mul(qs[a], Quaternion::I())).norm());
    }

    for (Half h : {Half::Plus, Half::Minus})
      pair1 = std::max(pair1, distance(quat_pairing(phi, psi, h), quat_pairing(psi, phi, h).conj()));
    const SpinorPair xp = clifford_act(x, phi.plus_part());
    const SpinorPair xm = clifford_act(x, psi.minus_part());
    pair2 = std::max(pair2, (quat_pairing(xp, psi.minus_part(), Half::Minus) +
                             quat_pairing(phi.plus_part(), xm, Half::Plus))
                                .norm());

    anti = std::max(anti, std::abs(real_inner(clifford_act(x, phi), psi) + real_inner(phi, clifford_act(x, psi))));

    const CliffordOrder2 t{imag(), imag()};
    const double lhs = t.apply(phi).norm2();
    const double rhs = t.p.norm2() * phi.plus.norm2() + t.q.norm2() * phi.minus.norm2();
    inj = std::max(inj, std::abs(lhs - rhs));
  }
  SuiteReport r;
  r.suite = "algebra";
  const double tol = opt.algebra_tolerance;
  r.checks = {make_check("rho_square", rho2, tol),
              make_check("omega4_square", om2, tol),
              make_check("projector_completeness", complete, tol),
              make_check("projector_orthogonality", orth, tol),
              make_check("quadrant_eigenvalues", eigen, tol),
              make_check("pairing_conjugate", pair1, tol),
              make_check("pairing_clifford", pair2, tol),
              make_check("clifford_antihermitian", anti, tol),
              make_check("order2_injectivity", inj, tol)};
  r.finalize();
  return r;
}

SuiteReport restriction_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "restriction";
  for (const auto& name : builtin_surfaces()) {
    auto studies = refine(name, opt.sizes, opt.min_order, [&](int n, double& h) {
      const auto p = patch(name, n);
      h = p.grid.h();
      const SpinorField f = restrict_parallel_spinor(p, kGeneric);
      return std::vector<std::pair<std::string, double>>{
          {"dirac", dirac_residual(f).max},
          {"gauss_formula", max_of(gauss_formula_residual(f), "gauss_formula")},
          {"norm_condition", max_of(norm_condition_residual(f), "norm_")}};
    });
    for (const auto& s : studies) r.checks.push_back(make_check(s.name + "@fine", s.errors.back(), opt.fine_limit));
    add(r.studies, std::move(studies));
  }
  r.finalize();
  return r;
}

SuiteReport b_recovery_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "b-recovery";
  for (const std::string name : {"catenoid", "clifford-torus"}) {
    double equivalence = 0;
    add(r.studies, refine(name, opt.sizes, opt.min_order, [&](int n, double& h) {
          const auto p = patch(name, n);
          h = p.grid.h();
          const SpinorField f = restrict_parallel_spinor(p, kGeneric);
          const auto full = recover_B(f, BFormula::Full);
          const auto simple = recover_B(f, BFormula::Simplified);
          for (std::size_t k = 0; k < full.size(); ++k)
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                  equivalence = std::max(equivalence, std::abs(full.begin()[k][a][b][c] - simple.begin()[k][a][b][c]));
          return std::vector<std::pair<std::string, double>>{
              {"recover_B", form_difference(full, *p.structure, "recover_B").max}};
        }));
    r.checks.push_back(make_check(name + "/formula_equivalence", equivalence, opt.algebra_tolerance));
  }
  r.finalize();
  return r;
}

SuiteReport form_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "forms";
  const std::vector<std::pair<std::string, SpinorPair>> cases = {{"clifford-torus", kGeneric}, {"enneper", kBalanced}};
  for (const auto& [name, phi0] : cases) {
    int excluded = 0;
    add(r.studies, refine(name, opt.sizes, opt.min_order, [&](int n, double& h) {
          const auto p = patch(name, n);
          h = p.grid.h();
          const SpinorField f = restrict_parallel_spinor(p, phi0);
          const AForms forms = a_forms(f);
          excluded += forms.excluded;
          std::vector<std::pair<std::string, double>> out;
          for (const auto& x : a_form_residuals(f, forms)) out.emplace_back(x.name, x.max);
          return out;
        }));
    r.checks.push_back(make_check(name + "/excluded_nodes", excluded, 0));
  }
  r.finalize();
  return r;
}

SuiteReport xi_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "xi";
  for (const auto& name : builtin_surfaces()) {
    add(r.studies, refine(name, opt.sizes, opt.min_order, [&](int n, double& h) {
          const auto p = patch(name, n);
          h = p.grid.h();
          const SpinorField f = restrict_parallel_spinor(p, kUnit);
          const QuatOneForm xi = xi_form(f);
          double isom = 0;
          for (const auto& v : f.values) {
            Vec4 img[4];
            for (int a = 0; a < 4; ++a) img[a] = xi_at(v, Quaternion::basis(a));
            for (int a = 0; a < 4; ++a)
              for (int b = 0; b < 4; ++b) isom = std::max(isom, std::abs(dot(img[a], img[b]) - (a == b ? 1.0 : 0.0)));
          }
          std::vector<std::pair<std::string, double>> out{{"closedness", closedness_residual(xi).max},
                                                          {"xi_isometry", isom}};
          for (const auto& x : verify_immersion(integrate_form(xi), f)) out.emplace_back(x.name, x.max);
          return out;
        }));
  }
  r.finalize();
  return r;
}

SuiteReport weierstrass_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "weierstrass";
  const Holomorphic one = [](std::complex<double>) { return std::complex<double>(1.0); };
  const Holomorphic id = [](std::complex<double> z) { return z; };
  r.checks.push_back(make_check(
      "enneper_point_z=1", distance(classical_weierstrass_point(one, id, {1.0, 0.0}), {2.0 / 3.0, 0.0, 1.0, 0.0}),
      opt.point_tolerance));
  r.checks.push_back(make_check(
      "enneper_point_z=i", distance(classical_weierstrass_point(one, id, {0.0, 1.0}), {0.0, -2.0 / 3.0, -1.0, 0.0}),
      opt.point_tolerance));
  {
    const auto rec = classical_weierstrass_r3("1", "z", {{-1, 1, -1, 1}, 33, 33, {0.0, 0.0}});
    r.checks.push_back(
        make_check("enneper_grid_z=1", distance(rec.F(32, 16), {2.0 / 3.0, 0.0, 1.0, 0.0}), opt.point_tolerance));
    r.checks.push_back(
        make_check("enneper_grid_z=i", distance(rec.F(16, 32), {0.0, -2.0 / 3.0, -1.0, 0.0}), opt.point_tolerance));
  }

  const std::array<std::string, 4> zz2{"1", "-i", "2*z", "-2*i*z"};
  double cr_enneper = 0, cr_zz2 = 0, cr_bent = 1e300, h_bent = 1e300;
  add(r.studies, refine("", opt.sizes, opt.min_order, [&](int n, double& h) {
        const ComplexDomain d{{-0.5, 0.5, -0.5, 0.5}, n, n, {0.0, 0.0}};
        const auto enneper = classical_weierstrass_r3("1", "z", d);
        const auto m = minimal_r4_from_holomorphic(zz2, d);
        h = m.patch.grid.h();
        cr_enneper = std::max(cr_enneper, cauchy_riemann_residual(enneper.F).max);
        cr_zz2 = std::max(cr_zz2, cauchy_riemann_residual(m.immersion.F).max);
        Grid<Vec4> bent = m.immersion.F;
        const GridSpec& g = bent.spec();
        for (int j = 0; j < g.nv; ++j)
          for (int i = 0; i < g.nu; ++i) bent(i, j).z += 0.1 * (g.u(i) * g.u(i) + g.v(j) * g.v(j));
        cr_bent = std::min(cr_bent, cauchy_riemann_residual(bent).max);
        h_bent = std::min(h_bent, mean_curvature_norm(patch_from_samples(bent)).max);
        // Non-polynomial data, so the sampled derivatives carry a real truncation error.
        const auto catenoid = classical_weierstrass_r3("exp(-z)/2", "-exp(z)", d);
        return std::vector<std::pair<std::string, double>>{
            {"enneper/mean_curvature", mean_curvature_norm(patch_from_samples(enneper.F)).max},
            {"catenoid/mean_curvature", mean_curvature_norm(patch_from_samples(catenoid.F)).max},
            {"z_z2/mean_curvature", mean_curvature_norm(m.patch).max}};
      }));
  r.checks.push_back(make_check("enneper/cauchy_riemann", cr_enneper, opt.geometry_tolerance));
  r.checks.push_back(make_check("z_z2/cauchy_riemann", cr_zz2, opt.geometry_tolerance));
  r.checks.push_back(make_check("perturbed/cauchy_riemann", cr_bent, 1e-2, false));
  r.checks.push_back(make_check("perturbed/mean_curvature", h_bent, 1e-2, false));
  r.finalize();
  return r;
}

SuiteReport two_step_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "two-step";
  const SpinorPair other{Quaternion(0.2, 0.9, -0.3, 0.1).normalized(), Quaternion(0.6, 0.0, 0.8, 0.0)};
  for (const std::string name : {"catenoid", "clifford-torus"}) {
    add(r.studies, refine(name, opt.sizes, opt.min_order, [&](int n, double& h) {
          const auto p = patch(name, n);
          h = p.grid.h();
          const auto a = two_step_integration(p.structure, kUnit);
          const auto b = two_step_integration(p.structure, other);
          return std::vector<std::pair<std::string, double>>{
              {"aligned_error", align_rigid(a.immersion.F, p.positions()).max_error},
              {"gauge_right_factor", right_factor_defect(a.field, b.field)}};
        }));
  }
  r.finalize();
  return r;
}

SuiteReport friedrich_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "friedrich";
  bool immersed = true;
  add(r.studies, refine("sphere", opt.reduction_sizes, opt.min_order, [&](int n, double& h) {
        const auto p = build_patch("sphere", GridSpec(default_domain("sphere"), n, n), PatchMode::Analytic,
                                   hyperplane_frame());
        h = p.grid.h();
        const auto res = friedrich_reduction(intrinsic_from_field(restrict_parallel_spinor(p, kGeneric)));
        immersed = immersed && res.immersed;
        std::vector<std::pair<std::string, double>> out;
        for (const auto& x : res.reports) out.emplace_back(x.name, x.max);
        return out;
      }));
  r.checks.push_back(make_check("immersed", immersed ? 1 : 0, 1, false));
  r.finalize();
  return r;
}

SuiteReport morel_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "morel";
  bool immersed = true;
  add(r.studies, refine("clifford-torus", opt.reduction_sizes, opt.min_order, [&](int n, double& h) {
        const auto p = build_patch("clifford-torus", GridSpec(default_domain("clifford-torus"), n, n),
                                   PatchMode::Analytic, sphere_frame());
        h = p.grid.h();
        const auto res = morel_sphere_immersion(intrinsic_from_field(restrict_parallel_spinor(p, kGeneric)));
        immersed = immersed && res.immersed;
        std::vector<std::pair<std::string, double>> out;
        for (const auto& x : res.reports) out.emplace_back(x.name, x.max);
        return out;
      }));
  r.checks.push_back(make_check("immersed", immersed ? 1 : 0, 1, false));
  r.finalize();
  return r;
}

SuiteReport lawson_suite(const SuiteOptions& opt) {
  SuiteReport r;
  r.suite = "lawson";
  double lo = 1e300, hi = -1e300;
  add(r.studies, refine("clifford-torus", opt.reduction_sizes, opt.min_order, [&](int n, double& h) {
        const auto p = build_patch("clifford-torus", GridSpec(default_domain("clifford-torus"), n, n),
                                   PatchMode::Analytic, sphere_frame());
        h = p.grid.h();
        const auto res = lawson_transform(p, restrict_parallel_spinor(p, kGeneric));
        lo = 1e300;
        hi = -1e300;
        for (int j = 1; j < n - 1; ++j)
          for (int i = 1; i < n - 1; ++i) lo = std::min(lo, res.H(i, j)), hi = std::max(hi, res.H(i, j));
        std::vector<std::pair<std::string, double>> out;
        for (const auto& x : res.reports)
          if (x.name != "minimality") out.emplace_back(x.name, x.max);
        return out;
      }));
  r.checks.push_back(make_check("mean_curvature_min", lo, -1.0 - 1e-2, false));
  r.checks.push_back(make_check("mean_curvature_max", hi, -1.0 + 1e-2));
  r.finalize();
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra",     "restriction", "b-recovery", "forms", "xi",
                                              "weierstrass", "two-step",    "friedrich",  "morel", "lawson"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  static const std::map<std::string, SuiteReport (*)(const SuiteOptions&)> table{
      {"algebra", algebra_suite},         {"restriction", restriction_suite}, {"b-recovery", b_recovery_suite},
      {"forms", form_suite},              {"xi", xi_suite},                   {"weierstrass", weierstrass_suite},
      {"two-step", two_step_suite},       {"friedrich", friedrich_suite},     {"morel", morel_suite},
      {"lawson", lawson_suite}};
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport r = it->second(opt);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void to_json(nlohmann::json& j, const Study& s) {
  j = nlohmann::json{{"name", s.name},       {"sizes", s.sizes},   {"h", s.h},         {"errors", s.errors},
                     {"orders", s.orders}, {"C", s.constant}, {"passed", s.passed}};
}

void to_json(nlohmann::json& j, const Check& c) {
  j = nlohmann::json{
      {"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"relation", c.upper ? "<=" : ">="}, {"passed", c.passed}};
}

void to_json(nlohmann::json& j, const SuiteReport& r) {
  j = nlohmann::json{{"suite", r.suite}, {"passed", r.passed}, {"checks", r.checks}, {"studies", r.studies}};
}

void from_json(const nlohmann::json& j, SuiteOptions& o) {
  if (j.contains("sizes")) o.sizes = j.at("sizes").get<std::vector<int>>();
  if (j.contains("reduction_sizes")) o.reduction_sizes = j.at("reduction_sizes").get<std::vector<int>>();
  if (j.contains("min_order")) o.min_order = j.at("min_order").get<double>();
  if (j.contains("cases")) o.cases = j.at("cases").get<int>();
  if (j.contains("seed")) o.seed = j.at("seed").get<unsigned>();
  if (j.contains("algebra_tolerance")) o.algebra_tolerance = j.at("algebra_tolerance").get<double>();
  if (j.contains("fine_limit")) o.fine_limit = j.at("fine_limit").get<double>();
  if (j.contains("geometry_tolerance")) o.geometry_tolerance = j.at("geometry_tolerance").get<double>();
  if (j.contains("point_tolerance")) o.point_tolerance = j.at("point_tolerance").get<double>();
}

}  // namespace spinsurf
