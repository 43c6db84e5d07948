#include "spinsurf_c.h"

#include <cstring>

#include "spinsurf/app.hpp"
#include "spinsurf/io.hpp"
#include "spinsurf/weierstrass.hpp"

struct spinsurf_patch {
  spinsurf::FramedPatch patch;
};
struct spinsurf_field {
  spinsurf::SpinorField field;
};
struct spinsurf_immersion {
  spinsurf::Grid<spinsurf::Vec4> F;
};

namespace {

using namespace spinsurf;

thread_local std::string g_last_error;

template <class Fn>
int guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return SPINSURF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPINSURF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SPINSURF_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Domain domain_or(const double* d, Domain fallback) {
  if (!d) return fallback;
  require(d[0] < d[1] && d[2] < d[3], "empty domain");
  return {d[0], d[1], d[2], d[3]};
}

SpinorPair spinor_from(const double* p) {
  return {Quaternion(p[0], p[1], p[2], p[3]), Quaternion(p[4], p[5], p[6], p[7])};
}

void copy_positions(const Grid<Vec4>& x, double* out) {
  require(out, "null output buffer");
  std::size_t k = 0;
  for (const auto& q : x)
    for (int c = 0; c < 4; ++c) out[k++] = q[c];
}

std::array<int, 3> axes_or(const int* axes) {
  if (!axes) return {0, 1, 2};
  return {axes[0], axes[1], axes[2]};
}

double max_of(const std::vector<ResidualReport>& rs) {
  double m = 0.0;
  for (const auto& r : rs) m = std::max(m, r.max);
  return m;
}

}  // namespace

extern "C" {

const char* spinsurf_last_error(void) { return g_last_error.c_str(); }

void spinsurf_string_free(char* s) { delete[] s; }

int spinsurf_run(const char* config_json, char** report_json, int* exit_code) {
  return guarded([&] {
    require(config_json && report_json && exit_code, "null argument");
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
    const RunOutcome o = run(cfg);
    *exit_code = o.exit_code;
    *report_json = dup_string(o.report.dump(2));
  });
}

int spinsurf_suite_count(void) { return static_cast<int>(suite_names().size()); }

const char* spinsurf_suite_name(int index) {
  const auto& names = suite_names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  return names[index].c_str();
}

int spinsurf_run_suite(const char* name, const char* options_json, char** report_json, int* passed) {
  return guarded([&] {
    require(name && report_json, "null argument");
    SuiteOptions opt;
    if (options_json) {
      try {
        opt = nlohmann::json::parse(options_json).get<SuiteOptions>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad suite options: ") + e.what());
      }
    }
    const SuiteReport r = run_suite(name, opt);
    if (passed) *passed = r.passed ? 1 : 0;
    *report_json = dup_string(nlohmann::json(r).dump(2));
  });
}

int spinsurf_patch_builtin(const char* name, const double* domain, int nu, int nv, spinsurf_patch** out) {
  return guarded([&] {
    require(name && out, "null argument");
    const GridSpec g(domain_or(domain, default_domain(name)), nu, nv);
    *out = new spinsurf_patch{build_patch(std::string(name), g, PatchMode::Analytic)};
  });
}

int spinsurf_patch_weierstrass(const char* f, const char* g, const double* domain, int nu, int nv,
                               spinsurf_patch** out) {
  return guarded([&] {
    require(f && g && out, "null argument");
    const ComplexDomain d{domain_or(domain, {-1.0, 1.0, -1.0, 1.0}), nu, nv, {0.0, 0.0}};
    const auto rec = classical_weierstrass_r3(std::string(f), std::string(g), d);
    *out = new spinsurf_patch{patch_from_samples(rec.F, {}, "weierstrass-r3")};
  });
}

int spinsurf_patch_minimal_r4(const char* const* psi, const double* domain, int nu, int nv, spinsurf_patch** out) {
  return guarded([&] {
    require(psi && out, "null argument");
    std::array<std::string, 4> s;
    for (int k = 0; k < 4; ++k) {
      require(psi[k], "null psi component");
      s[k] = psi[k];
    }
    const ComplexDomain d{domain_or(domain, {-1.0, 1.0, -1.0, 1.0}), nu, nv, {0.0, 0.0}};
    *out = new spinsurf_patch{minimal_r4_from_holomorphic(s, d).patch};
  });
}

void spinsurf_patch_free(spinsurf_patch* p) { delete p; }

int spinsurf_patch_size(const spinsurf_patch* p, int* nu, int* nv) {
  return guarded([&] {
    require(p && nu && nv, "null argument");
    *nu = p->patch.grid.nu;
    *nv = p->patch.grid.nv;
  });
}

int spinsurf_patch_positions(const spinsurf_patch* p, double* out) {
  return guarded([&] {
    require(p, "null patch");
    copy_positions(p->patch.positions(), out);
  });
}

int spinsurf_field_restrict(const spinsurf_patch* p, const double* phi0, spinsurf_field** out) {
  return guarded([&] {
    require(p && phi0 && out, "null argument");
    *out = new spinsurf_field{restrict_parallel_spinor(p->patch, spinor_from(phi0))};
  });
}

void spinsurf_field_free(spinsurf_field* f) { delete f; }

int spinsurf_field_values(const spinsurf_field* f, double* out) {
  return guarded([&] {
    require(f && out, "null argument");
    std::size_t k = 0;
    for (const auto& s : f->field.values) {
      for (int c = 0; c < 4; ++c) out[k++] = s.plus[c];
      for (int c = 0; c < 4; ++c) out[k++] = s.minus[c];
    }
  });
}

int spinsurf_field_residual(const spinsurf_field* f, const char* name, double* max) {
  return guarded([&] {
    require(f && name && max, "null argument");
    const std::string n = name;
    if (n == "dirac") *max = dirac_residual(f->field).max;
    else if (n == "gauss_formula") *max = max_of(gauss_formula_residual(f->field));
    else if (n == "norm_condition") *max = max_of(norm_condition_residual(f->field));
    else throw Error(ErrorCode::InvalidArgument, "unknown residual '" + n + "'");
  });
}

int spinsurf_immersion_from_field(const spinsurf_field* f, spinsurf_immersion** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = new spinsurf_immersion{integrate_form(xi_form(f->field)).F};
  });
}

int spinsurf_immersion_two_step(const spinsurf_patch* p, const double* phi0, spinsurf_immersion** out) {
  return guarded([&] {
    require(p && phi0 && out, "null argument");
    *out = new spinsurf_immersion{two_step_integration(p->patch.structure, spinor_from(phi0)).immersion.F};
  });
}

void spinsurf_immersion_free(spinsurf_immersion* m) { delete m; }

int spinsurf_immersion_positions(const spinsurf_immersion* m, double* out) {
  return guarded([&] {
    require(m, "null immersion");
    copy_positions(m->F, out);
  });
}

int spinsurf_immersion_alignment_error(const spinsurf_immersion* m, const spinsurf_patch* p, double* max_error) {
  return guarded([&] {
    require(m && p && max_error, "null argument");
    *max_error = align_rigid(m->F, p->patch.positions()).max_error;
  });
}

int spinsurf_patch_write(const spinsurf_patch* p, const char* path, const int* axes) {
  return guarded([&] {
    require(p && path, "null argument");
    write_mesh(path, p->patch.positions(), axes_or(axes));
  });
}

int spinsurf_immersion_write(const spinsurf_immersion* m, const char* path, const int* axes) {
  return guarded([&] {
    require(m && path, "null argument");
    write_mesh(path, m->F, axes_or(axes));
  });
}

}  // extern "C"
