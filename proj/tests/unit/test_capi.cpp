#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "spinsurf_c.h"

namespace {

const double kPhi0[8] = {0.8, 0.3, -0.5, 0.2, 0.6, 0.0, 0.8, 0.0};

double unit_phi(int k) {
  double n2 = 0.0;
  for (int c = 0; c < 4; ++c) n2 += kPhi0[c] * kPhi0[c];
  return k < 4 ? kPhi0[k] / std::sqrt(n2) : kPhi0[k];
}

nlohmann::json run(const nlohmann::json& cfg, int& exit_code) {
  char* out = nullptr;
  EXPECT_EQ(spinsurf_run(cfg.dump().c_str(), &out, &exit_code), SPINSURF_OK) << spinsurf_last_error();
  auto j = nlohmann::json::parse(out);
  spinsurf_string_free(out);
  return j;
}

bool has_entry(const nlohmann::json& rep, const std::string& name) {
  for (const auto& r : rep["residuals"])
    if (r["name"] == name) return true;
  return false;
}

}  // namespace

TEST(CApi, VerifyCliffordTorus) {
  int code = -1;
  const auto rep = run({{"command", "verify"}, {"surface", "clifford-torus"}, {"res", {64, 64}}}, code);
  EXPECT_EQ(code, 0);
  EXPECT_EQ(rep["schema"], 1);
  EXPECT_TRUE(rep["passed"].get<bool>());
  EXPECT_TRUE(has_entry(rep, "dirac"));
}

TEST(CApi, ReconstructCatenoid) {
  int code = -1;
  const auto rep = run({{"command", "reconstruct"}, {"surface", "catenoid"}, {"res", {32, 32}}}, code);
  EXPECT_EQ(code, 0);
  EXPECT_TRUE(has_entry(rep, "two_step_alignment"));
  EXPECT_TRUE(has_entry(rep, "from_spinor_alignment"));
}

TEST(CApi, ValidationFailures) {
  int code = -1;
  auto rep = run({{"command", "verify"}}, code);
  EXPECT_EQ(code, 1);
  EXPECT_TRUE(rep.contains("error"));
  rep = run({{"command", "verify"}, {"surface", "catenoid"}, {"res", {4, 4}}}, code);
  EXPECT_EQ(code, 1);
  rep = run({{"command", "generate"}, {"f", "1"}}, code);
  EXPECT_EQ(code, 1);
  rep = run({{"command", "generate"}, {"f", "1+"}, {"g", "z"}}, code);
  EXPECT_EQ(code, 1);
  rep = run({{"command", "reduce"}, {"surface", "catenoid"}, {"reduction", "lawson"}}, code);
  EXPECT_EQ(code, 1);
  rep = run({{"command", "frobnicate"}, {"surface", "catenoid"}}, code);
  EXPECT_EQ(code, 1);
}

TEST(CApi, ResidualFailureExitCode) {
  int code = -1;
  run({{"command", "verify"}, {"surface", "catenoid"}, {"res", {16, 16}}, {"tol", {{"c", 1e-9}}}}, code);
  EXPECT_EQ(code, 2);
}

TEST(CApi, ReportWrittenEvenOnFailure) {
  const std::string path = ::testing::TempDir() + "capi_fail_report.json";
  std::remove(path.c_str());
  int code = -1;
  run({{"command", "verify"}, {"surface", "nope"}, {"report", path}}, code);
  EXPECT_EQ(code, 1);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["exit_code"], 1);
}

TEST(CApi, UnwritableOutputIsIoError) {
  int code = -1;
  run({{"command", "generate"}, {"surface", "catenoid"}, {"out", "/nonexistent-dir/x.csv"}}, code);
  EXPECT_EQ(code, 3);
}

TEST(CApi, ReportsAreDeterministic) {
  int c1 = -1, c2 = -1;
  const nlohmann::json cfg{{"command", "verify"}, {"surface", "enneper"}, {"res", {24, 24}}};
  auto a = run(cfg, c1);
  auto b = run(cfg, c2);
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(CApi, MalformedJson) {
  char* out = nullptr;
  int code = 0;
  EXPECT_EQ(spinsurf_run("{not json", &out, &code), SPINSURF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(out, nullptr);
  EXPECT_STRNE(spinsurf_last_error(), "");
}

TEST(CApi, PatchFieldImmersion) {
  spinsurf_patch* p = nullptr;
  ASSERT_EQ(spinsurf_patch_builtin("catenoid", nullptr, 33, 33, &p), SPINSURF_OK) << spinsurf_last_error();
  int nu = 0, nv = 0;
  ASSERT_EQ(spinsurf_patch_size(p, &nu, &nv), SPINSURF_OK);
  EXPECT_EQ(nu, 33);
  EXPECT_EQ(nv, 33);
  std::vector<double> x(nu * nv * 4);
  ASSERT_EQ(spinsurf_patch_positions(p, x.data()), SPINSURF_OK);

  double phi[8];
  for (int k = 0; k < 8; ++k) phi[k] = unit_phi(k);
  spinsurf_field* f = nullptr;
  ASSERT_EQ(spinsurf_field_restrict(p, phi, &f), SPINSURF_OK) << spinsurf_last_error();
  std::vector<double> vals(nu * nv * 8);
  ASSERT_EQ(spinsurf_field_values(f, vals.data()), SPINSURF_OK);
  for (int n = 0; n < nu * nv; ++n) {
    double np = 0.0;
    for (int c = 0; c < 4; ++c) np += vals[8 * n + c] * vals[8 * n + c];
    EXPECT_NEAR(np, 1.0, 1e-12);
  }
  double r = 1.0;
  ASSERT_EQ(spinsurf_field_residual(f, "dirac", &r), SPINSURF_OK);
  EXPECT_LT(r, 1e-2);
  ASSERT_EQ(spinsurf_field_residual(f, "norm_condition", &r), SPINSURF_OK);
  EXPECT_LT(r, 1e-10);
  EXPECT_EQ(spinsurf_field_residual(f, "nope", &r), SPINSURF_ERR_INVALID_ARGUMENT);

  spinsurf_immersion* a = nullptr;
  spinsurf_immersion* b = nullptr;
  ASSERT_EQ(spinsurf_immersion_from_field(f, &a), SPINSURF_OK) << spinsurf_last_error();
  ASSERT_EQ(spinsurf_immersion_two_step(p, phi, &b), SPINSURF_OK) << spinsurf_last_error();
  double e = 1.0;
  ASSERT_EQ(spinsurf_immersion_alignment_error(a, p, &e), SPINSURF_OK);
  EXPECT_LT(e, 2e-3);
  ASSERT_EQ(spinsurf_immersion_alignment_error(b, p, &e), SPINSURF_OK);
  EXPECT_LT(e, 2e-3);

  spinsurf_immersion_free(a);
  spinsurf_immersion_free(b);
  spinsurf_field_free(f);
  spinsurf_patch_free(p);
}

TEST(CApi, WeierstrassEnneperNode) {
  spinsurf_patch* p = nullptr;
  const double dom[4] = {-1.0, 1.0, -1.0, 1.0};
  ASSERT_EQ(spinsurf_patch_weierstrass("1", "z", dom, 9, 9, &p), SPINSURF_OK) << spinsurf_last_error();
  std::vector<double> x(9 * 9 * 4);
  ASSERT_EQ(spinsurf_patch_positions(p, x.data()), SPINSURF_OK);
  const double* q = &x[4 * (4 * 9 + 8)];
  EXPECT_NEAR(q[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(q[1], 0.0, 1e-12);
  EXPECT_NEAR(q[2], 1.0, 1e-12);
  EXPECT_NEAR(q[3], 0.0, 1e-12);
  spinsurf_patch_free(p);
}

TEST(CApi, MinimalR4Patch) {
  spinsurf_patch* p = nullptr;
  const char* psi[4] = {"1", "-i", "2*z", "-2*i*z"};
  ASSERT_EQ(spinsurf_patch_minimal_r4(psi, nullptr, 17, 17, &p), SPINSURF_OK) << spinsurf_last_error();
  spinsurf_patch_free(p);
  const char* flat[4] = {"1", "1", "0", "0"};
  EXPECT_EQ(spinsurf_patch_minimal_r4(flat, nullptr, 17, 17, &p), SPINSURF_ERR_DEGENERATE_PARAMETRIZATION);
}

TEST(CApi, ErrorCodes) {
  spinsurf_patch* p = nullptr;
  EXPECT_EQ(spinsurf_patch_weierstrass("1+", "z", nullptr, 9, 9, &p), SPINSURF_ERR_PARSE);
  EXPECT_NE(std::string(spinsurf_last_error()).find("byte 2"), std::string::npos);
  EXPECT_NE(spinsurf_patch_builtin("no-such-surface", nullptr, 9, 9, &p), SPINSURF_OK);
  EXPECT_EQ(spinsurf_patch_size(nullptr, nullptr, nullptr), SPINSURF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(spinsurf_patch_builtin("catenoid", nullptr, 9, 9, &p), SPINSURF_OK);
  EXPECT_STREQ(spinsurf_last_error(), "");
  spinsurf_patch_free(p);
}

TEST(CApi, LastErrorIsPerThread) {
  spinsurf_patch* p = nullptr;
  EXPECT_NE(spinsurf_patch_builtin("no-such-surface", nullptr, 9, 9, &p), SPINSURF_OK);
  std::string other = "unset";
  std::thread t([&] { other = spinsurf_last_error(); });
  t.join();
  EXPECT_EQ(other, "");
  EXPECT_STRNE(spinsurf_last_error(), "");
}

TEST(CApi, WriteCsvAndObj) {
  spinsurf_patch* p = nullptr;
  ASSERT_EQ(spinsurf_patch_builtin("clifford-torus", nullptr, 10, 12, &p), SPINSURF_OK);
  const std::string csv = ::testing::TempDir() + "capi_torus.csv";
  const std::string obj = ::testing::TempDir() + "capi_torus.obj";
  ASSERT_EQ(spinsurf_patch_write(p, csv.c_str(), nullptr), SPINSURF_OK) << spinsurf_last_error();
  const int axes[3] = {1, 2, 3};
  ASSERT_EQ(spinsurf_patch_write(p, obj.c_str(), axes), SPINSURF_OK) << spinsurf_last_error();
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "u,v,x1,x2,x3,x4");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 120);
  std::ifstream o(obj);
  int v = 0, f = 0;
  while (std::getline(o, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  EXPECT_EQ(v, 120);
  EXPECT_EQ(f, 9 * 11);
  EXPECT_EQ(spinsurf_patch_write(p, "/nonexistent-dir/x.csv", nullptr), SPINSURF_ERR_IO);
  EXPECT_EQ(spinsurf_patch_write(p, (::testing::TempDir() + "x.ply").c_str(), nullptr),
            SPINSURF_ERR_INVALID_ARGUMENT);
  spinsurf_patch_free(p);
}

TEST(CApi, Suites) {
  EXPECT_EQ(spinsurf_suite_count(), 10);
  EXPECT_STREQ(spinsurf_suite_name(0), "algebra");
  EXPECT_EQ(spinsurf_suite_name(10), nullptr);
  char* out = nullptr;
  int passed = 0;
  ASSERT_EQ(spinsurf_run_suite("algebra", R"({"cases": 200})", &out, &passed), SPINSURF_OK);
  EXPECT_EQ(passed, 1);
  const auto j = nlohmann::json::parse(out);
  spinsurf_string_free(out);
  EXPECT_EQ(j["suite"], "algebra");
  EXPECT_FALSE(j.contains("seconds"));
  EXPECT_EQ(spinsurf_run_suite("nope", nullptr, &out, &passed), SPINSURF_ERR_INVALID_ARGUMENT);
}
