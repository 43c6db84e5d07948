#include <gtest/gtest.h>

#include "spinsurf/expr.hpp"

using namespace spinsurf;

namespace {

std::complex<double> at(const std::string& s, std::complex<double> z) { return Expr::parse(s)(z); }

std::size_t offset_of(const std::string& s) {
  try {
    Expr::parse(s);
  } catch (const ParseError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no error for " << s;
  return 0;
}

}  // namespace

TEST(Expr, Polynomials) {
  EXPECT_LT(std::abs(at("z^2", {1, 1}) - std::complex<double>(0, 2)), 1e-15);
  EXPECT_LT(std::abs(at("1 - z^2 + 3*z", 2.0) - std::complex<double>(3, 0)), 1e-15);
  EXPECT_LT(std::abs(at("z^-1", {0, 2}) - std::complex<double>(0, -0.5)), 1e-15);
}

TEST(Expr, Precedence) {
  EXPECT_DOUBLE_EQ(at("2+3*4", 0).real(), 14.0);
  EXPECT_DOUBLE_EQ(at("-2^2", 0).real(), -4.0);
  EXPECT_DOUBLE_EQ(at("2^3^2", 0).real(), 512.0);
  EXPECT_DOUBLE_EQ(at("(2+3)*4", 0).real(), 20.0);
  EXPECT_DOUBLE_EQ(at("8/2/2", 0).real(), 2.0);
}

TEST(Expr, Functions) {
  EXPECT_LT(std::abs(at("exp(z)*(1-z^2)", 0) - 1.0), 1e-15);
  const std::complex<double> z(0.3, -0.7);
  EXPECT_LT(std::abs(at("sin(z)^2 + cos(z)^2", z) - 1.0), 1e-14);
  EXPECT_LT(std::abs(at("exp(i*z)", z) - std::exp(std::complex<double>(0, 1) * z)), 1e-14);
  EXPECT_LT(std::abs(at("1.5e1 + .5", 0) - 15.5), 1e-15);
}

TEST(Expr, ImaginaryUnit) { EXPECT_LT(std::abs(at("i^2", 0) + 1.0), 1e-15); }

TEST(Expr, PolesAreInfinite) {
  EXPECT_FALSE(std::isfinite(at("1/z", 0).real()));
  EXPECT_FALSE(std::isfinite(at("z^-2", 0).real()));
}

TEST(Expr, ErrorOffsets) {
  EXPECT_EQ(offset_of("z + ?"), 4u);
  EXPECT_EQ(offset_of("tan(z)"), 0u);
  EXPECT_EQ(offset_of("z^z"), 2u);
  EXPECT_EQ(offset_of("z^0.5"), 2u);
  EXPECT_EQ(offset_of("(z+1"), 4u);
  EXPECT_EQ(offset_of("z*"), 2u);
  EXPECT_EQ(offset_of("z \xc3\xa9"), 2u);
  EXPECT_EQ(offset_of("1e+"), 1u);
  EXPECT_EQ(offset_of("z)"), 1u);
}

TEST(Expr, Introspection) {
  const Expr e = Expr::parse("3*z");
  EXPECT_TRUE(e.depends_on_z());
  EXPECT_EQ(e.source(), "3*z");
  EXPECT_FALSE(Expr::parse("exp(1)").depends_on_z());
}
