#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "logbouss/error.hpp"
#include "logbouss/initial_data.hpp"
#include "logbouss/multiplier.hpp"
#include "logbouss/norms.hpp"

using namespace logbouss;
using boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kPi = std::numbers::pi;

// 50-digit m(rho) = rho^beta / log^alpha(lambda + rho).
double symbol_oracle(double rho, double alpha, double beta, cpp_bin_float_50 lambda) {
  const cpp_bin_float_50 r = rho;
  const cpp_bin_float_50 v = pow(r, beta) / pow(log(lambda + r), alpha);
  return static_cast<double>(v);
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

}  // namespace

TEST(LogSymbol, AlphaZeroIsModulus) {
  const auto m = log_dissipation_symbol(0.0, 1.0, std::exp(4.0));
  for (double rho : {0.0, 0.5, 1.0, 7.0, 1024.0}) EXPECT_DOUBLE_EQ(m.radial_value(rho), rho);
}

TEST(LogSymbol, VanishesAtOrigin) {
  EXPECT_EQ(log_dissipation_symbol(1.0, 1.0, std::exp(4.0)).radial_value(0.0), 0.0);
}

TEST(LogSymbol, MatchesExtendedPrecision) {
  const cpp_bin_float_50 lambda = exp(cpp_bin_float_50(4));
  const auto m = log_dissipation_symbol(1.0, 1.0, static_cast<double>(lambda));
  for (double rho : {1.0, 1024.0}) {
    const double ref = symbol_oracle(rho, 1.0, 1.0, lambda);
    EXPECT_LE(std::abs(m.radial_value(rho) - ref) / ref, 1e-14) << rho;
  }
  const auto m2 = log_dissipation_symbol(0.5, 0.5, 403.0);
  for (double rho : {0.01, 3.0, 1e5}) {
    const double ref = symbol_oracle(rho, 0.5, 0.5, cpp_bin_float_50(403));
    EXPECT_LE(std::abs(m2.radial_value(rho) - ref) / ref, 1e-14) << rho;
  }
}

TEST(LogSymbol, RejectsBadParameters) {
  EXPECT_THROW(log_dissipation_symbol(-1.0, 1.0, 3.0), DomainError);
  EXPECT_THROW(log_dissipation_symbol(0.0, 2.5, 3.0), DomainError);
  EXPECT_THROW(log_dissipation_symbol(0.0, 1.0, 1.0), DomainError);
}

TEST(RieszLog, ClassicalRieszOnCosine) {
  const Grid2D g(32);
  const auto f = single_mode(g, 1, 0);
  const auto out = apply_multiplier(f, riesz_log_symbol(0.0, std::exp(4.0)));
  // i xi1/|xi| on cos(x1) gives -sin(x1).
  const auto expect = SpectralField::sample(g, [](double x, double) { return -std::sin(x); });
  EXPECT_LE(max_abs_diff(out, expect), 1e-13);
}

TEST(RieszLog, ZeroOnVerticalFrequencies) {
  const auto r = riesz_log_symbol(1.0, std::exp(4.0));
  for (double k : {1.0, 3.0, 40.0}) EXPECT_EQ(std::abs(r(0.0, k)), 0.0);
}

TEST(RieszLog, CoefficientMatchesExtendedPrecision) {
  const cpp_bin_float_50 lambda = exp(cpp_bin_float_50(4));
  const auto r = riesz_log_symbol(1.0, static_cast<double>(lambda));
  const double ref = static_cast<double>(log(lambda + 1));
  const Complex v = r(1.0, 0.0);
  EXPECT_EQ(v.real(), 0.0);
  EXPECT_LE(std::abs(v.imag() - ref) / ref, 1e-14);
}

TEST(ApplyMultiplier, IdentityIsExact) {
  const Grid2D g(64);
  const auto f = random_band_limited(g, 3, 12.0);
  EXPECT_LE(max_abs_diff(apply_multiplier(f, MultiplierSymbol::identity()), f), 1e-12);
}

TEST(ApplyMultiplier, RadialEigenfunction) {
  const Grid2D g(64);
  const auto m = log_dissipation_symbol(1.0, 1.0, std::exp(5.0));
  for (int q : {1, 4, 9}) {
    const auto f = single_mode(g, q, 0);
    const auto out = apply_multiplier(f, m);
    const double mq = symbol_oracle(q, 1.0, 1.0, exp(cpp_bin_float_50(5)));
    EXPECT_LE(max_abs_diff(out, f * mq), 1e-12 * mq) << q;
  }
}

TEST(ApplyMultiplier, DissipationTimesLogRieszIsDerivative) {
  const Grid2D g(64);
  const auto f = random_band_limited(g, 11, 15.0);
  for (double alpha : {0.0, 0.5, 1.0}) {
    const double lambda = std::exp(3.0 + 2.0 * alpha);
    const auto out = apply_multiplier(apply_multiplier(f, riesz_log_symbol(alpha, lambda)),
                                      log_dissipation_symbol(alpha, 1.0, lambda));
    const auto d1 = apply_multiplier(f, derivative_symbol(1));
    EXPECT_LE(max_abs_diff(out, d1), 1e-10 * lp_norm(d1, kInfinity)) << alpha;
  }
}

TEST(BiotSavart, SineVorticity) {
  const Grid2D g(32);
  const auto w = SpectralField::sample(g, [](double x, double) { return std::sin(x); });
  const auto v = biot_savart(w);
  EXPECT_LE(lp_norm(v.v1, kInfinity), 1e-14);
  const auto expect = SpectralField::sample(g, [](double x, double) { return -std::cos(x); });
  EXPECT_LE(max_abs_diff(v.v2, expect), 1e-14);
}

TEST(BiotSavart, ZeroInZeroOut) {
  const Grid2D g(32);
  const auto v = biot_savart(SpectralField(g));
  EXPECT_EQ(lp_norm(v.v1, kInfinity), 0.0);
  EXPECT_EQ(lp_norm(v.v2, kInfinity), 0.0);
}

TEST(BiotSavart, DivergenceFreeAndCurlRecoversVorticity) {
  const Grid2D g(128);
  const auto w = random_band_limited(g, 5, 30.0);
  const auto v = biot_savart(w);
  EXPECT_LE(lp_norm(divergence(v), kInfinity), 1e-12);
  EXPECT_LE(max_abs_diff(curl(v), w), 1e-12);
}

TEST(BiotSavart, RejectsNonzeroMean) {
  const Grid2D g(16);
  EXPECT_THROW(biot_savart(SpectralField::constant(g, 1.0)), DomainError);
}

TEST(LpNorm, ConstantField) {
  const Grid2D g(32);
  EXPECT_NEAR(lp_norm(SpectralField::constant(g, 1.0), 2.0), 2.0 * kPi, 1e-13);
  EXPECT_NEAR(lp_norm(SpectralField::constant(g, 1.0), 1.0), 4.0 * kPi * kPi, 1e-12);
}

TEST(LpNorm, SineSupremum) {
  const Grid2D g(256);
  const auto f = SpectralField::sample(g, [](double x, double) { return std::sin(x); });
  EXPECT_NEAR(lp_norm(f, kInfinity), 1.0, 1e-3);
  EXPECT_NEAR(sup_norm_refined(f), 1.0, 1e-13);
}

TEST(LpNorm, RefinedSupremumBetweenGridPoints) {
  const Grid2D g(16);
  // Peak at x = 0.1, away from every grid point.
  const auto f = SpectralField::sample(g, [](double x, double y) { return std::cos(x - 0.1) * std::cos(2.0 * (y - 0.3)); });
  EXPECT_LT(lp_norm(f, kInfinity), 1.0 - 1e-3);
  EXPECT_NEAR(sup_norm_refined(f), 1.0, 1e-12);
}

TEST(LpNorm, ParsevalAgreement) {
  const Grid2D g(64);
  const auto f = random_band_limited(g, 9, 20.0);
  const double a = lp_norm(f, 2.0);
  EXPECT_LE(std::abs(a - parseval_l2(f)) / a, 1e-10);
}

TEST(LpNorm, RejectsExponentBelowOne) {
  const Grid2D g(16);
  EXPECT_THROW(lp_norm(SpectralField(g), 0.5), DomainError);
}
