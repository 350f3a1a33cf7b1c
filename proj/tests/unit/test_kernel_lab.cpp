#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "logbouss/error.hpp"
#include "logbouss/initial_data.hpp"
#include "logbouss/kernel.hpp"
#include "logbouss/norms.hpp"
#include "logbouss/phi.hpp"

using namespace logbouss;
using boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kPi = std::numbers::pi;

cpp_bin_float_50 phi50(const cpp_bin_float_50& r, const PhiParams& p) {
  return pow(r, cpp_bin_float_50(p.beta)) / pow(log(cpp_bin_float_50(p.lambda) + r), cpp_bin_float_50(p.alpha));
}

// Central differences of phi in 50-digit arithmetic, step 1e-9 r.
std::array<double, 3> fd_derivatives(double r, const PhiParams& p) {
  const cpp_bin_float_50 x = r;
  const cpp_bin_float_50 h = x * cpp_bin_float_50("1e-9");
  const auto f = [&](int k) { return phi50(x + k * h, p); };
  const cpp_bin_float_50 d1 = (f(1) - f(-1)) / (2 * h);
  const cpp_bin_float_50 d2 = (f(1) - 2 * f(0) + f(-1)) / (h * h);
  const cpp_bin_float_50 d3 = (f(2) - 2 * f(1) + 2 * f(-1) - f(-2)) / (2 * h * h * h);
  return {static_cast<double>(d1), static_cast<double>(d2), static_cast<double>(d3)};
}

// Fourier pairs of exp(-t|xi|) in R^d.
double poisson(double r, double t, int d) {
  if (d == 1) return t / (kPi * (t * t + r * r));
  if (d == 2) return t / (2.0 * kPi * std::pow(t * t + r * r, 1.5));
  return t / (kPi * kPi * std::pow(t * t + r * r, 2.0));
}

}  // namespace

TEST(PhiDerivatives, PureModulus) {
  for (double lambda : {1.5, 20.0, 1e4}) {
    const PhiJet j = phi_derivatives(3.7, {0.0, 1.0, lambda});
    EXPECT_DOUBLE_EQ(j.value, 3.7);
    EXPECT_DOUBLE_EQ(j.d1, 1.0);
    EXPECT_EQ(j.d2, 0.0);
    EXPECT_EQ(j.d3, 0.0);
  }
}

TEST(PhiDerivatives, IncreasingAtThreshold) {
  const PhiParams p{1.0, 1.0, std::exp(5.0)};
  for (double r : log_spaced(1e-3, 1e6, 200)) EXPECT_GT(phi_derivatives(r, p).d1, 0.0) << r;
}

TEST(PhiDerivatives, DecreasingBelowThreshold) {
  const PhiParams p{5.0, 1.0, 1.1};
  const double L = std::log(11.1);
  const double bracket = 1.1 * L + 10.0 * (L - 5.0);
  EXPECT_LT(bracket, 0.0);
  EXPECT_LT(phi_derivatives(10.0, p).d1, 0.0);
}

TEST(PhiDerivatives, MatchFiniteDifferenceOracle) {
  const std::vector<PhiParams> cases{
      PhiParams::at_threshold(0.0, 0.5), PhiParams::at_threshold(0.5, 0.5), PhiParams::at_threshold(1.0, 0.5),
      PhiParams::at_threshold(0.0, 1.0), PhiParams::at_threshold(0.5, 1.0), PhiParams::at_threshold(1.0, 1.0), {5.0, 1.0, 1.1}, {0.3, 1.7, 4.0}};
  for (const auto& p : cases) {
    for (double r : log_spaced(1e-3, 1e6, 40)) {
      const PhiJet j = phi_derivatives(r, p);
      const auto fd = fd_derivatives(r, p);
      const double closed[3] = {j.d1, j.d2, j.d3};
      const double scale[3] = {j.d1_scale, j.d2_scale, j.d3_scale};
      for (int k = 0; k < 3; ++k) {
        const double natural = std::abs(j.value) / std::pow(r, k + 1);
        const double tol = 1e-6 * std::max(std::abs(fd[k]), 1e-8 * std::max(scale[k], natural));
        EXPECT_LE(std::abs(closed[k] - fd[k]), tol) << p.label() << " r=" << r << " k=" << k + 1;
      }
    }
  }
}

TEST(PhiDerivatives, RejectsNonPositiveRadius) {
  EXPECT_THROW(phi_derivatives(0.0, {}), DomainError);
}

TEST(Askey, ThresholdCasesPass) {
  for (const PhiParams& p : {PhiParams{0.0, 1.0, std::exp(3.0)}, PhiParams{1.0, 1.0, std::exp(5.0)}}) {
    const auto v = askey_check(p, askey_radii());
    EXPECT_TRUE(v.conditions_hold()) << p.label();
    EXPECT_FALSE(v.first_violation().has_value());
    EXPECT_TRUE(v.f3_identity_nonpos.holds);
    EXPECT_TRUE(v.f3_difference_nonpos.holds);
  }
}

TEST(Askey, FirstDerivativeFailsForSmallLambda) {
  const auto v = askey_check({5.0, 1.0, 1.1}, askey_radii());
  EXPECT_FALSE(v.phi1_nonneg.holds);
  ASSERT_TRUE(v.phi1_nonneg.first_violation.has_value());
  EXPECT_LE(*v.phi1_nonneg.first_violation, 10.0);
}

TEST(Askey, GridIsLogSpaced) {
  const auto r = askey_radii();
  ASSERT_EQ(r.size(), 200u);
  EXPECT_NEAR(r.front(), 1e-3, 1e-18);
  EXPECT_NEAR(r.back(), 1e6, 1e-6);
}

TEST(Kernel, PoissonClosedForm) {
  const PhiParams p{0.0, 1.0, 20.0};
  for (int d : {1, 2, 3}) {
    for (double r : {0.0, 0.01, 0.5, 1.0, 2.5, 5.0, 7.3, 10.0}) {
      const double exact = poisson(r, 1.0, d);
      EXPECT_LE(std::abs(kernel_value(r, 1.0, p, d) - exact) / exact, 1e-4) << "d=" << d << " r=" << r;
    }
  }
}

TEST(Kernel, RoutesAgree) {
  for (const PhiParams& p : {PhiParams::at_threshold(1.0, 1.0), PhiParams::at_threshold(0.5, 0.5)}) {
    for (int d : {1, 2, 3}) {
      for (double r : {0.05, 0.7, 3.0}) {
        const double a = kernel_value(r, 1.0, p, d, {}, KernelRoute::real_axis);
        const double b = kernel_value(r, 1.0, p, d, {}, KernelRoute::rotated_contour);
        EXPECT_LE(std::abs(a - b), 1e-8 * std::abs(a) + 1e-12) << p.label() << " d=" << d << " r=" << r;
      }
    }
  }
}

TEST(Kernel, UnitMass) {
  for (const PhiParams& p : {PhiParams::at_threshold(0.0, 1.0), PhiParams::at_threshold(1.0, 0.5)}) {
    for (int d : {1, 3}) EXPECT_NEAR(kernel_mass(1.0, p, d), 1.0, 1e-6) << p.label() << " d=" << d;
  }
}

TEST(Kernel, NonnegativeInThreeDimensions) {
  const auto rep = kernel_eval(1.0, {1.0, 1.0, std::exp(5.0)}, 3, default_kernel_radii());
  EXPECT_GE(rep.min_value, -1e-8);
  EXPECT_NEAR(rep.mass, 1.0, 1e-6);
  EXPECT_TRUE(rep.askey.conditions_hold());
}

TEST(Kernel, RejectsBadArguments) {
  const PhiParams p = PhiParams::at_threshold(0.5, 1.0);
  EXPECT_THROW(kernel_value(1.0, 0.0, p, 1), DomainError);
  EXPECT_THROW(kernel_value(1.0, 1.0, p, 4), DomainError);
  EXPECT_THROW(kernel_value(-1.0, 1.0, p, 1), DomainError);
  const std::vector<double> radii{1.0, 0.5};
  EXPECT_THROW(kernel_eval(1.0, p, 1, radii), DomainError);
}

TEST(SemigroupProbe, IdentityAtTimeZero) {
  const Grid2D g(64);
  const auto f = random_band_limited(g, 17, 15.0);
  const std::vector<double> times{0.0};
  for (double p : {1.0, 2.0, kInfinity}) {
    EXPECT_EQ(semigroup_contraction_probe(PhiParams::at_threshold(1.0, 1.0), f, times, p)[0], lp_norm(f, p));
  }
}

TEST(SemigroupProbe, L2Decays) {
  const Grid2D g(64);
  const auto f = random_band_limited(g, 18, 15.0);
  const auto times = log_spaced(1e-3, 10.0, 25);
  const auto norms = semigroup_contraction_probe({0.7, 1.6, 3.0}, f, times, 2.0);
  for (std::size_t i = 1; i < norms.size(); ++i) EXPECT_LE(norms[i], norms[i - 1]);
}

TEST(SemigroupProbe, SupremumContracts) {
  const Grid2D g(128);
  const auto f = random_band_limited(g, 19, 30.0);
  const auto times = log_spaced(1e-3, 5.0, 20);
  const double f_inf = lp_norm(f, kInfinity);
  for (double v : semigroup_contraction_probe({1.0, 1.0, std::exp(5.0)}, f, times, kInfinity)) {
    EXPECT_LE(v, f_inf + 1e-6);
  }
}
