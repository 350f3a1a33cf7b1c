#include <gtest/gtest.h>

#include <cmath>

#include "logbouss/error.hpp"
#include "logbouss/initial_data.hpp"
#include "logbouss/littlewood_paley.hpp"
#include "logbouss/norms.hpp"

using namespace logbouss;

namespace {

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

}  // namespace

TEST(FilterBank, QMaxFollowsGrid) {
  EXPECT_EQ(DyadicFilterBank(Grid2D(128)).q_max(), 4);
  EXPECT_EQ(DyadicFilterBank(Grid2D(256)).q_max(), 5);
  EXPECT_EQ(DyadicFilterBank(Grid2D(512)).q_max(), 6);
}

TEST(FilterBank, PartitionOfUnityOnResolvedFrequencies) {
  const Grid2D g(128);
  const DyadicFilterBank bank(g);
  const double unit = g.frequency_unit();
  for (int j = 0; j < g.n(); ++j) {
    for (int k = 0; k < g.spectral_cols(); ++k) {
      const double rho = unit * std::hypot(k, g.signed_wavenumber(j));
      if (rho > bank.resolved_radius()) continue;
      const std::size_t idx = static_cast<std::size_t>(j) * g.spectral_cols() + k;
      double sum = 0.0;
      for (int q = -1; q <= bank.q_max(); ++q) sum += bank.table(q)[idx];
      EXPECT_NEAR(sum, 1.0, 1e-12) << rho;
    }
  }
}

TEST(FilterBank, NonAdjacentBlocksAreDisjoint) {
  const Grid2D g(256);
  const DyadicFilterBank bank(g);
  for (int a = -1; a <= bank.q_max(); ++a) {
    for (int b = a + 2; b <= bank.q_max(); ++b) {
      const auto& ta = bank.table(a);
      const auto& tb = bank.table(b);
      for (std::size_t k = 0; k < ta.size(); ++k) ASSERT_EQ(ta[k] * tb[k], 0.0) << a << " " << b;
    }
  }
}

TEST(FilterBank, ProfileIsOneAtUnitRadius) {
  EXPECT_DOUBLE_EQ(DyadicFilterBank::phi(1.0), 1.0);
  EXPECT_DOUBLE_EQ(DyadicFilterBank::chi(0.0), 1.0);
  EXPECT_EQ(DyadicFilterBank::chi(1.0), 0.0);
}

TEST(DyadicBlock, PureModeAtDyadicRadiusIsKept) {
  const Grid2D g(128);
  const DyadicFilterBank bank(g);
  for (int q = 0; q <= bank.q_max(); ++q) {
    const auto f = single_mode(g, 1 << q, 0);
    EXPECT_LE(max_abs_diff(dyadic_block(f, q, bank), f), 1e-13) << q;
  }
}

TEST(DyadicBlock, BlocksSumToField) {
  const Grid2D g(128);
  const DyadicFilterBank bank(g);
  const auto f = random_band_limited(g, 4, bank.resolved_radius());
  SpectralField sum(g);
  for (int q = -1; q <= bank.q_max(); ++q) sum += dyadic_block(f, q, bank);
  EXPECT_LE(max_abs_diff(sum, f), 1e-10);
}

TEST(DyadicBlock, FarModeIsRemoved) {
  const Grid2D g(256);
  const DyadicFilterBank bank(g);
  const auto f = single_mode(g, 32, 0);
  EXPECT_LE(lp_norm(dyadic_block(f, 1, bank), kInfinity), 1e-15);
}

TEST(DyadicBlock, ConstantLivesInLowestBlock) {
  const Grid2D g(64);
  const DyadicFilterBank bank(g);
  const auto c = SpectralField::constant(g, 2.5);
  EXPECT_LE(max_abs_diff(dyadic_block(c, -1, bank), c), 1e-14);
  EXPECT_THROW(dyadic_block(c, bank.q_max() + 1, bank), DomainError);
  EXPECT_THROW(dyadic_block(c, -2, bank), DomainError);
}

TEST(LowPass, DefinitionAndSaturation) {
  const Grid2D g(128);
  const DyadicFilterBank bank(g);
  const auto f = random_band_limited(g, 8, bank.resolved_radius());
  EXPECT_LE(max_abs_diff(low_pass(f, 0, bank), dyadic_block(f, -1, bank)), 1e-14);
  EXPECT_LE(max_abs_diff(low_pass(f, bank.q_max() + 3, bank), f), 1e-10);
}

TEST(LowPass, DerivativeBernsteinConstantIsStable) {
  const Grid2D g(256);
  const DyadicFilterBank bank(g);
  const auto f = random_band_limited(g, 21, bank.resolved_radius());
  const auto d1 = derivative_symbol(1);
  std::vector<double> constants;
  for (int q = 1; q <= bank.q_max(); ++q) {
    const auto s = low_pass(f, q, bank);
    const double c = lp_norm(apply_multiplier(s, d1), kInfinity) / (std::ldexp(1.0, q) * lp_norm(s, kInfinity));
    constants.push_back(c);
    EXPECT_LE(c, 4.0) << q;
  }
  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  EXPECT_LE(*hi / *lo, 4.0);
}

TEST(Besov, ZeroField) {
  const Grid2D g(64);
  const DyadicFilterBank bank(g);
  EXPECT_EQ(besov_norm(SpectralField(g), {1.0, 0.0, 2.0, 1.0}, bank), 0.0);
}

TEST(Besov, SingleModeBlockEvaluation) {
  const Grid2D g(128);
  const DyadicFilterBank bank(g);
  const int q = 3;
  const auto f = single_mode(g, 1 << q, 0);
  const double norm = besov_norm(f, {1.0, 0.0, 2.0, kInfinity}, bank);
  EXPECT_NEAR(norm, std::ldexp(1.0, q) * lp_norm(f, 2.0), 1e-12 * norm);
}

TEST(Besov, SummationExponentMonotone) {
  const Grid2D g(128);
  const DyadicFilterBank bank(g);
  const auto f = random_band_limited(g, 2, 20.0);
  for (double s : {0.0, 0.5, 1.0}) {
    EXPECT_GE(besov_norm(f, {s, 1.0, 2.0, 1.0}, bank), besov_norm(f, {s, 1.0, 2.0, 2.0}, bank));
    EXPECT_GE(besov_norm(f, {s, 1.0, 2.0, 2.0}, bank), besov_norm(f, {s, 1.0, 2.0, kInfinity}, bank));
  }
}

TEST(Besov, LogWeightUsesAbsoluteIndex) {
  // (|q|+1)^{s'} at q = -1 is 2^{s'}.
  const std::vector<double> blocks{1.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(besov_from_blocks(blocks, 0.0, 1.0, 1.0), 2.0);
}
