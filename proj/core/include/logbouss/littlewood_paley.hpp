#pragma once

#include <vector>

#include "logbouss/spectral_field.hpp"

namespace logbouss {

/// Smooth dyadic partition of unity on the frequency grid of one Grid2D.
///
/// chi is 1 on |xi| <= 1/2 and 0 on |xi| >= 1, with a C-infinity transition
/// built from exp(-1/x); phi(xi) = chi(xi/2) - chi(xi) is supported in
/// 1/2 <= |xi| <= 2 and equals 1 at |xi| = 1. Block q >= 0 is phi(2^-q xi),
/// block -1 is chi(xi). Frequencies are physical (wavenumber * 2pi/period).
class DyadicFilterBank {
 public:
  /// Throws DomainError when the grid resolves fewer than three blocks.
  explicit DyadicFilterBank(const Grid2D& grid);

  static double chi(double rho);
  static double phi(double rho);

  /// Weight of block q (q >= -1) at frequency magnitude rho.
  static double block_weight(int q, double rho);
  /// Weight of the low-pass S_q = sum_{j=-1}^{q-1} Delta_j, which telescopes
  /// to chi(2^-q rho) for q >= 0 and vanishes for q = -1.
  static double low_pass_weight(int q, double rho);

  const Grid2D& grid() const { return grid_; }
  /// floor(log2(n * dealias / 2 * 2pi/period)) - 1.
  int q_max() const { return q_max_; }
  /// Frequencies up to 2^q_max are covered exactly by blocks -1..q_max.
  double resolved_radius() const;
  int block_count() const { return q_max_ + 2; }

  /// Precomputed weights of block q on the half-complex layout.
  const std::vector<double>& table(int q) const;

 private:
  Grid2D grid_;
  int q_max_;
  std::vector<std::vector<double>> tables_;
};

/// Delta_q f. Throws DomainError for q outside [-1, q_max].
SpectralField dyadic_block(const SpectralField& f, int q, const DyadicFilterBank& bank);

/// S_q f for q >= -1.
SpectralField low_pass(const SpectralField& f, int q, const DyadicFilterBank& bank);

/// Generalized Besov index (s, s', p, r) of B^{s,s'}_{p,r}.
struct BesovSpec {
  double s = 0.0;
  double s_log = 0.0;
  double p = 2.0;
  double r = 2.0;

  /// Throws DomainError unless p, r lie in [1, inf] and s, s' are finite.
  void validate() const;
};

/// ||Delta_q f||_{L^p} for q = -1..q_max (index q + 1).
std::vector<double> block_lp_norms(const SpectralField& f, double p, const DyadicFilterBank& bank);

/// l^r aggregate of 2^{qs} (|q|+1)^{s'} block_norms[q+1].
double besov_from_blocks(const std::vector<double>& block_norms, double s, double s_log, double r);

double besov_norm(const SpectralField& f, const BesovSpec& spec, const DyadicFilterBank& bank);

}  // namespace logbouss
