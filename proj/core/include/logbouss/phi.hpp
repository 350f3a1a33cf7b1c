#pragma once

#include <optional>
#include <span>
#include <string>

#include "logbouss/multiplier.hpp"

namespace logbouss {

/// Parameters of phi(r) = r^beta / log^alpha(lambda + r).
struct PhiParams {
  double alpha = 0.0;
  double beta = 1.0;
  double lambda = 2.0;

  /// Throws DomainError unless alpha >= 0, beta in (0, 2], lambda > 1.
  /// Positivity is only claimed for beta <= 1; larger beta is accepted so
  /// the region can be scanned.
  void validate() const;

  /// exp((3 + 2 alpha) / beta), the sufficient lower bound on lambda.
  double threshold() const;
  /// beta <= 1 and lambda >= threshold().
  bool above_threshold() const;

  MultiplierSymbol symbol() const { return log_dissipation_symbol(alpha, beta, lambda); }
  LogParams log_params() const { return {alpha, beta, lambda}; }

  std::string label() const;

  /// Parameters sitting exactly on the threshold for (alpha, beta).
  static PhiParams at_threshold(double alpha, double beta);
};

/// phi and its first three derivatives at one radius.
struct PhiJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  /// Sums of absolute values of the terms entering d1, d2, d3; used as the
  /// rounding scale when testing signs.
  double d1_scale = 0.0;
  double d2_scale = 0.0;
  double d3_scale = 0.0;
};

/// Closed-form derivatives. d3 is assembled from four terms:
///   I1 = a(a+1) r^{b-1} L^{-a-3} (lambda+r)^{-3} [3 lambda b L + r (3 b L - (2+a))]
///   I2 = a r^{b} L^{-a-2} (lambda+r)^{-3} [-3(1+a) + (-3b^2+6b-2) L]
///   I3 = a r^{b-2} L^{-a-1} (lambda+r)^{-3} [lambda b (9-6b) r + 3 lambda^2 b (1-b)]
///   I4 = (2-b)(1-b) b r^{b-3} L^{-a}
/// with L = log(lambda + r). Throws DomainError for r <= 0.
PhiJet phi_derivatives(double r, const PhiParams& params);

/// F'''(r) for F = exp(-t phi) through
/// F''' = [-t phi''' + 3 t^2 phi' phi'' - t^3 phi'^3] F.
double kernel_profile_third_derivative(double r, double t, const PhiParams& params);

/// Outcome of one sign condition over a radial grid.
struct SignCondition {
  bool holds = true;
  std::optional<double> first_violation;
};

/// Askey sufficient conditions on a radial grid.
struct AskeyVerdict {
  SignCondition phi1_nonneg;
  SignCondition phi2_nonpos;
  SignCondition phi3_nonneg;
  /// F''' <= 0 through the closed-form identity.
  SignCondition f3_identity_nonpos;
  /// F''' <= 0 through an independent extended-precision finite difference.
  SignCondition f3_difference_nonpos;

  bool conditions_hold() const {
    return phi1_nonneg.holds && phi2_nonpos.holds && phi3_nonneg.holds;
  }
  /// Smallest radius at which any of the three phi conditions fails.
  std::optional<double> first_violation() const;
};

/// Checks phi' >= 0, phi'' <= 0, phi''' >= 0 on the grid and, independently,
/// F''' <= 0 for F = exp(-t phi). Throws DomainError for an empty grid or a
/// non-positive radius.
AskeyVerdict askey_check(const PhiParams& params, std::span<const double> radii, double t = 1.0);

/// count log-spaced radii on [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace logbouss
