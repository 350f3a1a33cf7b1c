#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "logbouss/littlewood_paley.hpp"
#include "logbouss/norms.hpp"
#include "logbouss/phi.hpp"

namespace logbouss {

/// One evaluated instance of an inequality.
struct InequalityCase {
  std::string case_id;
  int n = 0;
  int q = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// Both sides of one estimate over a set of cases, possibly on several
/// grids. The empirical constant is the largest ratio.
struct InequalityReport {
  std::string name;
  std::string parameters;
  std::vector<InequalityCase> cases;
  double ceiling = 1e3;
  double max_ratio = 0.0;
  /// Relative change of the per-grid maximum ratio between the coarsest and
  /// finest grid; 0 with a single grid.
  double drift = 0.0;
  double drift_tolerance = 0.25;
  /// Largest relative gap between two evaluations that must agree (the
  /// Parseval path of the p = 2 Bernstein check); 0 when not applicable.
  double agreement_gap = 0.0;
  double agreement_tolerance = 1e-8;
  bool pass = true;
  std::string failure;

  /// Recomputes max_ratio, drift and pass from the cases.
  void finalize();
  double max_ratio_on(int n) const;
};

/// A test field that can be sampled on any grid.
struct TestField {
  std::string name;
  std::function<SpectralField(const Grid2D&)> make;
};

/// Pure modes at |xi| = 2^q for q = 0..q_top, random band-limited fields
/// (radius 2^q_top), a Gaussian bump, the Taylor-Green vorticity and a shear
/// layer.
std::vector<TestField> standard_corpus(std::uint64_t seed, int q_top, int random_fields = 2);

/// Blocks carrying less than this fraction of the field's L2 norm are
/// skipped: both sides are then at roundoff level.
inline constexpr double kNegligibleBlock = 1e-8;

/// 2^{q beta}(q+1)^{-alpha} ||Delta_q f||_p^p against
/// int (L Delta_q f) |Delta_q f|^{p-2} Delta_q f. At p = 2 the Parseval
/// evaluation of both sides is compared with the quadrature one.
InequalityReport check_generalized_bernstein(double p, const PhiParams& params,
                                             const std::vector<SpectralField>& fields,
                                             const std::vector<std::string>& names, int q_lo,
                                             int q_hi, const DyadicFilterBank& bank);

enum class BernsteinVariant { block, low_pass };

/// ||Delta_q L f||_p against 2^{q beta}(|q|+1)^{-alpha} ||Delta_q f||_p (or
/// the same with S_q). Requires lambda >= 2.
InequalityReport check_multiplier_bernstein(const PhiParams& params, double p,
                                            const std::vector<SpectralField>& fields,
                                            const std::vector<std::string>& names, int q_lo,
                                            int q_hi, const DyadicFilterBank& bank,
                                            BernsteinVariant variant = BernsteinVariant::block);

/// [R_a, v.grad] theta = R_a P(v.grad theta) - P(v.grad R_a theta).
SpectralField commutator(const Velocity& v, const SpectralField& theta, double alpha,
                         double lambda);

/// Right-hand side of the commutator estimate.
enum class CommutatorVariant {
  /// ||grad v||_p (||theta||_{B^{0,alpha}_{inf,r}} + ||theta||_p), LHS in B^0_{p,r}.
  gradient,
  /// (||omega||_inf + ||omega||_rho)(||theta||_{B^eps_{inf,r}} + ||theta||_rho),
  /// LHS in B^0_{inf,r}.
  vorticity,
};

struct CommutatorSpec {
  CommutatorVariant variant = CommutatorVariant::gradient;
  double p = 2.0;
  double r = 1.0;
  double alpha = 0.5;
  double lambda = 2.0;
  double epsilon = 0.1;
  double rho = 2.0;
};

/// Single case of the commutator estimate. Throws DomainError when v is not
/// divergence-free or the exponents are out of range.
InequalityCase commutator_case(const CommutatorSpec& spec, const Velocity& v,
                               const SpectralField& theta, const DyadicFilterBank& bank,
                               const std::string& case_id);

struct SuiteConfig {
  std::vector<PhiParams> params;
  std::vector<int> grids{256, 512};
  std::vector<double> bernstein_p{1.5, 2.0, 3.0, 4.0};
  std::vector<double> multiplier_p{2.0, kInfinity};
  std::vector<double> commutator_p{2.0, 4.0};
  std::vector<double> commutator_r{1.0, kInfinity};
  std::vector<double> epsilons{0.1, 0.3, 0.5};
  double rho = 2.0;
  std::uint64_t seed = 20240601;
  int random_fields = 2;
  /// When false the field corpus is empty.
  bool use_corpus = true;
  double ceiling = 1e3;
  double drift_tolerance = 0.25;
  bool bernstein = true;
  bool multiplier = true;
  bool commutators = true;

  /// (alpha, beta) in {0, 0.5, 1} x {0.5, 1} at the positivity threshold.
  static SuiteConfig defaults();
  void validate() const;
};

struct SuiteResult {
  std::vector<InequalityReport> reports;
  bool pass = true;
};

SuiteResult run_suite(const SuiteConfig& config);

}  // namespace logbouss
