#include "logbouss/phi.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdio>

#include "logbouss/error.hpp"

namespace logbouss {

void PhiParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 0");
  if (!(beta > 0.0 && beta <= 2.0)) throw DomainError("beta must lie in (0, 2]");
  if (!(lambda > 1.0) || !std::isfinite(lambda)) throw DomainError("lambda must exceed 1");
}

double PhiParams::threshold() const { return std::exp((3.0 + 2.0 * alpha) / beta); }

bool PhiParams::above_threshold() const {
  // Relative slack so that at_threshold() round-trips through exp().
  return beta <= 1.0 && lambda >= threshold() * (1.0 - 1e-14);
}

std::string PhiParams::label() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "alpha=%g beta=%g lambda=%.6g", alpha, beta, lambda);
  return buf;
}

PhiParams PhiParams::at_threshold(double alpha, double beta) {
  PhiParams p{alpha, beta, 2.0};
  p.lambda = p.threshold();
  return p;
}

PhiJet phi_derivatives(double r, const PhiParams& params) {
  if (!(r > 0.0)) throw DomainError("phi derivatives need r > 0");
  const double a = params.alpha;
  const double b = params.beta;
  const double lam = params.lambda;
  const double s = lam + r;
  const double L = std::log(s);
  const double La = std::pow(L, -a);  // L^{-a}
  const double rb = std::pow(r, b);

  PhiJet jet;
  jet.value = rb * La;

  // phi' = r^{b-1} / ((lambda+r) L^{a+1}) * (b lambda L + r (b L - a))
  const double pref1 = rb / r * La / (s * L);
  jet.d1 = pref1 * (b * lam * L + r * (b * L - a));
  jet.d1_scale = std::abs(b * rb / r * La) + std::abs(a * rb * La / (s * L));

  // phi'' as four terms.
  const double t1 = -b * (1.0 - b) * rb / (r * r) * La;
  const double t2 = -2.0 * a * b * rb / r * La / (s * L);
  const double t3 = a * rb * La / (s * s * L);
  const double t4 = a * (a + 1.0) * rb * La / (s * s * L * L);
  jet.d2 = t1 + t2 + t3 + t4;
  jet.d2_scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);

  // phi''' as I1 + I2 + I3 + I4.
  const double s3 = s * s * s;
  const double i1 = a * (a + 1.0) * rb / r * La / (L * L * L) / s3 *
                    (3.0 * lam * b * L + r * (3.0 * b * L - (2.0 + a)));
  const double i2 = a * rb * La / (L * L) / s3 * (-3.0 * (1.0 + a) + (-3.0 * b * b + 6.0 * b - 2.0) * L);
  const double i3 = a * rb / (r * r) * La / L / s3 *
                    (lam * b * (9.0 - 6.0 * b) * r + 3.0 * lam * lam * b * (1.0 - b));
  const double i4 = (2.0 - b) * (1.0 - b) * b * rb / (r * r * r) * La;
  jet.d3 = i1 + i2 + i3 + i4;
  jet.d3_scale = std::abs(i1) + std::abs(i2) + std::abs(i3) + std::abs(i4);
  return jet;
}

double kernel_profile_third_derivative(double r, double t, const PhiParams& params) {
  const PhiJet j = phi_derivatives(r, params);
  const double F = std::exp(-t * j.value);
  return (-t * j.d3 + 3.0 * t * t * j.d1 * j.d2 - t * t * t * j.d1 * j.d1 * j.d1) * F;
}

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

Wide wide_profile(const Wide& r, double t, const PhiParams& p) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const Wide phi = pow(r, Wide(p.beta)) / pow(log(Wide(p.lambda) + r), Wide(p.alpha));
  return exp(-Wide(t) * phi);
}

// Central difference of the third derivative in 50-digit arithmetic.
double wide_third_difference(double r, double t, const PhiParams& p) {
  const Wide x(r);
  const Wide h = x * Wide("1e-12");
  const Wide num = wide_profile(x + 2 * h, t, p) - 2 * wide_profile(x + h, t, p) +
                   2 * wide_profile(x - h, t, p) - wide_profile(x - 2 * h, t, p);
  return static_cast<double>(num / (2 * h * h * h));
}

void record(SignCondition& c, bool ok, double r) {
  if (!ok && c.holds) {
    c.holds = false;
    c.first_violation = r;
  }
}

}  // namespace

std::optional<double> AskeyVerdict::first_violation() const {
  std::optional<double> first;
  for (const auto* c : {&phi1_nonneg, &phi2_nonpos, &phi3_nonneg}) {
    if (c->first_violation && (!first || *c->first_violation < *first)) first = c->first_violation;
  }
  return first;
}

AskeyVerdict askey_check(const PhiParams& params, std::span<const double> radii, double t) {
  params.validate();
  if (radii.empty()) throw DomainError("askey_check needs a non-empty radial grid");
  constexpr double kRound = 1e-12;
  AskeyVerdict v;
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("askey_check radii must be positive");
    const PhiJet j = phi_derivatives(r, params);
    record(v.phi1_nonneg, j.d1 >= -kRound * j.d1_scale, r);
    record(v.phi2_nonpos, j.d2 <= kRound * j.d2_scale, r);
    record(v.phi3_nonneg, j.d3 >= -kRound * j.d3_scale, r);

    const double F = std::exp(-t * j.value);
    const double f3_scale = F * (t * j.d3_scale + 3.0 * t * t * j.d1_scale * j.d2_scale +
                                 t * t * t * j.d1_scale * j.d1_scale * j.d1_scale);
    const double f3 = kernel_profile_third_derivative(r, t, params);
    record(v.f3_identity_nonpos, f3 <= 1e-10 + kRound * f3_scale, r);
    const double f3_fd = wide_third_difference(r, t, params);
    record(v.f3_difference_nonpos, f3_fd <= 1e-10 + 1e-8 * f3_scale, r);
  }
  return v;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo)) throw DomainError("invalid log-spaced range");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < count; ++k) out[k] = std::exp(a + (b - a) * k / (count - 1));
  out.back() = hi;
  return out;
}

}  // namespace logbouss
