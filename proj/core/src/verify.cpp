#include "logbouss/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "logbouss/error.hpp"
#include "logbouss/initial_data.hpp"
#include "logbouss/parallel.hpp"

namespace logbouss {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

double weight(int q, const PhiParams& params) {
  return std::pow(2.0, q * params.beta) * std::pow(std::abs(q) + 1.0, -params.alpha);
}

bool negligible(const SpectralField& block, double reference) {
  return reference == 0.0 || parseval_l2(block) <= kNegligibleBlock * reference;
}

double finite_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  if (lhs == 0.0 && rhs == 0.0) return 0.0;
  return kInfinity;
}

void require_names(const std::vector<SpectralField>& fields, const std::vector<std::string>& names) {
  if (fields.size() != names.size()) throw DomainError("one name per test field is required");
}

void require_q_range(int q_lo, int q_hi, const DyadicFilterBank& bank) {
  if (q_lo < -1 || q_hi > bank.q_max()) {
    throw DomainError("q range [" + std::to_string(q_lo) + ", " + std::to_string(q_hi) +
                      "] is outside [-1, " + std::to_string(bank.q_max()) + "]");
  }
}

std::string case_name(const std::string& field, int n) {
  return field + "@n" + std::to_string(n);
}

}  // namespace

double InequalityReport::max_ratio_on(int n) const {
  double m = 0.0;
  for (const auto& c : cases) {
    if (c.n == n) m = std::max(m, c.ratio);
  }
  return m;
}

void InequalityReport::finalize() {
  max_ratio = 0.0;
  failure.clear();
  bool finite = true;
  int n_lo = 0;
  int n_hi = 0;
  for (const auto& c : cases) {
    if (!std::isfinite(c.ratio) || c.ratio < 0.0) finite = false;
    max_ratio = std::max(max_ratio, c.ratio);
    if (n_lo == 0 || c.n < n_lo) n_lo = c.n;
    n_hi = std::max(n_hi, c.n);
  }
  drift = 0.0;
  if (n_lo != n_hi) {
    const double a = max_ratio_on(n_lo);
    const double b = max_ratio_on(n_hi);
    drift = a > 0.0 ? std::abs(b - a) / a : (b > 0.0 ? kInfinity : 0.0);
  }
  std::vector<std::string> why;
  if (!finite) why.push_back("non-finite or negative ratio");
  if (!(max_ratio <= ceiling)) why.push_back("max ratio " + fmt(max_ratio) + " above ceiling " + fmt(ceiling));
  if (!(drift < drift_tolerance) && n_lo != n_hi) {
    why.push_back("refinement drift " + fmt(drift) + " not below " + fmt(drift_tolerance));
  }
  if (!(agreement_gap <= agreement_tolerance)) {
    why.push_back("Parseval gap " + fmt(agreement_gap) + " above " + fmt(agreement_tolerance));
  }
  pass = why.empty();
  for (std::size_t i = 0; i < why.size(); ++i) failure += (i ? "; " : "") + why[i];
}

std::vector<TestField> standard_corpus(std::uint64_t seed, int q_top, int random_fields) {
  std::vector<TestField> out;
  for (int q = 0; q <= q_top; ++q) {
    const int k = 1 << q;
    out.push_back({"mode-" + std::to_string(k), [k](const Grid2D& g) { return single_mode(g, k, 0); }});
  }
  const double radius = std::ldexp(1.0, q_top);
  for (int i = 0; i < random_fields; ++i) {
    const ModeList modes = random_modes(seed + static_cast<std::uint64_t>(i), radius, 1.0);
    out.push_back({"random-" + std::to_string(i),
                   [modes](const Grid2D& g) { return from_modes(g, modes); }});
  }
  out.push_back({"gaussian", [](const Grid2D& g) {
                   return gaussian_bump(g, 0.5 * g.period(), 0.5 * g.period(), 0.3 * g.period() / (2.0 * std::numbers::pi));
                 }});
  out.push_back({"taylor-green", [](const Grid2D& g) { return taylor_green_vorticity(g); }});
  out.push_back({"shear-layer", [](const Grid2D& g) { return shear_layer(g, 0.5); }});
  return out;
}

InequalityReport check_generalized_bernstein(double p, const PhiParams& params,
                                             const std::vector<SpectralField>& fields,
                                             const std::vector<std::string>& names, int q_lo,
                                             int q_hi, const DyadicFilterBank& bank) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("generalized Bernstein needs p in (1, inf)");
  params.validate();
  require_names(fields, names);
  require_q_range(std::max(q_lo, 0), q_hi, bank);
  InequalityReport rep;
  rep.name = "generalized_bernstein";
  rep.parameters = params.label() + " p=" + fmt(p);
  const Grid2D& grid = bank.grid();
  const SymbolTable L(grid, params.symbol());
  const int nc = grid.spectral_cols();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const SpectralField& f = fields[i];
    const double ref = parseval_l2(f);
    for (int q = std::max(q_lo, 0); q <= q_hi; ++q) {
      const SpectralField block = dyadic_block(f, q, bank);
      if (negligible(block, ref)) continue;
      const SpectralField lblock = apply_multiplier(block, L);
      const auto b = block.values();
      const auto lb = lblock.values();
      double pairing = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (b[k] == 0.0) continue;
        pairing += lb[k] * std::pow(std::abs(b[k]), p - 2.0) * b[k];
      }
      pairing *= grid.cell_area();
      const double lhs = weight(q, params) * std::pow(lp_norm(block, p), p);
      InequalityCase c{case_name(names[i], grid.n()), grid.n(), q, lhs, pairing,
                       finite_ratio(lhs, pairing)};
      if (p == 2.0) {
        double rhs_parseval = 0.0;
        const auto coeffs = block.coeffs();
        for (int j = 0; j < grid.n(); ++j) {
          for (int k = 0; k < nc; ++k) {
            const std::size_t idx = static_cast<std::size_t>(j) * nc + k;
            rhs_parseval += hermitian_weight(grid, k) * L[idx].real() * std::norm(coeffs[idx]);
          }
        }
        rhs_parseval *= grid.area();
        const double l2 = parseval_l2(block);
        const double lhs_parseval = weight(q, params) * l2 * l2;
        const double r_parseval = lhs_parseval / rhs_parseval;
        rep.agreement_gap = std::max(rep.agreement_gap, std::abs(c.ratio - r_parseval) / r_parseval);
      }
      rep.cases.push_back(std::move(c));
    }
  }
  rep.finalize();
  return rep;
}

InequalityReport check_multiplier_bernstein(const PhiParams& params, double p,
                                            const std::vector<SpectralField>& fields,
                                            const std::vector<std::string>& names, int q_lo,
                                            int q_hi, const DyadicFilterBank& bank,
                                            BernsteinVariant variant) {
  params.validate();
  if (params.lambda < 2.0) throw DomainError("the multiplier Bernstein bound needs lambda >= 2");
  if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must be >= 1");
  require_names(fields, names);
  require_q_range(q_lo, q_hi, bank);
  InequalityReport rep;
  rep.name = variant == BernsteinVariant::block ? "multiplier_bernstein" : "multiplier_bernstein_low_pass";
  rep.parameters = params.label() + " p=" + fmt(p);
  const SymbolTable L(bank.grid(), params.symbol());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const SpectralField& f = fields[i];
    const double ref = parseval_l2(f);
    for (int q = q_lo; q <= q_hi; ++q) {
      const SpectralField piece =
          variant == BernsteinVariant::block ? dyadic_block(f, q, bank) : low_pass(f, q, bank);
      if (negligible(piece, ref)) continue;
      const double lhs = lp_norm(apply_multiplier(piece, L), p);
      const double rhs = weight(q, params) * lp_norm(piece, p);
      rep.cases.push_back({case_name(names[i], bank.grid().n()), bank.grid().n(), q, lhs, rhs,
                           finite_ratio(lhs, rhs)});
    }
  }
  rep.finalize();
  return rep;
}

SpectralField commutator(const Velocity& v, const SpectralField& theta, double alpha,
                         double lambda) {
  const Grid2D& grid = theta.grid();
  const SymbolTable R(grid, riesz_log_symbol(alpha, lambda));
  const SymbolTable d1(grid, derivative_symbol(1));
  const SymbolTable d2(grid, derivative_symbol(2));
  auto advect = [&](const SpectralField& f) {
    const SpectralField g1 = apply_multiplier(f, d1);
    const SpectralField g2 = apply_multiplier(f, d2);
    ComplexVector a = dealiased_product(grid, v.v1.value_vector(), g1.value_vector());
    const ComplexVector b = dealiased_product(grid, v.v2.value_vector(), g2.value_vector());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
  };
  ComplexVector first = advect(theta);
  apply_multiplier_inplace(first, R);
  const ComplexVector second = advect(apply_multiplier(theta, R));
  for (std::size_t k = 0; k < first.size(); ++k) first[k] -= second[k];
  return SpectralField::from_coeffs(grid, std::move(first));
}

InequalityCase commutator_case(const CommutatorSpec& spec, const Velocity& v,
                               const SpectralField& theta, const DyadicFilterBank& bank,
                               const std::string& case_id) {
  if (spec.variant == CommutatorVariant::gradient) {
    if (!(spec.p >= 2.0) || std::isinf(spec.p)) throw DomainError("commutator needs p in [2, inf)");
  } else {
    if (!(spec.rho > 1.0) || std::isinf(spec.rho)) throw DomainError("commutator needs rho in (1, inf)");
    if (!(spec.epsilon > 0.0)) throw DomainError("commutator needs epsilon > 0");
  }
  if (!(spec.r >= 1.0)) throw DomainError("summation exponent must be >= 1");
  if (!(spec.lambda > 1.0)) throw DomainError("lambda must exceed 1");
  double speed = 0.0;
  for (double a : v.v1.values()) speed = std::max(speed, std::abs(a));
  for (double a : v.v2.values()) speed = std::max(speed, std::abs(a));
  if (lp_norm(divergence(v), kInfinity) > 1e-10 * (1.0 + speed)) {
    throw DomainError("commutator check needs a divergence-free velocity");
  }
  const SpectralField c = commutator(v, theta, spec.alpha, spec.lambda);
  const Grid2D& grid = theta.grid();
  double lhs = 0.0;
  double rhs = 0.0;
  if (spec.variant == CommutatorVariant::gradient) {
    lhs = besov_norm(c, {0.0, 0.0, spec.p, spec.r}, bank);
    rhs = velocity_gradient_norm(v, spec.p) *
          (besov_norm(theta, {0.0, spec.alpha, kInfinity, spec.r}, bank) + lp_norm(theta, spec.p));
  } else {
    const SpectralField omega = curl(v);
    lhs = besov_norm(c, {0.0, 0.0, kInfinity, spec.r}, bank);
    rhs = (lp_norm(omega, kInfinity) + lp_norm(omega, spec.rho)) *
          (besov_norm(theta, {spec.epsilon, 0.0, kInfinity, spec.r}, bank) + lp_norm(theta, spec.rho));
  }
  return {case_id, grid.n(), -1, lhs, rhs, finite_ratio(lhs, rhs)};
}

SuiteConfig SuiteConfig::defaults() {
  SuiteConfig c;
  for (double a : {0.0, 0.5, 1.0}) {
    for (double b : {0.5, 1.0}) c.params.push_back(PhiParams::at_threshold(a, b));
  }
  return c;
}

void SuiteConfig::validate() const {
  for (const auto& p : params) {
    p.validate();
    if (p.beta > 1.0) throw DomainError("suite parameters need beta <= 1");
  }
  if (grids.empty()) throw DomainError("suite needs at least one grid");
  for (int n : grids) Grid2D check(n);
  for (double p : bernstein_p) {
    if (!(p > 1.0) || std::isinf(p)) throw DomainError("bernstein_p entries must lie in (1, inf)");
  }
  for (double p : multiplier_p) {
    if (!(p >= 1.0)) throw DomainError("multiplier_p entries must be >= 1");
  }
  for (double p : commutator_p) {
    if (!(p >= 2.0) || std::isinf(p)) throw DomainError("commutator_p entries must lie in [2, inf)");
  }
  for (double r : commutator_r) {
    if (!(r >= 1.0)) throw DomainError("commutator_r entries must be >= 1");
  }
  for (double e : epsilons) {
    if (!(e > 0.0)) throw DomainError("epsilons must be positive");
  }
  if (!(rho > 1.0) || std::isinf(rho)) throw DomainError("rho must lie in (1, inf)");
  if (random_fields < 0) throw DomainError("random_fields must be >= 0");
  if (!(ceiling >= 0.0)) throw DomainError("ceiling must be >= 0");
  if (!(drift_tolerance > 0.0)) throw DomainError("drift_tolerance must be positive");
}

namespace {

struct GridData {
  std::unique_ptr<DyadicFilterBank> bank;
  std::vector<SpectralField> fields;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::pair<Velocity, SpectralField>>> commutator_pairs;
};

std::vector<std::pair<std::string, std::pair<Velocity, SpectralField>>> commutator_corpus(
    const Grid2D& g, std::uint64_t seed) {
  std::vector<std::pair<std::string, std::pair<Velocity, SpectralField>>> out;
  const double c = 0.5 * g.period();
  const double w = 0.3 * g.period() / (2.0 * std::numbers::pi);
  out.push_back({"taylor-green/gaussian", {taylor_green_velocity(g), gaussian_bump(g, c, c, w)}});
  out.push_back({"shear/gaussian", {shear_velocity(g), gaussian_bump(g, 0.7 * c, 1.2 * c, w)}});
  const SpectralField omega = from_modes(g, random_modes(seed + 101, 6.0, 1.0));
  out.push_back({"random/random", {biot_savart(omega), from_modes(g, random_modes(seed + 202, 12.0, 1.0))}});
  return out;
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& config) {
  config.validate();
  std::vector<int> grids = config.grids;
  std::sort(grids.begin(), grids.end());
  grids.erase(std::unique(grids.begin(), grids.end()), grids.end());
  std::map<int, GridData> data;
  for (int n : grids) {
    const Grid2D g(n);
    GridData d;
    d.bank = std::make_unique<DyadicFilterBank>(g);
    data.emplace(n, std::move(d));
  }
  const int q_top = data.at(grids.front()).bank->q_max();
  if (config.use_corpus) {
    const auto corpus = standard_corpus(config.seed, q_top, config.random_fields);
    for (int n : grids) {
      const Grid2D g(n);
      auto& d = data.at(n);
      for (const auto& tf : corpus) {
        d.fields.push_back(tf.make(g));
        d.names.push_back(tf.name);
      }
      d.commutator_pairs = commutator_corpus(g, config.seed);
    }
  }

  // Each task fills one report; the order of reports is fixed up front.
  std::vector<std::function<InequalityReport()>> tasks;
  auto merge = [&config](std::vector<InequalityReport> per_grid) {
    InequalityReport out = per_grid.front();
    for (std::size_t i = 1; i < per_grid.size(); ++i) {
      out.cases.insert(out.cases.end(), per_grid[i].cases.begin(), per_grid[i].cases.end());
      out.agreement_gap = std::max(out.agreement_gap, per_grid[i].agreement_gap);
    }
    out.ceiling = config.ceiling;
    out.drift_tolerance = config.drift_tolerance;
    out.finalize();
    return out;
  };
  for (const auto& params : config.params) {
    if (config.bernstein) {
      for (double p : config.bernstein_p) {
        tasks.push_back([&, params, p] {
          std::vector<InequalityReport> parts;
          for (int n : grids) {
            const auto& d = data.at(n);
            parts.push_back(check_generalized_bernstein(p, params, d.fields, d.names, 0, q_top, *d.bank));
          }
          return merge(std::move(parts));
        });
      }
    }
    if (config.multiplier) {
      for (auto variant : {BernsteinVariant::block, BernsteinVariant::low_pass}) {
        for (double p : config.multiplier_p) {
          tasks.push_back([&, params, p, variant] {
            std::vector<InequalityReport> parts;
            for (int n : grids) {
              const auto& d = data.at(n);
              parts.push_back(check_multiplier_bernstein(params, p, d.fields, d.names, 0, q_top,
                                                         *d.bank, variant));
            }
            return merge(std::move(parts));
          });
        }
      }
    }
    if (config.commutators) {
      auto add = [&](CommutatorSpec spec, std::string label) {
        tasks.push_back([&, spec, label] {
          InequalityReport rep;
          rep.name = spec.variant == CommutatorVariant::gradient ? "commutator_gradient"
                                                                 : "commutator_vorticity";
          rep.parameters = label;
          for (int n : grids) {
            const auto& d = data.at(n);
            for (const auto& [name, pair] : d.commutator_pairs) {
              rep.cases.push_back(commutator_case(spec, pair.first, pair.second, *d.bank,
                                                  case_name(name, n)));
            }
          }
          rep.ceiling = config.ceiling;
          rep.drift_tolerance = config.drift_tolerance;
          rep.finalize();
          return rep;
        });
      };
      const std::string base = "alpha=" + fmt(params.alpha) + " lambda=" + fmt(params.lambda);
      for (double p : config.commutator_p) {
        for (double r : config.commutator_r) {
          CommutatorSpec s;
          s.variant = CommutatorVariant::gradient;
          s.p = p;
          s.r = r;
          s.alpha = params.alpha;
          s.lambda = params.lambda;
          add(s, base + " p=" + fmt(p) + " r=" + fmt(r));
        }
      }
      for (double eps : config.epsilons) {
        for (double r : config.commutator_r) {
          CommutatorSpec s;
          s.variant = CommutatorVariant::vorticity;
          s.r = r;
          s.alpha = params.alpha;
          s.lambda = params.lambda;
          s.epsilon = eps;
          s.rho = config.rho;
          add(s, base + " eps=" + fmt(eps) + " rho=" + fmt(config.rho) + " r=" + fmt(r));
        }
      }
    }
  }

  SuiteResult result;
  result.reports.resize(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    try {
      result.reports[i] = tasks[i]();
    } catch (const Error& e) {
      throw Error("verification task " + std::to_string(i) + " failed: " + e.what());
    }
  });
  for (const auto& r : result.reports) result.pass = result.pass && r.pass;
  return result;
}

}  // namespace logbouss
