#include "logbouss/littlewood_paley.hpp"

#include <cmath>
#include <string>

#include "logbouss/error.hpp"
#include "logbouss/norms.hpp"

namespace logbouss {

namespace {

double smooth_step_kernel(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

void require_grid(const SpectralField& f, const DyadicFilterBank& bank) {
  if (!(f.grid() == bank.grid())) throw GridMismatch("filter bank built for another grid");
}

SpectralField filtered(const SpectralField& f, const std::vector<double>& weights) {
  ComplexVector c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= weights[k];
  return SpectralField::from_coeffs(f.grid(), std::move(c));
}

}  // namespace

double DyadicFilterBank::chi(double rho) {
  if (rho <= 0.5) return 1.0;
  if (rho >= 1.0) return 0.0;
  const double s = 2.0 * (rho - 0.5);
  const double a = smooth_step_kernel(1.0 - s);
  const double b = smooth_step_kernel(s);
  return a / (a + b);
}

double DyadicFilterBank::phi(double rho) { return chi(0.5 * rho) - chi(rho); }

double DyadicFilterBank::block_weight(int q, double rho) {
  if (q == -1) return chi(rho);
  return phi(std::ldexp(rho, -q));
}

double DyadicFilterBank::low_pass_weight(int q, double rho) {
  if (q <= -1) return 0.0;
  return chi(std::ldexp(rho, -q));
}

DyadicFilterBank::DyadicFilterBank(const Grid2D& grid) : grid_(grid) {
  const double top = grid.n() * grid.dealias_fraction() / 2.0 * grid.frequency_unit();
  q_max_ = static_cast<int>(std::floor(std::log2(top) + 1e-12)) - 1;
  if (q_max_ < 1) {
    throw DomainError("grid of size " + std::to_string(grid.n()) +
                      " hosts fewer than three dyadic blocks");
  }
  const int n = grid.n();
  const int nc = grid.spectral_cols();
  const double unit = grid.frequency_unit();
  tables_.assign(block_count(), std::vector<double>(grid.spectral_size(), 0.0));
  for (int j = 0; j < n; ++j) {
    const double xi2 = unit * grid.signed_wavenumber(j);
    for (int k = 0; k < nc; ++k) {
      const double rho = std::hypot(unit * k, xi2);
      const std::size_t idx = static_cast<std::size_t>(j) * nc + k;
      for (int q = -1; q <= q_max_; ++q) tables_[q + 1][idx] = block_weight(q, rho);
    }
  }
}

double DyadicFilterBank::resolved_radius() const { return std::ldexp(1.0, q_max_); }

const std::vector<double>& DyadicFilterBank::table(int q) const {
  if (q < -1 || q > q_max_) {
    throw DomainError("dyadic block index " + std::to_string(q) + " outside [-1, " +
                      std::to_string(q_max_) + "]");
  }
  return tables_[q + 1];
}

SpectralField dyadic_block(const SpectralField& f, int q, const DyadicFilterBank& bank) {
  require_grid(f, bank);
  return filtered(f, bank.table(q));
}

SpectralField low_pass(const SpectralField& f, int q, const DyadicFilterBank& bank) {
  require_grid(f, bank);
  if (q < -1) throw DomainError("low-pass index must be >= -1");
  const Grid2D& g = f.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  const double unit = g.frequency_unit();
  std::vector<double> w(g.spectral_size());
  for (int j = 0; j < n; ++j) {
    const double xi2 = unit * g.signed_wavenumber(j);
    for (int k = 0; k < nc; ++k) {
      w[static_cast<std::size_t>(j) * nc + k] =
          DyadicFilterBank::low_pass_weight(q, std::hypot(unit * k, xi2));
    }
  }
  return filtered(f, w);
}

void BesovSpec::validate() const {
  if (!(p >= 1.0)) throw DomainError("Besov exponent p must lie in [1, inf]");
  if (!(r >= 1.0)) throw DomainError("Besov exponent r must lie in [1, inf]");
  if (!std::isfinite(s) || !std::isfinite(s_log)) {
    throw DomainError("Besov regularity indices must be finite");
  }
}

std::vector<double> block_lp_norms(const SpectralField& f, double p, const DyadicFilterBank& bank) {
  require_grid(f, bank);
  std::vector<double> out;
  out.reserve(bank.block_count());
  for (int q = -1; q <= bank.q_max(); ++q) out.push_back(lp_norm(dyadic_block(f, q, bank), p));
  return out;
}

double besov_from_blocks(const std::vector<double>& block_norms, double s, double s_log, double r) {
  double acc = 0.0;
  for (std::size_t idx = 0; idx < block_norms.size(); ++idx) {
    const int q = static_cast<int>(idx) - 1;
    const double w = std::exp2(q * s) * std::pow(std::abs(q) + 1.0, s_log) * block_norms[idx];
    if (std::isinf(r)) {
      acc = std::max(acc, w);
    } else {
      acc += std::pow(w, r);
    }
  }
  return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

double besov_norm(const SpectralField& f, const BesovSpec& spec, const DyadicFilterBank& bank) {
  spec.validate();
  return besov_from_blocks(block_lp_norms(f, spec.p, bank), spec.s, spec.s_log, spec.r);
}

}  // namespace logbouss
