#include "logbouss/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "logbouss/error.hpp"

namespace logbouss {

namespace {

void validate_log_params(double alpha, double beta, double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must exceed 1 (degenerate logarithm)");
  }
  if (!(beta > 0.0 && beta <= 2.0)) throw DomainError("beta must lie in (0, 2]");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 0");
}

bool is_odd(SymbolKind k) { return k == SymbolKind::x1_odd || k == SymbolKind::odd; }

SymbolKind product_kind(SymbolKind a, SymbolKind b) {
  if (a == SymbolKind::radial) return b;
  if (b == SymbolKind::radial) return a;
  if (is_odd(a) && is_odd(b)) return SymbolKind::even;
  if (a == SymbolKind::even && b == SymbolKind::even) return SymbolKind::even;
  // even x odd: parity in xi1 alone is no longer known.
  return SymbolKind::odd;
}

}  // namespace

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::radial: return "radial";
    case SymbolKind::even: return "even";
    case SymbolKind::x1_odd: return "x1_odd";
    case SymbolKind::odd: return "odd";
  }
  return "unknown";
}

MultiplierSymbol MultiplierSymbol::radial(RadialProfile profile, std::string name,
                                          std::optional<LogParams> params) {
  auto eval = [profile](double xi1, double xi2) -> Complex {
    return profile(std::hypot(xi1, xi2));
  };
  return MultiplierSymbol(SymbolKind::radial, eval, std::move(profile), std::move(name),
                          std::move(params));
}

MultiplierSymbol MultiplierSymbol::general(SymbolKind kind, Evaluator eval, std::string name,
                                           std::optional<LogParams> params) {
  return MultiplierSymbol(kind, std::move(eval), nullptr, std::move(name), std::move(params));
}

MultiplierSymbol MultiplierSymbol::identity() {
  return radial([](double) { return 1.0; }, "identity");
}

double MultiplierSymbol::radial_value(double rho) const {
  if (kind_ != SymbolKind::radial || !profile_) {
    throw DomainError("symbol '" + name_ + "' is not radial");
  }
  return profile_(rho);
}

MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  const std::string name = a.name_ + "*" + b.name_;
  if (a.kind_ == SymbolKind::radial && b.kind_ == SymbolKind::radial) {
    auto pa = a.profile_;
    auto pb = b.profile_;
    return MultiplierSymbol::radial([pa, pb](double rho) { return pa(rho) * pb(rho); }, name);
  }
  auto ea = a.eval_;
  auto eb = b.eval_;
  return MultiplierSymbol::general(
      product_kind(a.kind_, b.kind_),
      [ea, eb](double xi1, double xi2) { return ea(xi1, xi2) * eb(xi1, xi2); }, name);
}

MultiplierSymbol log_dissipation_symbol(double alpha, double beta, double lambda) {
  validate_log_params(alpha, beta, lambda);
  auto profile = [alpha, beta, lambda](double rho) -> double {
    if (rho <= 0.0) return 0.0;
    const double num = std::pow(rho, beta);
    if (alpha == 0.0) return num;
    return num / std::pow(std::log(lambda + rho), alpha);
  };
  return MultiplierSymbol::radial(profile, "log_dissipation", LogParams{alpha, beta, lambda});
}

MultiplierSymbol riesz_log_symbol(double alpha, double lambda) {
  validate_log_params(alpha, 1.0, lambda);
  auto eval = [alpha, lambda](double xi1, double xi2) -> Complex {
    const double rho = std::hypot(xi1, xi2);
    if (rho == 0.0) return 0.0;
    const double weight = alpha == 0.0 ? 1.0 : std::pow(std::log(lambda + rho), alpha);
    return Complex(0.0, xi1 / rho * weight);
  };
  return MultiplierSymbol::general(SymbolKind::x1_odd, eval, "riesz_log",
                                   LogParams{alpha, 1.0, lambda});
}

MultiplierSymbol derivative_symbol(int axis) {
  if (axis == 1) {
    return MultiplierSymbol::general(
        SymbolKind::x1_odd, [](double xi1, double) { return Complex(0.0, xi1); }, "d1");
  }
  if (axis == 2) {
    return MultiplierSymbol::general(
        SymbolKind::odd, [](double, double xi2) { return Complex(0.0, xi2); }, "d2");
  }
  throw DomainError("derivative axis must be 1 or 2");
}

MultiplierSymbol semigroup_symbol(const MultiplierSymbol& m, double t) {
  if (m.kind() != SymbolKind::radial) throw DomainError("semigroup needs a radial generator");
  auto base = m;
  return MultiplierSymbol::radial([base, t](double rho) { return std::exp(-t * base.radial_value(rho)); },
                                  "exp(-t*" + m.name() + ")", m.params());
}

SymbolTable::SymbolTable(const Grid2D& grid, const MultiplierSymbol& symbol)
    : grid_(grid), kind_(symbol.kind()), entries_(grid.spectral_size()) {
  const int n = grid.n();
  const int nc = grid.spectral_cols();
  const double unit = grid.frequency_unit();
  const bool odd = is_odd(kind_);
  for (int j = 0; j < n; ++j) {
    const double xi2 = unit * grid.signed_wavenumber(j);
    for (int k = 0; k < nc; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j) * nc + k;
      // Odd symbols cannot be represented on the sign-ambiguous Nyquist
      // modes of a real field.
      if (odd && grid.is_nyquist(k, j)) {
        entries_[idx] = 0.0;
        continue;
      }
      entries_[idx] = symbol(unit * k, xi2);
    }
  }
}

void apply_multiplier_inplace(ComplexVector& coeffs, const SymbolTable& m) {
  if (coeffs.size() != m.entries().size()) throw GridMismatch("symbol table size mismatch");
  const auto e = m.entries();
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= e[k];
}

SpectralField apply_multiplier(const SpectralField& f, const SymbolTable& m) {
  if (!(f.grid() == m.grid())) throw GridMismatch("multiplier table built for another grid");
  ComplexVector c(f.coeffs().begin(), f.coeffs().end());
  apply_multiplier_inplace(c, m);
  return SpectralField::from_coeffs(f.grid(), std::move(c));
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& m) {
  return apply_multiplier(f, SymbolTable(f.grid(), m));
}

void biot_savart_coeffs(const Grid2D& grid, const ComplexVector& omega, ComplexVector& v1,
                        ComplexVector& v2) {
  const int n = grid.n();
  const int nc = grid.spectral_cols();
  const double unit = grid.frequency_unit();
  v1.assign(omega.size(), 0.0);
  v2.assign(omega.size(), 0.0);
  for (int j = 0; j < n; ++j) {
    const double xi2 = unit * grid.signed_wavenumber(j);
    for (int k = 0; k < nc; ++k) {
      if ((k == 0 && j == 0) || grid.is_nyquist(k, j)) continue;
      const std::size_t idx = static_cast<std::size_t>(j) * nc + k;
      const double xi1 = unit * k;
      const double inv = 1.0 / (xi1 * xi1 + xi2 * xi2);
      v1[idx] = Complex(0.0, xi2 * inv) * omega[idx];
      v2[idx] = Complex(0.0, -xi1 * inv) * omega[idx];
    }
  }
}

Velocity biot_savart(const SpectralField& omega, double mean_tolerance) {
  double peak = 0.0;
  for (double v : omega.values()) peak = std::max(peak, std::abs(v));
  if (std::abs(omega.mean()) > mean_tolerance * (1.0 + peak)) {
    throw DomainError("Biot-Savart inversion needs zero-mean vorticity");
  }
  ComplexVector c1, c2;
  biot_savart_coeffs(omega.grid(), omega.coeff_vector(), c1, c2);
  return Velocity{SpectralField::from_coeffs(omega.grid(), std::move(c1)),
                  SpectralField::from_coeffs(omega.grid(), std::move(c2))};
}

SpectralField divergence(const Velocity& v) {
  return apply_multiplier(v.v1, derivative_symbol(1)) + apply_multiplier(v.v2, derivative_symbol(2));
}

SpectralField curl(const Velocity& v) {
  return apply_multiplier(v.v2, derivative_symbol(1)) - apply_multiplier(v.v1, derivative_symbol(2));
}

}  // namespace logbouss
