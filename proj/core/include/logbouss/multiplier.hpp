#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "logbouss/spectral_field.hpp"

namespace logbouss {

/// Parity class of a Fourier multiplier.
///
/// radial:  real, depends on |xi| only.
/// even:    real and even in xi (products of two odd symbols, etc).
/// x1_odd:  purely imaginary, odd in xi1 and even in xi2 (d/dx1, R_alpha).
/// odd:     purely imaginary and odd in xi.
/// Every class maps real fields to real fields.
enum class SymbolKind { radial, even, x1_odd, odd };

const char* to_string(SymbolKind kind);

/// Parameters of the logarithmic family |xi|^beta / log^alpha(lambda + |xi|).
struct LogParams {
  double alpha = 0.0;
  double beta = 1.0;
  double lambda = 2.0;
};

/// Scalar function of the frequency vector defining a Fourier multiplier.
class MultiplierSymbol {
 public:
  using Evaluator = std::function<Complex(double xi1, double xi2)>;
  using RadialProfile = std::function<double(double rho)>;

  static MultiplierSymbol radial(RadialProfile profile, std::string name,
                                 std::optional<LogParams> params = std::nullopt);
  static MultiplierSymbol general(SymbolKind kind, Evaluator eval, std::string name,
                                  std::optional<LogParams> params = std::nullopt);
  static MultiplierSymbol identity();

  SymbolKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::optional<LogParams>& params() const { return params_; }

  Complex operator()(double xi1, double xi2) const { return eval_(xi1, xi2); }
  /// Only for radial symbols; throws DomainError otherwise.
  double radial_value(double rho) const;

  friend MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b);

 private:
  MultiplierSymbol(SymbolKind kind, Evaluator eval, RadialProfile profile, std::string name,
                   std::optional<LogParams> params)
      : kind_(kind), eval_(std::move(eval)), profile_(std::move(profile)),
        name_(std::move(name)), params_(std::move(params)) {}

  SymbolKind kind_;
  Evaluator eval_;
  RadialProfile profile_;
  std::string name_;
  std::optional<LogParams> params_;
};

/// m(rho) = rho^beta / log^alpha(lambda + rho), m(0) = 0.
/// Throws DomainError unless alpha >= 0, beta in (0, 2] and lambda > 1.
MultiplierSymbol log_dissipation_symbol(double alpha, double beta, double lambda);

/// i xi1/|xi| log^alpha(lambda + |xi|), zero at xi = 0.
MultiplierSymbol riesz_log_symbol(double alpha, double lambda);

/// i xi_axis (axis 1 or 2).
MultiplierSymbol derivative_symbol(int axis);

/// exp(-t kappa m(xi)) for a radial symbol m.
MultiplierSymbol semigroup_symbol(const MultiplierSymbol& m, double t);

/// A symbol sampled on the half-complex layout of one grid.
class SymbolTable {
 public:
  SymbolTable(const Grid2D& grid, const MultiplierSymbol& symbol);

  const Grid2D& grid() const { return grid_; }
  SymbolKind kind() const { return kind_; }
  std::span<const Complex> entries() const { return entries_; }
  Complex operator[](std::size_t k) const { return entries_[k]; }

 private:
  Grid2D grid_;
  SymbolKind kind_;
  ComplexVector entries_;
};

/// Pointwise product of coefficients and symbol. Throws GridMismatch when
/// the table was built for another grid.
SpectralField apply_multiplier(const SpectralField& f, const SymbolTable& m);
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& m);

/// In-place variant on raw half-complex coefficients.
void apply_multiplier_inplace(ComplexVector& coeffs, const SymbolTable& m);

struct Velocity {
  SpectralField v1;
  SpectralField v2;
};

/// v = grad^perp Delta^{-1} omega = (-d2 psi, d1 psi) with Delta psi = omega.
/// Throws DomainError when |mean(omega)| exceeds mean_tolerance * (1 + max|omega|).
Velocity biot_savart(const SpectralField& omega, double mean_tolerance = 1e-10);

/// Coefficient-level Biot-Savart on a half-complex array (no checks).
void biot_savart_coeffs(const Grid2D& grid, const ComplexVector& omega, ComplexVector& v1,
                        ComplexVector& v2);

/// Spectral divergence d1 v1 + d2 v2.
SpectralField divergence(const Velocity& v);
/// Spectral curl d1 v2 - d2 v1.
SpectralField curl(const Velocity& v);

}  // namespace logbouss
