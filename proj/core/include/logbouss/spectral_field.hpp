#pragma once

#include <functional>
#include <span>

#include "logbouss/fft.hpp"
#include "logbouss/grid.hpp"

namespace logbouss {

/// Real scalar field on a periodic grid, holding its physical samples and
/// its Fourier coefficients side by side. Both representations are kept in
/// sync at construction; the type is an immutable-by-default value.
class SpectralField {
 public:
  explicit SpectralField(const Grid2D& grid);  // zero field

  static SpectralField from_values(const Grid2D& grid, RealVector values);
  /// Coefficients are projected onto the conjugate-symmetric subspace.
  static SpectralField from_coeffs(const Grid2D& grid, ComplexVector coeffs);
  static SpectralField sample(const Grid2D& grid,
                              const std::function<double(double, double)>& f);
  static SpectralField constant(const Grid2D& grid, double c);

  const Grid2D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  const RealVector& value_vector() const { return values_; }
  const ComplexVector& coeff_vector() const { return coeffs_; }

  double value(int i, int j) const { return values_[static_cast<std::size_t>(j) * grid_.n() + i]; }
  double mean() const { return coeffs_[0].real(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  SpectralField(const Grid2D& grid, RealVector values, ComplexVector coeffs);
  void require_same_grid(const SpectralField& other) const;

  Grid2D grid_;
  RealVector values_;
  ComplexVector coeffs_;
};

/// Truncates coefficients outside the dealiasing window (in place).
void apply_dealias(const Grid2D& grid, ComplexVector& coeffs);

/// Fourier coefficients of the pointwise product a*b, truncated to the
/// dealiasing window.
ComplexVector dealiased_product(const Grid2D& grid, const RealVector& a, const RealVector& b);

/// Parseval weight of a half-complex column: 1 for k1 = 0 and k1 = n/2,
/// 2 otherwise (each interior column stands for itself and its conjugate).
inline double hermitian_weight(const Grid2D& grid, int col) {
  return (col == 0 || col == grid.n() / 2) ? 1.0 : 2.0;
}

}  // namespace logbouss
