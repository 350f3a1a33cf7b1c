#include "logbouss/spectral_field.hpp"

#include <utility>

#include "logbouss/error.hpp"

namespace logbouss {

SpectralField::SpectralField(const Grid2D& grid)
    : grid_(grid), values_(grid.physical_size(), 0.0), coeffs_(grid.spectral_size()) {}

SpectralField::SpectralField(const Grid2D& grid, RealVector values, ComplexVector coeffs)
    : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

SpectralField SpectralField::from_values(const Grid2D& grid, RealVector values) {
  if (values.size() != grid.physical_size()) {
    throw GridMismatch("value array does not match the grid");
  }
  ComplexVector coeffs;
  FourierTransform::for_size(grid.n()).forward(values, coeffs);
  return SpectralField(grid, std::move(values), std::move(coeffs));
}

SpectralField SpectralField::from_coeffs(const Grid2D& grid, ComplexVector coeffs) {
  if (coeffs.size() != grid.spectral_size()) {
    throw GridMismatch("coefficient array does not match the grid");
  }
  const auto& fft = FourierTransform::for_size(grid.n());
  RealVector values;
  fft.inverse(coeffs, values);
  // Round trip through physical space enforces conjugate symmetry on the
  // self-conjugate columns.
  fft.forward(values, coeffs);
  return SpectralField(grid, std::move(values), std::move(coeffs));
}

SpectralField SpectralField::sample(const Grid2D& grid,
                                    const std::function<double(double, double)>& f) {
  RealVector values(grid.physical_size());
  const int n = grid.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(j) * n + i] = f(grid.x(i), grid.x(j));
    }
  }
  return from_values(grid, std::move(values));
}

SpectralField SpectralField::constant(const Grid2D& grid, double c) {
  RealVector values(grid.physical_size(), c);
  return from_values(grid, std::move(values));
}

void SpectralField::require_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw GridMismatch("fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  for (auto& c : coeffs_) c *= s;
  return *this;
}

void apply_dealias(const Grid2D& grid, ComplexVector& coeffs) {
  const int n = grid.n();
  const int nc = grid.spectral_cols();
  for (int j = 0; j < n; ++j) {
    const int k2 = grid.signed_wavenumber(j);
    for (int k = 0; k < nc; ++k) {
      if (!grid.retained(k, k2) || grid.is_nyquist(k, j)) {
        coeffs[static_cast<std::size_t>(j) * nc + k] = 0.0;
      }
    }
  }
}

ComplexVector dealiased_product(const Grid2D& grid, const RealVector& a, const RealVector& b) {
  RealVector prod(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) prod[k] = a[k] * b[k];
  ComplexVector out;
  FourierTransform::for_size(grid.n()).forward(prod, out);
  apply_dealias(grid, out);
  return out;
}

}  // namespace logbouss
