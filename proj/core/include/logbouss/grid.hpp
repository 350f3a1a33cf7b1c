#pragma once

#include <cstddef>
#include <numbers>

namespace logbouss {

/// Uniform periodic grid on the square torus [0, period)^2.
///
/// Physical samples are stored row-major with x1 fastest: index j * n + i
/// holds the value at (i * dx, j * dx). Fourier coefficients use the
/// half-complex layout of a real-to-complex transform: index j * (n/2+1) + k
/// holds the coefficient of wavenumber (k, signed(j)).
class Grid2D {
 public:
  /// Throws DomainError unless n >= 16 is a power of two, period > 0 and
  /// dealias_fraction lies in (0, 1].
  explicit Grid2D(int n, double period = 2.0 * std::numbers::pi,
                  double dealias_fraction = 2.0 / 3.0);

  int n() const { return n_; }
  double period() const { return period_; }
  double dealias_fraction() const { return dealias_; }

  double dx() const { return period_ / n_; }
  double cell_area() const { return dx() * dx(); }
  double area() const { return period_ * period_; }

  /// 2*pi / period: converts an integer wavenumber into a frequency.
  double frequency_unit() const;

  std::size_t physical_size() const { return static_cast<std::size_t>(n_) * n_; }
  int spectral_cols() const { return n_ / 2 + 1; }
  std::size_t spectral_size() const {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(spectral_cols());
  }

  /// Signed integer wavenumber for row/column index j in [0, n).
  int signed_wavenumber(int j) const { return j <= n_ / 2 ? j : j - n_; }

  /// Largest integer wavenumber kept per axis by the dealiasing rule.
  int dealias_cutoff() const;

  bool retained(int k1, int k2) const;

  /// True for the k1 = n/2 column or the k2 = n/2 row, whose sign is
  /// ambiguous on the grid.
  bool is_nyquist(int col, int row) const { return col == n_ / 2 || row == n_ / 2; }

  double x(int i) const { return i * dx(); }

  friend bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.n_ == b.n_ && a.period_ == b.period_ && a.dealias_ == b.dealias_;
  }

 private:
  int n_;
  double period_;
  double dealias_;
};

}  // namespace logbouss
