#include "logbouss/grid.hpp"

#include <cmath>
#include <string>

#include "logbouss/error.hpp"

namespace logbouss {

Grid2D::Grid2D(int n, double period, double dealias_fraction)
    : n_(n), period_(period), dealias_(dealias_fraction) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw DomainError("grid size must be a power of two >= 16, got " + std::to_string(n));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw DomainError("grid period must be positive and finite");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw DomainError("dealias fraction must lie in (0, 1]");
  }
}

double Grid2D::frequency_unit() const { return 2.0 * std::numbers::pi / period_; }

int Grid2D::dealias_cutoff() const {
  return static_cast<int>(std::floor(dealias_ * n_ / 2.0 + 1e-12));
}

bool Grid2D::retained(int k1, int k2) const {
  const int cut = dealias_cutoff();
  return std::abs(k1) <= cut && std::abs(k2) <= cut;
}

}  // namespace logbouss
