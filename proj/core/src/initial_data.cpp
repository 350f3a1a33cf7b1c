#include "logbouss/initial_data.hpp"

#include <cmath>
#include <random>

#include "logbouss/error.hpp"

namespace logbouss {

double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ModeList random_modes(std::uint64_t seed, double k_max, double slope, bool zero_mean) {
  if (!(k_max >= 0.0)) throw DomainError("k_max must be >= 0");
  std::mt19937_64 rng(seed);
  ModeList out;
  const int kmax = static_cast<int>(std::floor(k_max));
  for (int k2 = -kmax; k2 <= kmax; ++k2) {
    for (int k1 = 0; k1 <= kmax; ++k1) {
      // Upper half plane: k1 > 0, or k1 = 0 with k2 >= 0.
      if (k1 == 0 && k2 < 0) continue;
      const double mag = std::hypot(k1, k2);
      if (mag > k_max) continue;
      const double ua = 2.0 * unit_uniform(rng()) - 1.0;
      const double ub = 2.0 * unit_uniform(rng()) - 1.0;
      if (k1 == 0 && k2 == 0 && zero_mean) continue;
      const double w = std::pow(1.0 + mag, -slope);
      out.push_back({k1, k2, ua * w, (k1 == 0 && k2 == 0) ? 0.0 : ub * w});
    }
  }
  return out;
}

SpectralField from_modes(const Grid2D& grid, const ModeList& modes) {
  const int n = grid.n();
  const int nc = grid.spectral_cols();
  ComplexVector c(grid.spectral_size(), 0.0);
  for (const auto& m : modes) {
    if (!grid.retained(m.k1, m.k2)) {
      throw DomainError("mode (" + std::to_string(m.k1) + ", " + std::to_string(m.k2) +
                        ") is not resolved on an n = " + std::to_string(n) + " grid");
    }
    // a cos + b sin = Re((a - i b) e^{ik.x}).
    int k1 = m.k1;
    int k2 = m.k2;
    Complex z(m.a, -m.b);
    if (k1 == 0 && k2 == 0) {
      c[0] += m.a;
      continue;
    }
    if (k1 < 0) {
      k1 = -k1;
      k2 = -k2;
      z = std::conj(z);
    }
    const std::size_t row = static_cast<std::size_t>((k2 % n + n) % n);
    if (k1 == 0) {
      // Column 0 holds both k2 and -k2.
      const std::size_t mirror = static_cast<std::size_t>((n - static_cast<int>(row)) % n);
      c[row * nc] += 0.5 * z;
      c[mirror * nc] += 0.5 * std::conj(z);
    } else {
      c[row * nc + k1] += 0.5 * z;
    }
  }
  return SpectralField::from_coeffs(grid, std::move(c));
}

SpectralField random_band_limited(const Grid2D& grid, std::uint64_t seed, double k_max,
                                  double slope, bool zero_mean) {
  return from_modes(grid, random_modes(seed, k_max, slope, zero_mean));
}

SpectralField single_mode(const Grid2D& grid, int k1, int k2, double phase) {
  return from_modes(grid, {{k1, k2, std::cos(phase), -std::sin(phase)}});
}

SpectralField gaussian_bump(const Grid2D& grid, double c1, double c2, double width,
                            double amplitude) {
  if (!(width > 0.0)) throw DomainError("Gaussian width must be positive");
  const double L = grid.period();
  return SpectralField::sample(grid, [&](double x1, double x2) {
    double s = 0.0;
    for (int a = -1; a <= 1; ++a) {
      for (int b = -1; b <= 1; ++b) {
        const double d1 = x1 - c1 + a * L;
        const double d2 = x2 - c2 + b * L;
        s += std::exp(-(d1 * d1 + d2 * d2) / (2.0 * width * width));
      }
    }
    return amplitude * s;
  });
}

SpectralField shear_layer(const Grid2D& grid, double thickness, double amplitude) {
  if (!(thickness > 0.0)) throw DomainError("shear layer thickness must be positive");
  const double u = grid.frequency_unit();
  return SpectralField::sample(grid, [&](double, double x2) {
    // Two opposite tanh fronts joined into a periodic profile.
    const double y = x2 * u;
    return amplitude * std::tanh(std::sin(y) / thickness) / std::tanh(1.0 / thickness);
  });
}

SpectralField taylor_green_vorticity(const Grid2D& grid, double amplitude) {
  const double u = grid.frequency_unit();
  return SpectralField::sample(grid, [&](double x1, double x2) {
    return 2.0 * amplitude * std::sin(u * x1) * std::sin(u * x2);
  });
}

Velocity shear_velocity(const Grid2D& grid, double amplitude) {
  const double u = grid.frequency_unit();
  return {SpectralField::sample(grid, [&](double, double x2) { return amplitude * std::sin(u * x2); }),
          SpectralField(grid)};
}

Velocity taylor_green_velocity(const Grid2D& grid, double amplitude) {
  const double u = grid.frequency_unit();
  return {SpectralField::sample(grid,
                                [&](double x1, double x2) {
                                  return amplitude * std::sin(u * x1) * std::cos(u * x2);
                                }),
          SpectralField::sample(grid, [&](double x1, double x2) {
            return -amplitude * std::cos(u * x1) * std::sin(u * x2);
          })};
}

Velocity constant_velocity(const Grid2D& grid, double c1, double c2) {
  return {SpectralField::constant(grid, c1), SpectralField::constant(grid, c2)};
}

}  // namespace logbouss
