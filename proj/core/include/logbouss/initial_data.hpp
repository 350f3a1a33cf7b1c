#pragma once

#include <cstdint>
#include <vector>

#include "logbouss/multiplier.hpp"
#include "logbouss/spectral_field.hpp"

namespace logbouss {

/// a cos(k.x) + b sin(k.x) with integer wavenumber k (scaled by the grid's
/// frequency unit when sampled).
struct Mode {
  int k1 = 0;
  int k2 = 0;
  double a = 0.0;
  double b = 0.0;
};

using ModeList = std::vector<Mode>;

/// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
double unit_uniform(std::uint64_t bits);

/// Random modes with |k| <= k_max, one per half-plane wavevector, amplitudes
/// uniform in [-1, 1] times (1 + |k|)^-slope. The list only depends on the
/// seed and k_max, so it samples to the same field on every grid that
/// resolves it.
ModeList random_modes(std::uint64_t seed, double k_max, double slope = 1.0,
                      bool zero_mean = true);

/// Throws DomainError when a mode is not kept by the dealiasing rule.
SpectralField from_modes(const Grid2D& grid, const ModeList& modes);

SpectralField random_band_limited(const Grid2D& grid, std::uint64_t seed, double k_max,
                                  double slope = 1.0, bool zero_mean = true);

/// cos(k.x + phase).
SpectralField single_mode(const Grid2D& grid, int k1, int k2, double phase = 0.0);

/// Periodized Gaussian amplitude exp(-|x - c|^2 / (2 width^2)), summed over
/// the nearest images.
SpectralField gaussian_bump(const Grid2D& grid, double c1, double c2, double width,
                            double amplitude = 1.0);

/// Smooth double shear layer in x2 (a function of x2 only).
SpectralField shear_layer(const Grid2D& grid, double thickness = 0.5, double amplitude = 1.0);

/// Vorticity of the Taylor-Green cell, 2 a sin(x1) sin(x2) in unit
/// wavenumbers.
SpectralField taylor_green_vorticity(const Grid2D& grid, double amplitude = 1.0);

/// v = (a sin(x2), 0).
Velocity shear_velocity(const Grid2D& grid, double amplitude = 1.0);

/// v = a (sin x1 cos x2, -cos x1 sin x2).
Velocity taylor_green_velocity(const Grid2D& grid, double amplitude = 1.0);

Velocity constant_velocity(const Grid2D& grid, double c1, double c2);

}  // namespace logbouss
