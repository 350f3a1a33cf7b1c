#pragma once

#include <limits>

#include "logbouss/multiplier.hpp"
#include "logbouss/spectral_field.hpp"

namespace logbouss {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Lebesgue norm by uniform Riemann sum (cell area weights); p = inf gives
/// the largest sample magnitude. Throws DomainError for p < 1.
double lp_norm(const SpectralField& f, double p);
double lp_norm(const Grid2D& grid, std::span<const double> values, double p);

/// L2 norm computed from the coefficients: area * sum |c_k|^2.
double parseval_l2(const SpectralField& f);

/// Supremum of |f| over the torus for the trigonometric interpolant: the
/// grid maximum refined by Newton iteration on the spectral representation.
double sup_norm_refined(const SpectralField& f);

/// Pointwise Frobenius norm of the velocity gradient, |grad v|(x).
SpectralField gradient_magnitude(const Velocity& v);

/// ||grad v||_{L^p} using the pointwise Frobenius norm.
double velocity_gradient_norm(const Velocity& v, double p);

}  // namespace logbouss
