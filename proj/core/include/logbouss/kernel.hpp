#pragma once

#include <span>
#include <vector>

#include "logbouss/phi.hpp"
#include "logbouss/spectral_field.hpp"

namespace logbouss {

/// Quadrature controls for the radial Fourier inversion of exp(-t phi).
struct KernelOptions {
  /// Bound on the truncated frequency tail, exp(-t phi(P)) (1+P)^d.
  double tail_tolerance = 1e-10;
  /// Relative target of each adaptive Gauss-Kronrod panel.
  double panel_tolerance = 1e-12;
  /// Truncation search gives up beyond this frequency.
  double max_frequency = 1e15;
};

/// Integration path used for one kernel value.
///
/// real_axis integrates exp(-t phi(rho)) times the oscillatory radial factor
/// over [0, P] in panels of half an oscillation period. rotated_contour
/// turns the path onto the positive imaginary axis rho = i s, where the
/// oscillation becomes exp(-s r) (or K0(s r) in the plane); exp(-t phi) is
/// analytic in the open first quadrant, so both give the same value.
enum class KernelRoute { automatic, real_axis, rotated_contour };

/// K_t(x) at |x| = r in dimension d in {1, 2, 3}, where the Fourier
/// transform of K_t is exp(-t phi(|xi|)). Throws DomainError for bad
/// arguments and ConvergenceError when no truncation point meets the bound.
double kernel_value(double r, double t, const PhiParams& params, int d,
                    const KernelOptions& options = {},
                    KernelRoute route = KernelRoute::automatic);

/// The route kernel_value picks by default (fewest oscillations).
KernelRoute preferred_route(double r, double t, const PhiParams& params, int d,
                            const KernelOptions& options = {});

/// Integral of K_t over R^d: the radial integral over [0, R] of sampled
/// values against |S^{d-1}| r^{d-1}, plus the mass beyond R obtained in
/// closed form along the rotated contour.
double kernel_mass(double t, const PhiParams& params, int d, const KernelOptions& options = {});

struct KernelReport {
  double t = 0.0;
  int d = 0;
  PhiParams params;
  std::vector<double> radii;
  std::vector<double> values;
  double mass = 0.0;
  double min_value = 0.0;
  double argmin = 0.0;
  AskeyVerdict askey;
};

/// Kernel samples on the given radii, mass and minimum, and the Askey
/// verdict on the standard grid of 200 log-spaced radii in [1e-3, 1e6].
KernelReport kernel_eval(double t, const PhiParams& params, int d, std::span<const double> radii,
                         const KernelOptions& options = {});

/// 0 followed by 120 log-spaced radii in [1e-3, 1e4].
std::vector<double> default_kernel_radii();

/// The 200-point grid used for Askey checks.
std::vector<double> askey_radii();

/// ||exp(-t kappa L) f||_{L^p} for each t, applying the semigroup on the
/// coefficients of f.
std::vector<double> semigroup_contraction_probe(const PhiParams& params, const SpectralField& f,
                                                std::span<const double> times, double p,
                                                double kappa = 1.0);

}  // namespace logbouss
