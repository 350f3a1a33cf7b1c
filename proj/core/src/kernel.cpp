#include "logbouss/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "logbouss/error.hpp"
#include "logbouss/multiplier.hpp"
#include "logbouss/norms.hpp"

namespace logbouss {

namespace {

using std::numbers::pi;

// Neumaier compensated sum; panel contributions alternate in sign.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class Profile {
 public:
  Profile(double t, const PhiParams& p) : t_(t), p_(p) {}

  double phi(double rho) const {
    if (rho <= 0.0) return 0.0;
    const double num = std::pow(rho, p_.beta);
    return p_.alpha == 0.0 ? num : num / std::pow(std::log(p_.lambda + rho), p_.alpha);
  }

  double F(double rho) const { return std::exp(-t_ * phi(rho)); }

  // phi(i s) on the principal branches.
  Complex phi_imag_axis(double s) const {
    if (s <= 0.0) return 0.0;
    const Complex z(0.0, s);
    const Complex num = std::exp(p_.beta * std::log(z));
    if (p_.alpha == 0.0) return num;
    return num * std::exp(-p_.alpha * std::log(std::log(Complex(p_.lambda, s))));
  }

  Complex F_imag_axis(double s) const { return std::exp(-t_ * phi_imag_axis(s)); }

  double t() const { return t_; }
  double beta() const { return p_.beta; }

 private:
  double t_;
  PhiParams p_;
};

struct Panel {
  double a;
  double b;
};

// One Gauss-Kronrod 15 evaluation on [a, b]. Boost reports the error of the
// non-adaptive rule on the reference interval [-1, 1]; it is rescaled here.
template <class G>
double gk_panel(const G& g, double a, double b, double& err, double& l1) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const double v = GK::integrate(g, a, b, 0, 0.0, &err, &l1);
  err *= 0.5 * (b - a);
  return v;
}

// Bisects until the Kronrod error estimate is below target or within a few
// ulps of the panel's L1 mass.
template <class G>
double gk_refine(const G& g, double a, double b, double estimate, double err, double l1,
                 double target, int depth) {
  if (err <= target || err <= 1e-14 * l1 || depth == 0) return estimate;
  const double mid = 0.5 * (a + b);
  double el = 0.0;
  double er = 0.0;
  double ll = 0.0;
  double lr = 0.0;
  const double vl = gk_panel(g, a, mid, el, ll);
  const double vr = gk_panel(g, mid, b, er, lr);
  return gk_refine(g, a, mid, vl, el, ll, 0.5 * target, depth - 1) +
         gk_refine(g, mid, b, vr, er, lr, 0.5 * target, depth - 1);
}

// Sum over panels. A first non-adaptive pass fixes the absolute scale (the
// L1 mass of the integrand); panels whose error estimate exceeds their share
// of tol * L1 are bisected. Roundoff sets a floor, so a relative target per
// panel would stall on cancelling panels.
template <class G>
double integrate_panels(const G& g, const std::vector<Panel>& panels, double tol) {
  std::vector<double> val(panels.size());
  std::vector<double> err(panels.size());
  std::vector<double> l1(panels.size());
  double total_l1 = 0.0;
  for (std::size_t k = 0; k < panels.size(); ++k) {
    val[k] = gk_panel(g, panels[k].a, panels[k].b, err[k], l1[k]);
    total_l1 += l1[k];
  }
  const double share = tol * total_l1 / static_cast<double>(std::max<std::size_t>(1, panels.size()));
  CompensatedSum sum;
  for (std::size_t k = 0; k < panels.size(); ++k) {
    sum.add(gk_refine(g, panels[k].a, panels[k].b, val[k], err[k], l1[k], share, 12));
  }
  return sum.value();
}

// Integral of g over [0, X] with an algebraic endpoint behaviour ~ s^{beta-1}
// or ~ s^beta at 0. The first of n_panels uniform panels is mapped through
// s = w^{1/beta} and split geometrically towards w = 0.
template <class G>
double integrate_from_origin(const G& g, double X, long n_panels, double beta, double tol) {
  const double width = X / static_cast<double>(n_panels);
  const double ex = beta < 1.0 ? 1.0 / beta : 1.0;
  const double wmax = std::pow(width, 1.0 / ex);
  auto mapped = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double s = std::pow(w, ex);
    return g(s) * ex * s / w;
  };
  constexpr int kGeometric = 16;
  std::vector<Panel> head;
  double hi = wmax;
  for (int m = 0; m < kGeometric; ++m) {
    head.push_back({0.25 * hi, hi});
    hi *= 0.25;
  }
  head.push_back({0.0, hi});
  std::vector<Panel> rest;
  for (long k = 1; k < n_panels; ++k) {
    const double a = width * static_cast<double>(k);
    const double b = k + 1 == n_panels ? X : width * static_cast<double>(k + 1);
    rest.push_back({a, b});
  }
  // The two pieces share one scale through the head estimate.
  const double head_value = integrate_panels(mapped, head, tol);
  return head_value + (rest.empty() ? 0.0 : integrate_panels(g, rest, tol));
}

// Smallest power-of-two multiple of `start` where bound() < tol.
template <class B>
double truncation_point(const B& bound, double start, double tol, double limit,
                        const char* what) {
  double x = start;
  while (x <= limit) {
    if (bound(x) < tol && bound(2.0 * x) < tol) {
      // Bisect back towards the smallest admissible point.
      double lo = 0.5 * x;
      double hi = x;
      for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bound(mid) < tol) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return hi;
    }
    x *= 2.0;
  }
  throw ConvergenceError(std::string("kernel quadrature: ") + what +
                         " tail bound not reached below frequency " + std::to_string(limit) +
                         " (t too small for the requested accuracy)");
}

void validate(double r, double t, const PhiParams& params, int d) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("kernel time must be positive");
  if (d < 1 || d > 3) throw DomainError("kernel dimension must be 1, 2 or 3");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("kernel radius must be >= 0");
}

double real_axis_cutoff(const Profile& prof, int d, const KernelOptions& opt) {
  auto bound = [&](double P) { return prof.F(P) * std::pow(1.0 + P, d); };
  return truncation_point(bound, 1.0, opt.tail_tolerance, opt.max_frequency, "real-axis");
}

double contour_cutoff(const Profile& prof, double r, int d, const KernelOptions& opt) {
  auto bound = [&](double S) {
    return std::exp(-S * r) * std::abs(prof.F_imag_axis(S)) * std::pow(1.0 + S, d > 1 ? 1 : 0);
  };
  const double start = r > 0.0 ? std::min(1.0, 1.0 / r) : 1.0;
  return truncation_point(bound, start, opt.tail_tolerance, opt.max_frequency, "contour");
}

double contour_half_oscillations(const Profile& prof, double S) {
  return prof.t() * std::abs(prof.phi_imag_axis(S).imag()) / pi;
}

double real_axis_value(double r, const Profile& prof, int d, const KernelOptions& opt) {
  const double P = real_axis_cutoff(prof, d, opt);
  long panels = 1;
  if (r > 0.0) panels = std::max(1L, static_cast<long>(std::ceil(P * r / pi)));
  const double tol = opt.panel_tolerance;
  switch (d) {
    case 1: {
      auto g = [&](double rho) { return prof.F(rho) * std::cos(rho * r); };
      return integrate_from_origin(g, P, panels, prof.beta(), tol) / pi;
    }
    case 2: {
      auto g = [&](double rho) { return prof.F(rho) * std::cyl_bessel_j(0.0, rho * r) * rho; };
      return integrate_from_origin(g, P, panels, prof.beta(), tol) / (2.0 * pi);
    }
    default: {
      auto g = [&](double rho) {
        const double x = rho * r;
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        return prof.F(rho) * rho * rho * sinc;
      };
      return integrate_from_origin(g, P, panels, prof.beta(), tol) / (2.0 * pi * pi);
    }
  }
}

double contour_value(double r, const Profile& prof, int d, const KernelOptions& opt) {
  if (!(r > 0.0)) throw DomainError("the rotated contour needs r > 0");
  const double S = contour_cutoff(prof, r, d, opt);
  const long panels = std::max(1L, static_cast<long>(std::ceil(contour_half_oscillations(prof, S))));
  const double tol = opt.panel_tolerance;
  switch (d) {
    case 1: {
      auto g = [&](double s) { return prof.F_imag_axis(s).imag() * std::exp(-s * r); };
      return -integrate_from_origin(g, S, panels, prof.beta(), tol) / pi;
    }
    case 2: {
      auto g = [&](double s) {
        return prof.F_imag_axis(s).imag() * s * std::cyl_bessel_k(0.0, s * r);
      };
      return -integrate_from_origin(g, S, panels, prof.beta(), tol) / (pi * pi);
    }
    default: {
      auto g = [&](double s) { return prof.F_imag_axis(s).imag() * s * std::exp(-s * r); };
      return -integrate_from_origin(g, S, panels, prof.beta(), tol) / (2.0 * pi * pi * r);
    }
  }
}

double sphere_area(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    default: return 4.0 * pi;
  }
}

// Mass of K_t outside the ball of radius R, from the contour representation
// integrated in r first.
double contour_tail_mass(double R, const Profile& prof, int d, const KernelOptions& opt) {
  auto bound = [&](double S) {
    return std::exp(-S * R) * std::abs(prof.F_imag_axis(S)) * (R + 1.0 / S);
  };
  const double S = truncation_point(bound, std::min(1.0, 1.0 / R), opt.tail_tolerance,
                                    opt.max_frequency, "tail-mass");
  const long panels = std::max(1L, static_cast<long>(std::ceil(contour_half_oscillations(prof, S))));
  const double tol = opt.panel_tolerance;
  double integral = 0.0;
  switch (d) {
    case 1: {
      auto g = [&](double s) { return prof.F_imag_axis(s).imag() * std::exp(-s * R) / s; };
      integral = integrate_from_origin(g, S, panels, prof.beta(), tol);
      break;
    }
    case 2: {
      auto g = [&](double s) {
        return prof.F_imag_axis(s).imag() * R * std::cyl_bessel_k(1.0, s * R);
      };
      integral = integrate_from_origin(g, S, panels, prof.beta(), tol);
      break;
    }
    default: {
      auto g = [&](double s) {
        return prof.F_imag_axis(s).imag() * std::exp(-s * R) * (R + 1.0 / s);
      };
      integral = integrate_from_origin(g, S, panels, prof.beta(), tol);
      break;
    }
  }
  return -2.0 / pi * integral;
}

// Frequency where t phi first reaches 1; its inverse is the kernel's core
// width.
double core_frequency(const Profile& prof) {
  double lo = 0.0;
  double hi = 1.0;
  while (prof.t() * prof.phi(hi) < 1.0 && hi < 1e300) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (prof.t() * prof.phi(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

KernelRoute preferred_route(double r, double t, const PhiParams& params, int d,
                            const KernelOptions& options) {
  validate(r, t, params, d);
  if (r == 0.0) return KernelRoute::real_axis;
  const Profile prof(t, params);
  double real_cost = 0.0;
  try {
    real_cost = real_axis_cutoff(prof, d, options) * r / pi;
  } catch (const ConvergenceError&) {
    return KernelRoute::rotated_contour;
  }
  double contour_cost = 0.0;
  try {
    contour_cost = contour_half_oscillations(prof, contour_cutoff(prof, r, d, options));
  } catch (const ConvergenceError&) {
    return KernelRoute::real_axis;
  }
  return contour_cost <= real_cost ? KernelRoute::rotated_contour : KernelRoute::real_axis;
}

double kernel_value(double r, double t, const PhiParams& params, int d,
                    const KernelOptions& options, KernelRoute route) {
  validate(r, t, params, d);
  if (route == KernelRoute::automatic) route = preferred_route(r, t, params, d, options);
  const Profile prof(t, params);
  return route == KernelRoute::real_axis ? real_axis_value(r, prof, d, options)
                                         : contour_value(r, prof, d, options);
}

double kernel_mass(double t, const PhiParams& params, int d, const KernelOptions& options) {
  validate(0.0, t, params, d);
  const Profile prof(t, params);
  const double R = 4.0 / core_frequency(prof);
  const double area = sphere_area(d);
  auto integrand = [&](double r) {
    return kernel_value(r, t, params, d, options) * area * std::pow(r, d - 1);
  };
  std::vector<Panel> panels;
  double hi = R;
  constexpr int kGeometric = 20;
  for (int m = 0; m < kGeometric; ++m) {
    panels.push_back({0.25 * hi, hi});
    hi *= 0.25;
  }
  panels.push_back({0.0, hi});
  CompensatedSum sum;
  sum.add(integrate_panels(integrand, panels, 1e-10));
  sum.add(contour_tail_mass(R, prof, d, options));
  return sum.value();
}

std::vector<double> default_kernel_radii() {
  std::vector<double> r{0.0};
  const auto rest = log_spaced(1e-3, 1e4, 120);
  r.insert(r.end(), rest.begin(), rest.end());
  return r;
}

std::vector<double> askey_radii() { return log_spaced(1e-3, 1e6, 200); }

KernelReport kernel_eval(double t, const PhiParams& params, int d, std::span<const double> radii,
                         const KernelOptions& options) {
  validate(0.0, t, params, d);
  KernelReport rep;
  rep.t = t;
  rep.d = d;
  rep.params = params;
  rep.radii.assign(radii.begin(), radii.end());
  for (std::size_t k = 1; k < rep.radii.size(); ++k) {
    if (!(rep.radii[k] > rep.radii[k - 1])) throw DomainError("kernel radii must increase strictly");
  }
  rep.values.reserve(rep.radii.size());
  rep.min_value = kInfinity;
  for (double r : rep.radii) {
    const double v = kernel_value(r, t, params, d, options);
    rep.values.push_back(v);
    if (v < rep.min_value) {
      rep.min_value = v;
      rep.argmin = r;
    }
  }
  rep.mass = kernel_mass(t, params, d, options);
  const auto grid = askey_radii();
  rep.askey = askey_check(params, grid, t);
  return rep;
}

std::vector<double> semigroup_contraction_probe(const PhiParams& params, const SpectralField& f,
                                                std::span<const double> times, double p,
                                                double kappa) {
  params.validate();
  const SymbolTable m(f.grid(), params.symbol());
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0)) throw DomainError("semigroup times must be >= 0");
    if (t == 0.0) {
      out.push_back(lp_norm(f, p));
      continue;
    }
    ComplexVector c(f.coeffs().begin(), f.coeffs().end());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::exp(-t * kappa * m[k].real());
    out.push_back(lp_norm(SpectralField::from_coeffs(f.grid(), std::move(c)), p));
  }
  return out;
}

}  // namespace logbouss
