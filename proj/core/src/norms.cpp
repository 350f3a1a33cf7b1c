#include "logbouss/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "logbouss/error.hpp"

namespace logbouss {

double lp_norm(const Grid2D& grid, std::span<const double> values, double p) {
  if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  if (p == 1.0) {
    for (double v : values) sum += std::abs(v);
    return sum * grid.cell_area();
  }
  if (p == 2.0) {
    for (double v : values) sum += v * v;
    return std::sqrt(sum * grid.cell_area());
  }
  for (double v : values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * grid.cell_area(), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) { return lp_norm(f.grid(), f.values(), p); }

double parseval_l2(const SpectralField& f) {
  const Grid2D& g = f.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  const auto c = f.coeffs();
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < nc; ++k) {
      sum += hermitian_weight(g, k) * std::norm(c[static_cast<std::size_t>(j) * nc + k]);
    }
  }
  return std::sqrt(sum * g.area());
}

namespace {

// Value, gradient and Hessian of the trigonometric interpolant at a point.
struct LocalJet {
  double f, fx, fy, fxx, fxy, fyy;
};

LocalJet evaluate_jet(const SpectralField& f, double x, double y) {
  const Grid2D& g = f.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  const double unit = g.frequency_unit();
  const auto c = f.coeffs();
  std::vector<Complex> ex(nc);
  for (int k = 0; k < nc; ++k) ex[k] = std::polar(1.0, unit * k * x);
  LocalJet jet{};
  for (int j = 0; j < n; ++j) {
    const int k2 = g.signed_wavenumber(j);
    const double b = unit * k2;
    const Complex ey = std::polar(1.0, b * y);
    for (int k = 0; k < nc; ++k) {
      // Nyquist terms are ambiguous off-grid; drop them.
      if (g.is_nyquist(k, j)) continue;
      const double w = hermitian_weight(g, k);
      const double a = unit * k;
      const Complex term = c[static_cast<std::size_t>(j) * nc + k] * ex[k] * ey;
      const double re = w * term.real();
      const double im = w * term.imag();
      jet.f += re;
      jet.fx += -a * im;
      jet.fy += -b * im;
      jet.fxx += -a * a * re;
      jet.fxy += -a * b * re;
      jet.fyy += -b * b * re;
    }
  }
  return jet;
}

}  // namespace

namespace {

double newton_refine(const SpectralField& f, double x, double y, double start) {
  const Grid2D& g = f.grid();
  double refined = start;
  for (int iter = 0; iter < 8; ++iter) {
    const LocalJet jet = evaluate_jet(f, x, y);
    refined = std::max(refined, std::abs(jet.f));
    const double det = jet.fxx * jet.fyy - jet.fxy * jet.fxy;
    if (det == 0.0) break;
    double dx = -(jet.fyy * jet.fx - jet.fxy * jet.fy) / det;
    double dy = -(-jet.fxy * jet.fx + jet.fxx * jet.fy) / det;
    // Stay inside the cell neighbourhood of the grid maximum.
    const double limit = g.dx();
    const double step = std::hypot(dx, dy);
    if (step > limit) {
      dx *= limit / step;
      dy *= limit / step;
    }
    x += dx;
    y += dy;
    if (step < 1e-14 * g.period()) break;
  }
  return std::max(refined, std::abs(evaluate_jet(f, x, y).f));
}

}  // namespace

double sup_norm_refined(const SpectralField& f) {
  const auto v = f.values();
  const Grid2D& g = f.grid();
  const int n = g.n();
  double grid_max = 0.0;
  for (double a : v) grid_max = std::max(grid_max, std::abs(a));
  if (grid_max == 0.0) return 0.0;
  // Grid-local maxima of |f| close to the grid maximum; symmetric fields
  // have several and the continuous maximum may sit near any of them.
  std::vector<std::pair<double, std::size_t>> candidates;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * n + i;
      const double a = std::abs(v[idx]);
      if (a < 0.95 * grid_max) continue;
      bool is_max = true;
      for (int dj = -1; dj <= 1 && is_max; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const std::size_t nb = static_cast<std::size_t>((j + dj + n) % n) * n + (i + di + n) % n;
          if (std::abs(v[nb]) > a) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) candidates.emplace_back(a, idx);
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& l, const auto& r) { return l.first > r.first || (l.first == r.first && l.second < r.second); });
  constexpr std::size_t kMaxCandidates = 6;
  if (candidates.size() > kMaxCandidates) candidates.resize(kMaxCandidates);
  double refined = grid_max;
  for (const auto& [a, idx] : candidates) {
    refined = std::max(refined, newton_refine(f, g.x(static_cast<int>(idx % n)),
                                              g.x(static_cast<int>(idx / n)), a));
  }
  return refined;
}

SpectralField gradient_magnitude(const Velocity& v) {
  const SymbolTable d1(v.v1.grid(), derivative_symbol(1));
  const SymbolTable d2(v.v1.grid(), derivative_symbol(2));
  const SpectralField a = apply_multiplier(v.v1, d1);
  const SpectralField b = apply_multiplier(v.v1, d2);
  const SpectralField c = apply_multiplier(v.v2, d1);
  const SpectralField d = apply_multiplier(v.v2, d2);
  RealVector out(a.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = std::sqrt(a.values()[k] * a.values()[k] + b.values()[k] * b.values()[k] +
                       c.values()[k] * c.values()[k] + d.values()[k] * d.values()[k]);
  }
  return SpectralField::from_values(v.v1.grid(), std::move(out));
}

double velocity_gradient_norm(const Velocity& v, double p) {
  return lp_norm(gradient_magnitude(v), p);
}

}  // namespace logbouss
