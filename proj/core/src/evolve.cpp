#include "logbouss/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "logbouss/error.hpp"

namespace logbouss {

namespace {

// out = -P(v1 d1 f + v2 d2 f) for coefficients f and a velocity on the grid.
void advection(const Grid2D& grid, const RealVector& v1, const RealVector& v2,
               const ComplexVector& f, ComplexVector& out) {
  const int n = grid.n();
  const int nc = grid.spectral_cols();
  const double unit = grid.frequency_unit();
  ComplexVector d1(f.size());
  ComplexVector d2(f.size());
  for (int j = 0; j < n; ++j) {
    const double xi2 = unit * grid.signed_wavenumber(j);
    for (int k = 0; k < nc; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j) * nc + k;
      if (grid.is_nyquist(k, j)) {
        d1[idx] = 0.0;
        d2[idx] = 0.0;
        continue;
      }
      d1[idx] = Complex(0.0, unit * k) * f[idx];
      d2[idx] = Complex(0.0, xi2) * f[idx];
    }
  }
  const auto& fft = FourierTransform::for_size(n);
  RealVector g1;
  RealVector g2;
  fft.inverse(d1, g1);
  fft.inverse(d2, g2);
  for (std::size_t k = 0; k < g1.size(); ++k) g1[k] = v1[k] * g1[k] + v2[k] * g2[k];
  fft.forward(g1, out);
  apply_dealias(grid, out);
  for (auto& c : out) c = -c;
}

double max_speed(const Velocity& v) {
  double m = 0.0;
  const auto a = v.v1.values();
  const auto b = v.v2.values();
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::hypot(a[k], b[k]));
  return m;
}

Velocity truncate_velocity(const Grid2D& grid, const Velocity& v, const std::string& name) {
  if (!(v.v1.grid() == grid) || !(v.v2.grid() == grid)) {
    throw GridMismatch("velocity '" + name + "' lives on another grid");
  }
  ComplexVector c1 = v.v1.coeff_vector();
  ComplexVector c2 = v.v2.coeff_vector();
  apply_dealias(grid, c1);
  apply_dealias(grid, c2);
  Velocity out{SpectralField::from_coeffs(grid, std::move(c1)),
               SpectralField::from_coeffs(grid, std::move(c2))};
  const double div = lp_norm(divergence(out), kInfinity);
  if (div > 1e-10 * (1.0 + max_speed(out))) {
    std::ostringstream msg;
    msg << "velocity '" << name << "' is not divergence-free (max |div v| = " << div << ")";
    throw DomainError(msg.str());
  }
  return out;
}

void check_cfl(double dt, double cfl, const Grid2D& grid, const Velocity& v) {
  const double speed = max_speed(v);
  if (speed > 0.0 && dt > cfl * grid.dx() / speed) {
    std::ostringstream msg;
    msg << "CFL condition violated: dt = " << dt << " exceeds " << cfl << " * dx / max|v| = "
        << cfl * grid.dx() / speed;
    throw SolverError(msg.str());
  }
}

void require_finite(const ComplexVector& c, const char* what) {
  for (const auto& z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw SolverError(std::string("non-finite value in ") + what);
    }
  }
}

double coefficient_l2(const Grid2D& grid, const ComplexVector& c) {
  const int n = grid.n();
  const int nc = grid.spectral_cols();
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < nc; ++k) {
      sum += hermitian_weight(grid, k) * std::norm(c[static_cast<std::size_t>(j) * nc + k]);
    }
  }
  return std::sqrt(sum * grid.area());
}

}  // namespace

PrescribedVelocity PrescribedVelocity::constant_in_time(Velocity v, std::string name) {
  PrescribedVelocity out;
  out.name = std::move(name);
  out.steady = true;
  out.at = [v = std::move(v)](const Grid2D&, double) { return v; };
  return out;
}

TdStepper::TdStepper(const TDProblem& problem, double dt)
    : problem_(&problem), grid_(problem.theta0.grid()), dt_(dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (!(problem.kappa >= 0.0)) throw DomainError("kappa must be >= 0");
  if (!problem.velocity.at) throw DomainError("TD problem has no velocity");
  if (problem.dissipation.kind() != SymbolKind::radial) {
    throw DomainError("dissipation symbol must be radial");
  }
  const SymbolTable m(grid_, problem.dissipation);
  decay_.resize(grid_.spectral_size());
  for (std::size_t k = 0; k < decay_.size(); ++k) {
    decay_[k] = std::exp(-problem.kappa * m[k].real() * dt);
  }
  if (problem.velocity.steady) {
    steady_velocity_ = truncate_velocity(grid_, problem.velocity.at(grid_, 0.0),
                                         problem.velocity.name);
  }
}

Velocity TdStepper::velocity(double t) const {
  if (steady_velocity_) return *steady_velocity_;
  return truncate_velocity(grid_, problem_->velocity.at(grid_, t), problem_->velocity.name);
}

void TdStepper::rhs(const ComplexVector& theta, const Velocity& v, double t,
                    ComplexVector& out) const {
  advection(grid_, v.v1.value_vector(), v.v2.value_vector(), theta, out);
  if (problem_->forcing) {
    const SpectralField f = problem_->forcing(grid_, t);
    if (!(f.grid() == grid_)) throw GridMismatch("forcing lives on another grid");
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += f.coeffs()[k];
  }
}

SpectralField TdStepper::step(const SpectralField& theta, double t) const {
  if (!(theta.grid() == grid_)) throw GridMismatch("state lives on another grid");
  const double h = dt_;
  const Velocity v0 = velocity(t);
  check_cfl(h, problem_->cfl, grid_, v0);
  const ComplexVector& y = theta.coeff_vector();
  ComplexVector k1;
  rhs(y, v0, t, k1);
  ComplexVector mid(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) mid[k] = decay_[k] * (y[k] + h * k1[k]);
  ComplexVector k2;
  if (steady_velocity_) {
    rhs(mid, v0, t + h, k2);
  } else {
    const Velocity v1 = velocity(t + h);
    check_cfl(h, problem_->cfl, grid_, v1);
    rhs(mid, v1, t + h, k2);
  }
  ComplexVector next(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    next[k] = decay_[k] * (y[k] + 0.5 * h * k1[k]) + 0.5 * h * k2[k];
  }
  require_finite(next, "temperature");
  return SpectralField::from_coeffs(grid_, std::move(next));
}

SpectralField step_td(const SpectralField& state, const TDProblem& problem, double dt, double t) {
  return TdStepper(problem, dt).step(state, t);
}

void BoussinesqProblem::validate() const {
  params.validate();
  if (params.beta != 1.0) throw DomainError("the Boussinesq dissipation needs beta = 1");
  if (!(omega0.grid() == theta0.grid())) throw GridMismatch("omega0 and theta0 grids differ");
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (!(t_end >= 0.0)) throw DomainError("end time must be >= 0");
  double peak = 0.0;
  for (double v : omega0.values()) peak = std::max(peak, std::abs(v));
  if (std::abs(omega0.mean()) > 1e-12 * (1.0 + peak)) {
    throw DomainError("omega0 must have zero mean");
  }
}

BoussinesqStepper::BoussinesqStepper(const BoussinesqProblem& problem)
    : problem_(&problem), grid_(problem.omega0.grid()) {
  problem.validate();
  const SymbolTable m(grid_, problem.params.symbol());
  const int n = grid_.n();
  const int nc = grid_.spectral_cols();
  const double unit = grid_.frequency_unit();
  const double h = problem.dt;
  decay_.resize(grid_.spectral_size());
  coupling_.resize(grid_.spectral_size());
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < nc; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j) * nc + k;
      const double mk = m[idx].real();
      decay_[idx] = std::exp(-mk * h);
      // omega gains i xi1 int_0^h e^{-m s} ds theta.
      const double weight = mk > 0.0 ? -std::expm1(-mk * h) / mk : h;
      coupling_[idx] = grid_.is_nyquist(k, j) ? Complex(0.0) : Complex(0.0, unit * k * weight);
    }
  }
  if (problem.kinematic_velocity) {
    kinematic_ = truncate_velocity(grid_, *problem.kinematic_velocity, "kinematic");
  }
}

Velocity BoussinesqStepper::velocity(const SpectralField& omega) const {
  if (kinematic_) return *kinematic_;
  ComplexVector c1;
  ComplexVector c2;
  biot_savart_coeffs(grid_, omega.coeff_vector(), c1, c2);
  return {SpectralField::from_coeffs(grid_, std::move(c1)),
          SpectralField::from_coeffs(grid_, std::move(c2))};
}

void BoussinesqStepper::rhs(const ComplexVector& omega, const ComplexVector& theta,
                            ComplexVector& n_omega, ComplexVector& n_theta) const {
  const auto& fft = FourierTransform::for_size(grid_.n());
  RealVector v1;
  RealVector v2;
  if (kinematic_) {
    v1 = kinematic_->v1.value_vector();
    v2 = kinematic_->v2.value_vector();
  } else {
    ComplexVector c1;
    ComplexVector c2;
    biot_savart_coeffs(grid_, omega, c1, c2);
    fft.inverse(c1, v1);
    fft.inverse(c2, v2);
  }
  advection(grid_, v1, v2, omega, n_omega);
  advection(grid_, v1, v2, theta, n_theta);
}

void BoussinesqStepper::propagate(ComplexVector& omega, ComplexVector& theta) const {
  for (std::size_t k = 0; k < omega.size(); ++k) {
    omega[k] += coupling_[k] * theta[k];
    theta[k] *= decay_[k];
  }
}

BoussinesqState BoussinesqStepper::step(const BoussinesqState& state) const {
  if (!(state.omega.grid() == grid_) || !(state.theta.grid() == grid_)) {
    throw GridMismatch("state lives on another grid");
  }
  const double h = problem_->dt;
  check_cfl(h, problem_->cfl, grid_, velocity(state.omega));
  const ComplexVector& w = state.omega.coeff_vector();
  const ComplexVector& th = state.theta.coeff_vector();
  ComplexVector kw1;
  ComplexVector kt1;
  rhs(w, th, kw1, kt1);
  ComplexVector wm(w.size());
  ComplexVector tm(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    wm[k] = w[k] + h * kw1[k];
    tm[k] = th[k] + h * kt1[k];
  }
  propagate(wm, tm);
  ComplexVector kw2;
  ComplexVector kt2;
  rhs(wm, tm, kw2, kt2);
  ComplexVector wn(w.size());
  ComplexVector tn(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    wn[k] = w[k] + 0.5 * h * kw1[k];
    tn[k] = th[k] + 0.5 * h * kt1[k];
  }
  propagate(wn, tn);
  for (std::size_t k = 0; k < w.size(); ++k) {
    wn[k] += 0.5 * h * kw2[k];
    tn[k] += 0.5 * h * kt2[k];
  }
  require_finite(wn, "vorticity");
  require_finite(tn, "temperature");
  return {state.t + h, SpectralField::from_coeffs(grid_, std::move(wn)),
          SpectralField::from_coeffs(grid_, std::move(tn))};
}

BoussinesqState step_boussinesq(const BoussinesqState& state, const BoussinesqProblem& problem) {
  return BoussinesqStepper(problem).step(state);
}

SpectralField gamma_field(const SpectralField& omega, const SpectralField& theta,
                          const PhiParams& params) {
  return omega + apply_multiplier(theta, riesz_log_symbol(params.alpha, params.lambda));
}

double gamma_residual(const SpectralField& gamma_prev, const SpectralField& gamma_next, double dt,
                      const SpectralField& omega, const SpectralField& theta, const Velocity& v,
                      const PhiParams& params) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const Grid2D& grid = omega.grid();
  const SymbolTable R(grid, riesz_log_symbol(params.alpha, params.lambda));
  const SpectralField gamma = gamma_field(omega, theta, params);
  const SpectralField r_theta = apply_multiplier(theta, R);
  const RealVector& v1 = v.v1.value_vector();
  const RealVector& v2 = v.v2.value_vector();
  // advection() returns -P(v.grad f).
  ComplexVector a_gamma;
  ComplexVector a_theta;
  ComplexVector a_rtheta;
  advection(grid, v1, v2, gamma.coeff_vector(), a_gamma);
  advection(grid, v1, v2, theta.coeff_vector(), a_theta);
  advection(grid, v1, v2, r_theta.coeff_vector(), a_rtheta);
  apply_multiplier_inplace(a_theta, R);
  ComplexVector res(a_gamma.size());
  const auto gp = gamma_prev.coeffs();
  const auto gn = gamma_next.coeffs();
  for (std::size_t k = 0; k < res.size(); ++k) {
    res[k] = (gn[k] - gp[k]) / (2.0 * dt) - a_gamma[k] - a_theta[k] + a_rtheta[k];
  }
  return coefficient_l2(grid, res);
}

namespace {

// Shared bookkeeping of run_td and run_boussinesq.
class Recorder {
 public:
  Recorder(const Grid2D& grid, const MonitorConfig& monitors, TrajectoryLog& log)
      : monitors_(monitors), bank_(grid), log_(log) {
    if (monitors.sample_every < 1) throw DomainError("sample_every must be >= 1");
    for (double p : monitors.p_list) {
      if (!(p >= 1.0)) throw DomainError("monitor exponents must be >= 1");
    }
    if (!(monitors.block_p >= 1.0)) throw DomainError("block exponent must be >= 1");
    log_.p_list = monitors.p_list;
    log_.block_p = monitors.block_p;
    integrals_.assign(static_cast<std::size_t>(bank_.block_count()), 0.0);
  }

  double norm(const SpectralField& f, double p) const {
    if (std::isinf(p) && monitors_.refined_sup) return sup_norm_refined(f);
    return lp_norm(f, p);
  }

  // Called at every step; integrates the time series by the trapezoid rule
  // and stores a row when requested.
  void observe(double t, const SpectralField& theta, const SpectralField& omega,
               const Velocity& v, bool record) {
    const auto blocks = block_lp_norms(theta, monitors_.block_p, bank_);
    const double grad_v = velocity_gradient_norm(v, kInfinity);
    const double omega_p = lp_norm(omega, monitors_.block_p);
    if (has_previous_) {
      const double h = t - t_prev_;
      for (std::size_t q = 0; q < blocks.size(); ++q) {
        integrals_[q] += 0.5 * h * (blocks[q] + blocks_prev_[q]);
      }
      v_integral_ += 0.5 * h * (grad_v + grad_v_prev_);
      omega_integral_ += 0.5 * h * (omega_p + omega_p_prev_);
    } else {
      log_.theta0_lp = lp_norm(theta, monitors_.block_p);
      log_.theta0_sup = norm(theta, kInfinity);
      log_.theta0_besov = besov_from_blocks(blocks, 0.0, 0.0, 1.0);
    }
    has_previous_ = true;
    t_prev_ = t;
    blocks_prev_ = blocks;
    grad_v_prev_ = grad_v;
    omega_p_prev_ = omega_p;
    if (!record) return;

    log_.times.push_back(t);
    std::vector<double> tn;
    std::vector<double> wn;
    for (double p : monitors_.p_list) {
      tn.push_back(norm(theta, p));
      wn.push_back(norm(omega, p));
    }
    log_.theta_norms.push_back(std::move(tn));
    log_.omega_norms.push_back(std::move(wn));
    std::vector<double> smooth(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const int q = static_cast<int>(i) - 1;
      smooth[i] = std::ldexp(1.0, q) * std::pow(1.0 + q, -log_.alpha) * integrals_[i];
    }
    log_.theta_blocks.push_back(blocks);
    log_.smoothing.push_back(std::move(smooth));
    log_.theta_besov.push_back(besov_from_blocks(blocks, 0.0, 0.0, 1.0));
    log_.velocity_gradient_integral.push_back(v_integral_);
    log_.omega_lp_integral.push_back(omega_integral_);
    log_.gamma_residual.push_back(std::numeric_limits<double>::quiet_NaN());
  }

 private:
  const MonitorConfig& monitors_;
  DyadicFilterBank bank_;
  TrajectoryLog& log_;
  std::vector<double> integrals_;
  std::vector<double> blocks_prev_;
  double v_integral_ = 0.0;
  double omega_integral_ = 0.0;
  double grad_v_prev_ = 0.0;
  double omega_p_prev_ = 0.0;
  double t_prev_ = 0.0;
  bool has_previous_ = false;
};

long step_count(double t_end, double dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (!(t_end >= 0.0)) throw DomainError("end time must be >= 0");
  const double ratio = t_end / dt;
  const long steps = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
    throw DomainError("end time is not a whole number of time steps");
  }
  return steps;
}

bool recorded(long step, long steps, int every) { return step % every == 0 || step == steps; }

std::string failure_context(long step, double t, const SpectralField& theta,
                            const SpectralField* omega, const std::string& what) {
  std::ostringstream msg;
  msg << what << " at step " << step << " (t = " << t << ", ||theta||_2 = " << lp_norm(theta, 2.0)
      << ", ||theta||_inf = " << lp_norm(theta, kInfinity);
  if (omega != nullptr) msg << ", ||omega||_2 = " << lp_norm(*omega, 2.0);
  msg << ")";
  return msg.str();
}

}  // namespace

TrajectoryLog run_td(const TDProblem& problem, double t_end, double dt,
                     const MonitorConfig& monitors) {
  const long steps = step_count(t_end, dt);
  const Grid2D& grid = problem.theta0.grid();
  TrajectoryLog log;
  log.scheme = "integrating-factor RK2 (transport-diffusion)";
  log.label = problem.velocity.name;
  log.n = grid.n();
  log.dt = dt;
  log.kappa = problem.kappa;
  if (const auto& lp = problem.dissipation.params()) {
    log.alpha = lp->alpha;
    log.beta = lp->beta;
    log.lambda = lp->lambda;
  }
  Recorder rec(grid, monitors, log);
  const TdStepper stepper(problem, dt);
  SpectralField theta = problem.theta0;
  double t = 0.0;
  Velocity v = stepper.velocity(t);
  SpectralField omega = curl(v);
  rec.observe(t, theta, omega, v, true);
  for (long s = 1; s <= steps; ++s) {
    try {
      theta = stepper.step(theta, t);
    } catch (const SolverError& e) {
      throw SolverError(failure_context(s, t, theta, nullptr, e.what()));
    }
    t = static_cast<double>(s) * dt;
    if (!problem.velocity.steady) {
      v = stepper.velocity(t);
      omega = curl(v);
    }
    rec.observe(t, theta, omega, v, recorded(s, steps, monitors.sample_every));
  }
  return log;
}

TrajectoryLog run_boussinesq(const BoussinesqProblem& problem, const MonitorConfig& monitors) {
  const long steps = step_count(problem.t_end, problem.dt);
  const BoussinesqStepper stepper(problem);
  const Grid2D& grid = problem.omega0.grid();
  TrajectoryLog log;
  log.scheme = problem.kinematic_velocity
                   ? "exact linear propagator + RK2 advection (Boussinesq, kinematic velocity)"
                   : "exact linear propagator + RK2 advection (Boussinesq)";
  log.label = "boussinesq";
  log.n = grid.n();
  log.dt = problem.dt;
  log.alpha = problem.params.alpha;
  log.beta = problem.params.beta;
  log.lambda = problem.params.lambda;
  log.kappa = 1.0;
  Recorder rec(grid, monitors, log);

  BoussinesqState state{0.0, problem.omega0, problem.theta0};
  Velocity v = stepper.velocity(state.omega);
  rec.observe(0.0, state.theta, state.omega, v, true);
  std::vector<long> row_of_step(static_cast<std::size_t>(steps) + 1, -1);
  row_of_step[0] = 0;
  long rows = 1;

  // Snapshots for the centered Gamma derivative: gamma at step s-1 and the
  // state (with its velocity) at step s.
  std::optional<SpectralField> gamma_prev;
  BoussinesqState current = state;
  Velocity v_current = v;
  for (long s = 1; s <= steps; ++s) {
    BoussinesqState next = [&] {
      try {
        return stepper.step(current);
      } catch (const SolverError& e) {
        throw SolverError(failure_context(s, current.t, current.theta, &current.omega, e.what()));
      }
    }();
    next.t = static_cast<double>(s) * problem.dt;
    const Velocity v_next = stepper.velocity(next.omega);
    if (monitors.gamma_residual && gamma_prev) {
      const double r = gamma_residual(*gamma_prev, gamma_field(next.omega, next.theta, problem.params),
                                      problem.dt, current.omega, current.theta, v_current,
                                      problem.params);
      const long row = row_of_step[static_cast<std::size_t>(s - 1)];
      if (row >= 0) log.gamma_residual[static_cast<std::size_t>(row)] = r;
    }
    if (monitors.gamma_residual) {
      gamma_prev = gamma_field(current.omega, current.theta, problem.params);
    }
    const bool rec_now = recorded(s, steps, monitors.sample_every);
    rec.observe(next.t, next.theta, next.omega, v_next, rec_now);
    if (rec_now) row_of_step[static_cast<std::size_t>(s)] = rows++;
    current = std::move(next);
    v_current = v_next;
  }
  return log;
}

double smoothing_functional(const TrajectoryLog& log) {
  if (log.smoothing.empty()) return 0.0;
  const auto& last = log.smoothing.back();
  double sup = 0.0;
  for (std::size_t i = 1; i < last.size(); ++i) sup = std::max(sup, last[i]);
  return sup;
}

double smoothing_ratio(const TrajectoryLog& log) {
  if (log.omega_lp_integral.empty()) return 0.0;
  const double denom = log.theta0_lp + log.theta0_sup * log.omega_lp_integral.back();
  if (denom == 0.0) return 0.0;
  return smoothing_functional(log) / denom;
}

double log_estimate_constant(const TrajectoryLog& log) {
  if (log.theta_besov.empty() || log.theta0_besov == 0.0) return 0.0;
  const double sup = *std::max_element(log.theta_besov.begin(), log.theta_besov.end());
  return sup / (log.theta0_besov * (1.0 + log.velocity_gradient_integral.back()));
}

std::vector<double> max_norm_increase(const TrajectoryLog& log) {
  std::vector<double> out(log.p_list.size(), -kInfinity);
  for (std::size_t k = 1; k < log.theta_norms.size(); ++k) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::max(out[i], log.theta_norms[k][i] - log.theta_norms[k - 1][i]);
    }
  }
  return out;
}

}  // namespace logbouss
