#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "logbouss/littlewood_paley.hpp"
#include "logbouss/multiplier.hpp"
#include "logbouss/norms.hpp"
#include "logbouss/phi.hpp"

namespace logbouss {

/// Divergence-free velocity given as a function of time.
struct PrescribedVelocity {
  std::string name;
  std::function<Velocity(const Grid2D&, double t)> at;
  bool steady = true;

  static PrescribedVelocity constant_in_time(Velocity v, std::string name);
};

/// theta_t + v.grad theta + kappa L theta = f on the torus.
struct TDProblem {
  TDProblem(SpectralField theta0, PrescribedVelocity velocity, double kappa,
            MultiplierSymbol dissipation)
      : theta0(std::move(theta0)), velocity(std::move(velocity)), kappa(kappa),
        dissipation(std::move(dissipation)) {}

  SpectralField theta0;
  PrescribedVelocity velocity;
  double kappa;
  MultiplierSymbol dissipation;
  /// Optional forcing f(t); empty means f = 0.
  std::function<SpectralField(const Grid2D&, double t)> forcing;
  /// dt must satisfy dt <= cfl * dx / max|v|.
  double cfl = 0.5;
};

/// Integrating-factor RK2 stepper for one TDProblem. The prescribed velocity
/// is truncated to the dealiasing band and checked to be divergence-free to
/// 1e-10 (relative to its size) on every sample.
class TdStepper {
 public:
  TdStepper(const TDProblem& problem, double dt);

  SpectralField step(const SpectralField& theta, double t) const;
  /// Truncated velocity at time t (cached when steady).
  Velocity velocity(double t) const;

  double dt() const { return dt_; }

 private:
  void rhs(const ComplexVector& theta, const Velocity& v, double t, ComplexVector& out) const;

  const TDProblem* problem_;
  Grid2D grid_;
  double dt_;
  std::vector<double> decay_;
  std::optional<Velocity> steady_velocity_;
};

/// One step from time t to t + dt. Throws SolverError on a CFL violation or
/// a non-finite state.
SpectralField step_td(const SpectralField& state, const TDProblem& problem, double dt,
                      double t = 0.0);

/// 2D Boussinesq system in vorticity form with dissipation |D|/log^a(lambda+|D|)
/// on the temperature.
struct BoussinesqProblem {
  BoussinesqProblem(SpectralField omega0, SpectralField theta0, PhiParams params, double dt,
                    double t_end)
      : omega0(std::move(omega0)), theta0(std::move(theta0)), params(params), dt(dt),
        t_end(t_end) {}

  SpectralField omega0;
  SpectralField theta0;
  PhiParams params;
  double dt;
  double t_end;
  double cfl = 0.5;
  /// When set, this fixed divergence-free field replaces the Biot-Savart
  /// velocity (kinematic mode, used for Galilean checks).
  std::optional<Velocity> kinematic_velocity;

  /// Throws DomainError unless beta = 1, the fields share a grid, omega0 has
  /// zero mean, dt > 0 and t_end >= 0.
  void validate() const;
  /// alpha in [0, 1/2], where global well-posedness is known.
  bool in_well_posed_range() const { return params.alpha <= 0.5; }
};

struct BoussinesqState {
  double t = 0.0;
  SpectralField omega;
  SpectralField theta;
};

/// Exact linear propagator (dissipation plus buoyancy coupling) combined with
/// RK2 for advection, in integrating-factor form. Gamma = omega + R_a theta is
/// left unchanged by the linear propagator.
class BoussinesqStepper {
 public:
  explicit BoussinesqStepper(const BoussinesqProblem& problem);

  BoussinesqState step(const BoussinesqState& state) const;
  Velocity velocity(const SpectralField& omega) const;

 private:
  void rhs(const ComplexVector& omega, const ComplexVector& theta, ComplexVector& n_omega,
           ComplexVector& n_theta) const;
  void propagate(ComplexVector& omega, ComplexVector& theta) const;

  const BoussinesqProblem* problem_;
  Grid2D grid_;
  std::vector<double> decay_;
  std::vector<Complex> coupling_;
  std::optional<Velocity> kinematic_;
};

BoussinesqState step_boussinesq(const BoussinesqState& state, const BoussinesqProblem& problem);

/// Gamma = omega + R_a theta.
SpectralField gamma_field(const SpectralField& omega, const SpectralField& theta,
                          const PhiParams& params);

/// L2 norm of dGamma/dt + v.grad Gamma + [R_a, v.grad] theta at the middle of
/// three consecutive snapshots, with the time derivative taken as the
/// centered difference (gamma_next - gamma_prev) / (2 dt). Products are
/// dealiased.
double gamma_residual(const SpectralField& gamma_prev, const SpectralField& gamma_next, double dt,
                      const SpectralField& omega, const SpectralField& theta, const Velocity& v,
                      const PhiParams& params);

/// Quantities recorded while a run advances.
struct MonitorConfig {
  std::vector<double> p_list{1.0, 2.0, 4.0, kInfinity};
  /// Lebesgue exponent of the dyadic block norms and the smoothing sums.
  double block_p = 2.0;
  /// Record a row every this many steps (the last step is always recorded).
  int sample_every = 1;
  /// Use the Newton-refined supremum for p = inf instead of the grid maximum.
  bool refined_sup = true;
  bool gamma_residual = true;
};

/// Time series of a run. Norm arrays are indexed [sample][p index]; block
/// arrays are indexed [sample][q + 1] for q = -1..q_max.
struct TrajectoryLog {
  std::string scheme;
  std::string label;
  int n = 0;
  double dt = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  double lambda = 2.0;
  double kappa = 1.0;
  std::vector<double> p_list;
  double block_p = 2.0;

  std::vector<double> times;
  std::vector<std::vector<double>> theta_norms;
  std::vector<std::vector<double>> omega_norms;
  std::vector<std::vector<double>> theta_blocks;
  /// 2^q (1+q)^-alpha int_0^t ||Delta_q theta||_p, per q.
  std::vector<std::vector<double>> smoothing;
  /// ||theta||_{B^0_{p,1}} with p = block_p.
  std::vector<double> theta_besov;
  /// int_0^t ||grad v||_inf.
  std::vector<double> velocity_gradient_integral;
  /// int_0^t ||omega||_{L^p}, p = block_p.
  std::vector<double> omega_lp_integral;
  /// Gamma residual at each sampled time; NaN where it is not defined (first
  /// and last step, or TD runs).
  std::vector<double> gamma_residual;

  double theta0_lp = 0.0;
  double theta0_sup = 0.0;
  double theta0_besov = 0.0;
};

TrajectoryLog run_td(const TDProblem& problem, double t_end, double dt,
                     const MonitorConfig& monitors = {});

TrajectoryLog run_boussinesq(const BoussinesqProblem& problem, const MonitorConfig& monitors = {});

/// sup over q >= 0 of the final smoothing sums.
double smoothing_functional(const TrajectoryLog& log);

/// smoothing_functional / (||theta0||_p + ||theta0||_inf ||omega||_{L^1_t L^p}).
double smoothing_ratio(const TrajectoryLog& log);

/// sup_t ||theta||_{B^0_{p,1}} / (||theta0||_{B^0_{p,1}} (1 + V(t_end))).
double log_estimate_constant(const TrajectoryLog& log);

/// Largest increase ||theta(t_{k+1})||_p - ||theta(t_k)||_p over the run,
/// per p (negative when strictly decreasing).
std::vector<double> max_norm_increase(const TrajectoryLog& log);

}  // namespace logbouss
