#include "logbouss/presets.hpp"

#include <cmath>
#include <numbers>

#include "logbouss/error.hpp"
#include "logbouss/initial_data.hpp"

namespace logbouss {

namespace {

constexpr double kPi = std::numbers::pi;

struct Defaults {
  int n;
  PhiParams params;
  double kappa;
  double dt;
  double t_end;
  int sample_every;
};

Defaults defaults_for(const std::string& preset) {
  if (preset == "maxprinciple") return {256, {1.0, 1.0, std::exp(5.0)}, 1.0, 0.01, 5.0, 1};
  if (preset == "maxprinciple-tg") return {256, PhiParams::at_threshold(0.5, 1.0), 1.0, 0.01, 5.0, 1};
  if (preset == "euler-check") return {256, PhiParams::at_threshold(0.5, 1.0), 1.0, 0.005, 5.0, 10};
  // dt shrinks with dx so that the time error follows the spatial one.
  if (preset == "boussinesq") return {128, PhiParams::at_threshold(0.5, 1.0), 1.0, 0.0, 1.0, 1};
  if (preset == "stratified") return {128, PhiParams::at_threshold(0.5, 1.0), 1.0, 0.01, 1.0, 1};
  if (preset == "galilean") return {128, PhiParams::at_threshold(0.5, 1.0), 1.0, 1e-3, 0.05, 1};
  std::string names;
  for (const auto& [name, _] : simulation_presets()) names += (names.empty() ? "" : ", ") + name;
  throw DomainError("unknown preset '" + preset + "'; available presets: " + names);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> simulation_presets() {
  return {
      {"maxprinciple", "transport-diffusion in the shear flow (sin x2, 0), Gaussian temperature"},
      {"maxprinciple-tg", "transport-diffusion in the Taylor-Green cell, Gaussian temperature"},
      {"euler-check", "Boussinesq with zero temperature, random band-limited vorticity"},
      {"boussinesq", "coupled run from random vorticity and a Gaussian temperature"},
      {"stratified", "zero vorticity, temperature depending on x2 only"},
      {"galilean", "kinematic run advected by the constant velocity (0.5, 0.25)"},
  };
}

SimulationRun make_simulation(const std::string& preset, std::uint64_t seed,
                              const SimulationOverrides& o) {
  Defaults d = defaults_for(preset);
  const int n = o.n.value_or(d.n);
  PhiParams params = d.params;
  if (o.alpha) params.alpha = *o.alpha;
  if (o.beta) params.beta = *o.beta;
  if (o.lambda) {
    params.lambda = *o.lambda;
  } else if (o.alpha || o.beta) {
    params.lambda = params.threshold();
  }
  params.validate();
  const Grid2D grid(n);
  SimulationRun run;
  run.preset = preset;
  run.seed = seed;
  run.dt = o.dt.value_or(d.dt > 0.0 ? d.dt : 0.01 * 128.0 / n);
  run.t_end = o.t_end.value_or(d.t_end);
  run.monitors.sample_every = o.sample_every.value_or(d.sample_every);
  const double kappa = o.kappa.value_or(d.kappa);
  if (!(run.dt > 0.0)) throw DomainError("dt must be positive");

  if (preset == "maxprinciple" || preset == "maxprinciple-tg") {
    const Velocity v = preset == "maxprinciple" ? shear_velocity(grid) : taylor_green_velocity(grid);
    run.monitors.gamma_residual = false;
    run.td.emplace(gaussian_bump(grid, kPi, kPi, 0.5),
                   PrescribedVelocity::constant_in_time(v, preset == "maxprinciple" ? "shear" : "taylor-green"),
                   kappa, params.symbol());
    return run;
  }
  SpectralField omega(grid);
  SpectralField theta(grid);
  if (preset == "euler-check" || preset == "boussinesq") {
    const double amplitude = preset == "euler-check" ? 0.5 : 1.0;
    ModeList modes = random_modes(seed, 4.0);
    for (auto& m : modes) {
      m.a *= amplitude;
      m.b *= amplitude;
    }
    omega = from_modes(grid, modes);
  }
  if (preset == "boussinesq") theta = gaussian_bump(grid, kPi, kPi, 0.5);
  if (preset == "stratified") theta = shear_layer(grid);
  if (preset == "galilean") theta = random_band_limited(grid, seed, 4.0);
  if (preset == "euler-check") run.monitors.gamma_residual = false;
  run.boussinesq.emplace(std::move(omega), std::move(theta), params, run.dt, run.t_end);
  if (preset == "galilean") run.boussinesq->kinematic_velocity = constant_velocity(grid, 0.5, 0.25);
  return run;
}

TrajectoryLog run_simulation(const SimulationRun& run) {
  TrajectoryLog log = run.td ? run_td(*run.td, run.t_end, run.dt, run.monitors)
                             : run_boussinesq(*run.boussinesq, run.monitors);
  log.label = run.preset;
  return log;
}

}  // namespace logbouss
