#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logbouss/evolve.hpp"

namespace logbouss {

/// Values that replace a preset's defaults when set.
struct SimulationOverrides {
  std::optional<int> n;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> lambda;
  std::optional<double> kappa;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<int> sample_every;
};

/// A fully specified run: exactly one of td / boussinesq is set.
struct SimulationRun {
  std::string preset;
  std::uint64_t seed = 0;
  double dt = 0.0;
  double t_end = 0.0;
  MonitorConfig monitors;
  std::optional<TDProblem> td;
  std::optional<BoussinesqProblem> boussinesq;
};

/// Preset names with one-line descriptions.
///   maxprinciple     transport-diffusion, shear flow, Gaussian temperature
///   maxprinciple-tg  transport-diffusion, Taylor-Green cell
///   euler-check      Boussinesq with theta0 = 0 (2D Euler)
///   boussinesq       reference coupled run, random vorticity and a Gaussian
///   stratified       omega0 = 0, theta0 a function of x2 only
///   galilean         kinematic run with a constant velocity
std::vector<std::pair<std::string, std::string>> simulation_presets();

/// Throws DomainError listing the available presets when the name is unknown.
SimulationRun make_simulation(const std::string& preset, std::uint64_t seed,
                              const SimulationOverrides& overrides = {});

TrajectoryLog run_simulation(const SimulationRun& run);

}  // namespace logbouss
