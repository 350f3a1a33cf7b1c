#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "logbouss/presets.hpp"

namespace logbouss::cli {

/// Everything a subcommand needs, after flags and the config file are merged.
struct RunConfig {
  std::string subcommand;
  std::filesystem::path out{"logbouss-out"};
  std::uint64_t seed = 20240601;
  std::optional<int> grid;
  bool plots = false;
  bool json_only = false;

  // Parameter ranges. Each entry is a number, a comma separated list, or
  // lo:hi:count (linear) / lo:hi:count:log.
  std::vector<std::string> alpha;
  std::vector<std::string> beta;
  std::vector<std::string> lambda;
  std::vector<std::string> d;
  std::vector<std::string> t;

  // simulate
  std::string preset = "maxprinciple";
  std::optional<double> kappa;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<int> sample_every;

  // verify, bernstein, commutator
  std::vector<std::string> grids;
  std::vector<std::string> bernstein_p;
  std::vector<std::string> multiplier_p;
  std::vector<std::string> commutator_p;
  std::vector<std::string> commutator_r;
  std::vector<std::string> epsilon;
  double rho = 2.0;
  double ceiling = 1e3;
  double drift_tolerance = 0.25;
  int random_fields = 2;
};

/// Expands range tokens; throws DomainError naming the field when the result
/// is empty or a token does not parse.
std::vector<double> parse_range(const std::string& field, const std::vector<std::string>& tokens);

/// Canonical key = value listing of the settings that affect results.
std::string canonical_config(const RunConfig& config);

int cmd_kernel(const RunConfig& config);
int cmd_askey(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
/// Returns 0 when every report passes and 1 otherwise.
int cmd_verify(const RunConfig& config);

}  // namespace logbouss::cli
