#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpcov/ensemble.hpp"

namespace mpcov {

enum class ExperimentKind { Convergence, Tail, LaguerreRate, MomentCheck, BoundSweep };

std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct RungSpec {
  int p = 0;
  int n = 0;
};

/// Flat key = value configuration with optional [section] headers. All
/// validation errors throw std::invalid_argument (CLI exit code 2).
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Convergence;

  // sampling ladders
  std::vector<RungSpec> rungs;  // convergence / tail
  int trials = 1;

  // tail threshold: explicit positive delta, or 0 = derive it as
  // anchor_factor x (median distance at the rung with n == anchor_n)
  double delta = 0.0;
  int anchor_n = 0;  // 0 = second rung of the ladder
  double anchor_factor = 2.0;

  // laguerre-rate
  double phi = 0.5;
  std::vector<int> p_ladder;

  // moment-check
  long mc_trials = 200000;
  long bound_trials = 100000;

  // bound-sweep
  int p_max = 40;
  int z_points = 64;

  // ensemble
  EntryDistribution entry;
  std::optional<EntryDistribution> entry_odd;
  uint64_t master_seed = 1;

  // output
  std::string out_path = "report.csv";
  std::string format = "csv";
  int threads = 0;  // 0 = hardware concurrency
  bool timing_wall = false;

  void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace mpcov
