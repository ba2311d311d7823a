#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpcov/config.hpp"
#include "mpcov/report.hpp"

namespace mpcov {

struct ExperimentResult {
  std::vector<ReportRow> rows;       // per-trial and aggregate lines
  std::vector<SeriesPoint> series;   // plot-ready aggregate curves
  std::vector<std::string> findings; // non-fatal observations (logged, not fatal)
  std::string summary_json;          // structured per-kind report; empty if none
};

/// Seed for one (p, n) rung, derived from the config master seed; all trial
/// streams hang off this value via trial_stream_seed.
uint64_t rung_master_seed(uint64_t config_seed, int p, int n);

ExperimentResult run_convergence(const ExperimentConfig& cfg);
ExperimentResult run_tail(const ExperimentConfig& cfg);
ExperimentResult run_laguerre_rate(const ExperimentConfig& cfg);
ExperimentResult run_moment_check(const ExperimentConfig& cfg);
ExperimentResult run_bound_sweep(const ExperimentConfig& cfg);

/// Dispatch on cfg.kind.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace mpcov
