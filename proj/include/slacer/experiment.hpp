#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slacer/config.hpp"
#include "slacer/simulation.hpp"

namespace slacer {

struct SweepPoint {
  std::optional<std::string> value;  // sweep value, when sweeping
  ExperimentConfig config;
};

/// One config per sweep value (or the config itself when no sweep is set).
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config);

struct MeanVariance {
  std::optional<double> mean;
  std::optional<double> variance;  // sample variance; absent below two values
  std::size_t count = 0;
};

MeanVariance mean_variance(const std::vector<double>& values);

struct AggregateRow {
  std::string sweep_key;
  std::string sweep_value;
  std::size_t replicates = 0;
  std::size_t converged = 0;
  MeanVariance convergence_cycle;
  MeanVariance final_cycle;
  MeanVariance coop_fraction;
  MeanVariance ccp;
  MeanVariance ccpl;
  MeanVariance clustering;
  MeanVariance avg_path_length;
  MeanVariance gcc_size;
  MeanVariance gcc_fraction;
  MeanVariance max_degree_fraction;
  MeanVariance zero_degree_fraction;
};

struct PointResult {
  SweepPoint point;
  std::vector<RunResult> runs;
  std::vector<std::string> run_ids;
  AggregateRow aggregate;
};

struct ExperimentSummary {
  std::vector<PointResult> points;

  bool all_converged() const;
};

struct RunOptions {
  std::size_t workers = 0;     // 0: hardware concurrency
  bool write_files = true;     // traces + aggregate under config.output_path
  bool write_charts = false;   // SVG line charts per replicate
  bool export_graphs = false;  // final edge list and node states per replicate
  const AdaptTrace* adapt_trace = nullptr;  // forces a single worker
};

AggregateRow aggregate(const SweepPoint& point, const std::vector<RunResult>& runs);

/// Runs every sweep point and replicate (seeds seed, seed+1, ...). Validates
/// the config and the output directory before simulating anything.
ExperimentSummary run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

std::vector<std::string_view> preset_names();

/// Desk-scale reproduction of a named experiment. Population sizes above
/// `max_n` are dropped from size sweeps and capped elsewhere.
ExperimentConfig preset(std::string_view name, std::size_t max_n = 8000);

}  // namespace slacer
