#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "slacer/config.hpp"
#include "slacer/engine.hpp"
#include "slacer/metrics.hpp"

namespace slacer {

/// Mutable state of one run: overlay, sampler, random stream and clock.
class Simulation {
 public:
  Simulation(const ExperimentConfig& config, std::uint64_t seed);

  std::uint64_t cycle() const noexcept { return cycle_; }
  const OverlayGraph& graph() const noexcept { return graph_; }
  OverlayGraph& graph() noexcept { return graph_; }
  PeerSampler& sampler() noexcept { return *sampler_; }

  /// Advances the clock and runs one cycle.
  CycleStats step(const AdaptTrace* trace = nullptr);

  std::vector<NodeId> churn(double fraction);

  /// Measures the current state. Uses a stream derived from (seed, cycle), so
  /// measuring never perturbs the trajectory.
  MetricsSnapshot measure(MetricsDetail detail) const;

 private:
  const ExperimentConfig* config_;
  std::uint64_t seed_;
  Rng rng_;
  OverlayGraph graph_;
  std::unique_ptr<PeerSampler> sampler_;
  std::uint64_t cycle_ = 0;
};

enum class StopReason { Converged, CycleBudget, ChurnWindow };

std::string_view to_string(StopReason reason) noexcept;

struct TraceRow {
  MetricsSnapshot metrics;
  CycleStats activity;  // events since the previous sample
};

struct RunResult {
  std::uint64_t seed = 0;
  std::uint64_t final_cycle = 0;
  StopReason stop_reason = StopReason::CycleBudget;
  std::optional<std::uint64_t> convergence_cycle;  // first sample at or above the stop threshold
  std::vector<std::uint64_t> churn_cycles;
  std::vector<TraceRow> trace;
  MetricsSnapshot final_metrics;  // full measurement of the final state
  GraphSnapshot final_graph;
};

/// Runs one replicate: initialise, iterate cycles, sample every
/// metrics_interval cycles (cycle 0 included), apply churn, and stop on
/// convergence, churn window, or cycle budget. Convergence stops are disabled
/// when churn is configured.
RunResult run_until(const ExperimentConfig& config, std::uint64_t seed, const AdaptTrace* trace = nullptr);
inline RunResult run_until(const ExperimentConfig& config) { return run_until(config, config.seed); }

}  // namespace slacer
