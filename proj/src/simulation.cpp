#include "slacer/simulation.hpp"

namespace slacer {
namespace {

constexpr std::uint64_t kMetricsStream = 0x6d657472696373ULL;

}  // namespace

Simulation::Simulation(const ExperimentConfig& config, std::uint64_t seed)
    : config_(&config), seed_(seed), rng_(seed), graph_(config.n, config.params.max_view_size) {
  for (NodeId i = 0; i < graph_.size(); ++i) graph_.set_strategy(i, config.initial_strategy);
  sampler_ = make_sampler(config.sampler, config.n, config.sampler_cache_size, rng_);
  if (config.initial_topology == InitialTopology::Random)
    wire_random_topology(graph_, config.params.max_view_size / 2, rng_);
}

CycleStats Simulation::step(const AdaptTrace* trace) {
  ++cycle_;
  sampler_->advance(cycle_, rng_);
  CycleOptions options{config_->mode, config_->full_async_compare_prob, trace, cycle_};
  return run_cycle(graph_, *sampler_, config_->params, config_->payoffs, options, rng_);
}

std::vector<NodeId> Simulation::churn(double fraction) { return apply_churn(graph_, *sampler_, fraction, rng_); }

MetricsSnapshot Simulation::measure(MetricsDetail detail) const {
  Rng metrics_rng(derive_seed(seed_ ^ kMetricsStream, cycle_));
  return slacer::measure(GraphSnapshot::capture(graph_, cycle_), detail, config_->metrics, metrics_rng);
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::ChurnWindow: return "churn-window";
    case StopReason::CycleBudget: break;
  }
  return "cycle-budget";
}

RunResult run_until(const ExperimentConfig& config, std::uint64_t seed, const AdaptTrace* trace) {
  if (auto errors = validate(config); !errors.empty()) throw ConfigError(std::move(errors));

  Simulation sim(config, seed);
  RunResult result;
  result.seed = seed;

  const auto& churn = config.churn;
  const bool stop_at_convergence = config.stop_on_convergence && !churn;
  std::optional<std::uint64_t> next_churn;
  if (churn && churn->at_cycle) next_churn = churn->at_cycle;
  std::optional<std::uint64_t> last_churn;
  CycleStats since_sample;

  while (true) {
    const auto cycle = sim.cycle();
    if (cycle % config.metrics_interval == 0) {
      auto m = sim.measure(config.metrics_detail);
      const bool cooperative = m.coop_fraction >= config.stop_coop_fraction;
      result.trace.push_back({std::move(m), since_sample});
      since_sample = {};
      if (cooperative) {
        if (!result.convergence_cycle) result.convergence_cycle = cycle;
        if (churn && !churn->at_cycle && !last_churn && !next_churn) next_churn = cycle;
        if (stop_at_convergence) {
          result.stop_reason = StopReason::Converged;
          break;
        }
      }
    }
    if (next_churn && *next_churn == cycle) {
      sim.churn(churn->fraction);
      result.churn_cycles.push_back(cycle);
      last_churn = cycle;
      next_churn.reset();
      if (churn->interval > 0) next_churn = cycle + churn->interval;
    }
    if (last_churn && churn->window > 0 && cycle >= *last_churn + churn->window) {
      result.stop_reason = StopReason::ChurnWindow;
      break;
    }
    if (cycle >= config.max_cycles) {
      result.stop_reason = StopReason::CycleBudget;
      break;
    }
    since_sample += sim.step(trace);
  }

  result.final_cycle = sim.cycle();
  const auto& last = result.trace.back().metrics;
  // The last sample predates a churn applied at the same cycle.
  const bool churned_after_sample = !result.churn_cycles.empty() && result.churn_cycles.back() == result.final_cycle;
  const bool reuse = last.full && last.cycle == result.final_cycle && !churned_after_sample;
  result.final_metrics = reuse ? last : sim.measure(MetricsDetail::Full);
  result.final_graph = GraphSnapshot::capture(sim.graph(), sim.cycle());
  return result;
}

}  // namespace slacer
