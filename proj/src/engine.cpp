#include "slacer/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slacer {

std::string_view to_string(SchedulerMode mode) noexcept {
  return mode == SchedulerMode::SemiAsync ? "semi" : "full";
}

CycleStats run_cycle(OverlayGraph& graph, PeerSampler& sampler, const ProtocolParams& params,
                     const PdPayoffs& payoffs, const CycleOptions& options, Rng& rng) {
  const std::size_t n = graph.size();
  if (n < 2) throw ContractViolation("run_cycle needs at least two nodes");
  CycleStats stats;

  auto compare = [&](NodeId i) {
    const auto outcome = compare_and_adapt(i, graph, sampler, params, rng);
    ++stats.comparisons_executed;
    if (outcome.copied) ++stats.copies;
    if (options.trace != nullptr && *options.trace) (*options.trace)(options.cycle, i, outcome);
  };

  const std::size_t selections = 10 * n;
  for (std::size_t k = 0; k < selections; ++k) {
    const auto i = static_cast<NodeId>(rng.index(n));
    play_round(i, graph, sampler, payoffs, rng);
    ++stats.games_played;
    if (options.mode == SchedulerMode::FullAsync && rng.bernoulli(options.full_async_compare_prob)) compare(i);
  }
  if (options.mode == SchedulerMode::SemiAsync) {
    for (std::size_t k = 0; k < n; ++k) compare(static_cast<NodeId>(rng.index(n)));
  }
  return stats;
}

std::vector<NodeId> apply_churn(OverlayGraph& graph, PeerSampler& sampler, double fraction, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ContractViolation("churn fraction must be in [0, 1]");
  const std::size_t n = graph.size();
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  if (count == 0) return {};

  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  std::vector<NodeId> reset;
  reset.reserve(count);
  std::sample(all.begin(), all.end(), std::back_inserter(reset), count, rng.engine());

  for (NodeId i : reset) {
    graph.set_strategy(i, Strategy::Defect);
    graph.reset_utility(i);
    graph.drop_all_links(i);
  }
  if (n >= 2)
    for (NodeId i : reset) graph.add_link(i, sampler.get_random_node(i, rng), rng);
  return reset;
}

void wire_random_topology(OverlayGraph& graph, std::size_t attempts, Rng& rng) {
  const std::size_t n = graph.size();
  if (n < 2) return;
  for (NodeId i = 0; i < n; ++i)
    for (std::size_t a = 0; a < attempts; ++a) graph.add_link(i, static_cast<NodeId>(rng.index(n)), rng);
}

}  // namespace slacer
