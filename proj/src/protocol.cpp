#include "slacer/protocol.hpp"

#include <algorithm>

#include "slacer/pd_game.hpp"

namespace slacer {
namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

void drop_each_link(NodeId i, OverlayGraph& graph, double w, Rng& rng) {
  const auto view = graph.view(i);
  const std::vector<NodeId> old(view.begin(), view.end());
  for (NodeId k : old)
    if (rng.bernoulli(w)) graph.drop_link(i, k);
}

}  // namespace

std::vector<std::string> ProtocolParams::validate() const {
  std::vector<std::string> errors;
  if (!is_probability(w)) errors.emplace_back("w must be in [0, 1]");
  if (!is_probability(m)) errors.emplace_back("m must be in [0, 1]");
  if (!is_probability(mr)) errors.emplace_back("mr must be in [0, 1]");
  if (max_view_size == 0) errors.emplace_back("view_size must be positive");
  return errors;
}

std::vector<std::string> ProtocolParams::warnings() const {
  std::vector<std::string> notes;
  if (mr < m) notes.emplace_back("link mutation rate mr is below strategy mutation rate m");
  return notes;
}

AdaptOutcome compare_and_adapt(NodeId i, OverlayGraph& graph, PeerSampler& sampler,
                               const ProtocolParams& params, Rng& rng) {
  AdaptOutcome outcome;
  outcome.partner = sampler.get_random_node(i, rng);
  if (average_utility(graph, i) <= average_utility(graph, outcome.partner)) {
    copy_state_partial(i, outcome.partner, graph, params, rng);
    outcome.copied = true;
    if (rng.bernoulli(params.m)) {
      mutate_strategy(i, graph);
      outcome.strategy_mutated = true;
    }
    if (rng.bernoulli(params.mr)) {
      mutate_links(i, graph, sampler, params, rng);
      outcome.links_mutated = true;
    }
  }
  graph.reset_utility(i);
  return outcome;
}

void copy_state_partial(NodeId i, NodeId j, OverlayGraph& graph, const ProtocolParams& params, Rng& rng) {
  if (i == j) throw ContractViolation("copy_state_partial requires distinct nodes");
  const auto source_view = graph.view(j);
  std::vector<NodeId> source(source_view.begin(), source_view.end());
  std::sort(source.begin(), source.end());

  graph.set_strategy(i, graph.strategy(j));
  drop_each_link(i, graph, params.w, rng);
  for (NodeId k : source)
    if (k != i) graph.add_link(i, k, rng);
  graph.add_link(i, j, rng);
}

void mutate_links(NodeId i, OverlayGraph& graph, PeerSampler& sampler, const ProtocolParams& params,
                  Rng& rng) {
  drop_each_link(i, graph, params.w, rng);
  graph.add_link(i, sampler.get_random_node(i, rng), rng);
}

void mutate_strategy(NodeId i, OverlayGraph& graph) { graph.set_strategy(i, flipped(graph.strategy(i))); }

}  // namespace slacer
