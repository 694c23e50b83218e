#include "slacer/pd_game.hpp"

namespace slacer {

std::vector<std::string> PdPayoffs::validate() const {
  std::vector<std::string> errors;
  if (!(t > r && r > p && p > s))
    errors.emplace_back("payoffs must satisfy T > R > P > S");
  if (!(2.0 * r > t + s))
    errors.emplace_back("payoffs must satisfy 2R > T + S");
  return errors;
}

std::pair<double, double> play_game(Strategy a, Strategy b, const PdPayoffs& payoffs) noexcept {
  const bool ca = a == Strategy::Cooperate;
  const bool cb = b == Strategy::Cooperate;
  if (ca && cb) return {payoffs.r, payoffs.r};
  if (!ca && !cb) return {payoffs.p, payoffs.p};
  if (ca) return {payoffs.s, payoffs.t};
  return {payoffs.t, payoffs.s};
}

GameRecord play_round(NodeId i, OverlayGraph& graph, PeerSampler& sampler, const PdPayoffs& payoffs,
                      Rng& rng) {
  if (graph.degree(i) == 0) graph.add_link(i, sampler.get_random_node(i, rng), rng);
  const NodeId partner = *graph.random_neighbor(i, rng);

  GameRecord record;
  record.player = i;
  record.partner = partner;
  record.player_move = graph.strategy(i);
  record.partner_move = graph.strategy(partner);
  std::tie(record.player_payoff, record.partner_payoff) =
      play_game(record.player_move, record.partner_move, payoffs);
  graph.record_payoff(i, record.player_payoff);
  graph.record_payoff(partner, record.partner_payoff);
  return record;
}

double average_utility(const NodeState& node) noexcept {
  if (node.games_played == 0) return 0.0;
  return node.utility_sum / static_cast<double>(node.games_played);
}

}  // namespace slacer
