#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slacer/overlay_graph.hpp"
#include "slacer/peer_sampler.hpp"
#include "slacer/rng.hpp"

namespace slacer {

/// Single-round Prisoner's Dilemma payoff matrix.
struct PdPayoffs {
  double t = 1.9;     // temptation
  double r = 1.0;     // reward
  double p = 2.0e-4;  // punishment
  double s = 1.0e-4;  // sucker

  /// T = 1.9, R = 1, P = 2d, S = d.
  static PdPayoffs from_d(double d) { return {1.9, 1.0, 2.0 * d, d}; }

  /// Violations of T > R > P > S and 2R > T + S; empty when valid.
  std::vector<std::string> validate() const;

  friend bool operator==(const PdPayoffs&, const PdPayoffs&) = default;
};

/// Payoffs for (a, b).
std::pair<double, double> play_game(Strategy a, Strategy b, const PdPayoffs& payoffs) noexcept;

struct GameRecord {
  NodeId player = 0;
  NodeId partner = 0;
  Strategy player_move = Strategy::Defect;
  Strategy partner_move = Strategy::Defect;
  double player_payoff = 0.0;
  double partner_payoff = 0.0;
};

/// Node i plays one game with a random neighbor; an isolated node first links
/// to a sampler-drawn node. Both players accumulate their payoff.
GameRecord play_round(NodeId i, OverlayGraph& graph, PeerSampler& sampler, const PdPayoffs& payoffs,
                      Rng& rng);

/// Mean payoff per game since the last reset, 0 before any game.
double average_utility(const NodeState& node) noexcept;
inline double average_utility(const OverlayGraph& graph, NodeId i) { return average_utility(graph.state(i)); }

}  // namespace slacer
