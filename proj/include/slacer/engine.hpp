#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "slacer/overlay_graph.hpp"
#include "slacer/pd_game.hpp"
#include "slacer/peer_sampler.hpp"
#include "slacer/protocol.hpp"
#include "slacer/rng.hpp"

namespace slacer {

enum class SchedulerMode { SemiAsync, FullAsync };

std::string_view to_string(SchedulerMode mode) noexcept;

struct CycleStats {
  std::uint64_t games_played = 0;
  std::uint64_t comparisons_executed = 0;
  std::uint64_t copies = 0;

  CycleStats& operator+=(const CycleStats& other) noexcept {
    games_played += other.games_played;
    comparisons_executed += other.comparisons_executed;
    copies += other.copies;
    return *this;
  }
};

/// Receives every utility comparison when tracing is on.
using AdaptTrace = std::function<void(std::uint64_t cycle, NodeId node, const AdaptOutcome& outcome)>;

struct CycleOptions {
  SchedulerMode mode = SchedulerMode::SemiAsync;
  double full_async_compare_prob = 0.1;
  const AdaptTrace* trace = nullptr;
  std::uint64_t cycle = 0;  // reported to the trace only
};

/// One cycle: 10N game selections with replacement. SemiAsync follows them
/// with N comparison selections; FullAsync lets the selected node compare
/// right after its game with probability `full_async_compare_prob`.
CycleStats run_cycle(OverlayGraph& graph, PeerSampler& sampler, const ProtocolParams& params,
                     const PdPayoffs& payoffs, const CycleOptions& options, Rng& rng);

/// Resets floor(fraction * N) distinct random nodes to fresh defectors: zero
/// utility, links wiped, then one bootstrap link to a sampler-drawn node.
/// Returns the reset ids in ascending order.
std::vector<NodeId> apply_churn(OverlayGraph& graph, PeerSampler& sampler, double fraction, Rng& rng);

/// Gives every node `attempts` link attempts to uniform random partners.
void wire_random_topology(OverlayGraph& graph, std::size_t attempts, Rng& rng);

}  // namespace slacer
