#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slacer/rng.hpp"
#include "slacer/types.hpp"

namespace slacer {

enum class LinkResult { Added, AlreadyPresent, RejectedSelf };

struct NodeState {
  Strategy strategy = Strategy::Defect;
  double utility_sum = 0.0;
  std::uint64_t games_played = 0;
  // Neighbor set. Stored as a small vector (|view| <= max_view_size); order
  // carries no meaning but is deterministic for a given operation history.
  std::vector<NodeId> view;
};

/// Undirected, bounded-degree overlay plus per-node protocol state.
///
/// Every mutation keeps the link relation symmetric: j is in view(i) exactly
/// when i is in view(j). Views never contain their owner or duplicates and
/// never exceed max_view_size().
class OverlayGraph {
 public:
  OverlayGraph(std::size_t n, std::size_t max_view_size);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t max_view_size() const noexcept { return max_view_size_; }

  const NodeState& state(NodeId i) const;
  std::span<const NodeId> view(NodeId i) const;
  std::size_t degree(NodeId i) const { return view(i).size(); }
  Strategy strategy(NodeId i) const { return state(i).strategy; }
  bool linked(NodeId i, NodeId j) const;

  void set_strategy(NodeId i, Strategy s);
  void record_payoff(NodeId i, double payoff);
  void reset_utility(NodeId i);

  /// Links i and j. A full endpoint first drops one of its existing links,
  /// chosen uniformly, at both ends of that link. Endpoint i evicts before j.
  LinkResult add_link(NodeId i, NodeId j, Rng& rng);

  /// Removes the link at both endpoints. Returns whether it existed.
  bool drop_link(NodeId i, NodeId j);

  /// Drops every link of i; returns how many were removed.
  std::size_t drop_all_links(NodeId i);

  std::optional<NodeId> random_neighbor(NodeId i, Rng& rng) const;

  /// Number of undirected links.
  std::size_t link_count() const noexcept;

  /// Human-readable list of invariant violations; empty when consistent.
  std::vector<std::string> audit() const;

 private:
  void check_id(NodeId i) const;
  void evict_random(NodeId i, Rng& rng);

  std::size_t max_view_size_;
  std::vector<NodeState> nodes_;
};

// Snapshot export: "i j" per link with i < j, sorted.
void write_edge_list(const OverlayGraph& graph, std::ostream& out);
// One "id C|D" line per node.
void write_node_states(const OverlayGraph& graph, std::ostream& out);

}  // namespace slacer
