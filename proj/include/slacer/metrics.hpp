#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slacer/overlay_graph.hpp"
#include "slacer/rng.hpp"
#include "slacer/types.hpp"

namespace slacer {

/// Immutable copy of an overlay (compressed adjacency + strategies), safe to
/// hand to concurrent readers.
class GraphSnapshot {
 public:
  GraphSnapshot() = default;
  GraphSnapshot(std::vector<Strategy> strategies, const std::vector<std::vector<NodeId>>& adjacency,
                std::size_t max_view_size, std::uint64_t cycle = 0);

  static GraphSnapshot capture(const OverlayGraph& graph, std::uint64_t cycle = 0);

  /// Builds a snapshot from an undirected edge list (tests, offline analysis).
  static GraphSnapshot from_edges(std::vector<Strategy> strategies,
                                  std::span<const std::pair<NodeId, NodeId>> edges,
                                  std::size_t max_view_size, std::uint64_t cycle = 0);

  std::size_t size() const noexcept { return strategies_.size(); }
  std::uint64_t cycle() const noexcept { return cycle_; }
  std::size_t max_view_size() const noexcept { return max_view_size_; }
  Strategy strategy(NodeId i) const { return strategies_[i]; }
  bool cooperates(NodeId i) const { return strategies_[i] == Strategy::Cooperate; }
  std::span<const NodeId> neighbors(NodeId i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t link_count() const noexcept { return neighbors_.size() / 2; }
  bool linked(NodeId i, NodeId j) const;

 private:
  std::vector<Strategy> strategies_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;  // sorted within each node's range
  std::size_t max_view_size_ = 0;
  std::uint64_t cycle_ = 0;
};

/// Exact-vs-sampled switches for the expensive measurements.
struct MetricsOptions {
  std::size_t exact_ccp_limit = 4000;      // N above which CCP and CCPL are sampled
  std::size_t ccp_pair_samples = 100000;   // pairs drawn when sampling CCP
  std::size_t ccpl_source_samples = 500;   // restricted-BFS sources when sampling CCPL
  std::size_t exact_path_limit = 4000;     // GCC size above which L is sampled
  std::size_t path_source_samples = 500;   // BFS sources when sampling L

  friend bool operator==(const MetricsOptions&, const MetricsOptions&) = default;
};

/// A value plus whether it came from a sampled estimator.
struct Estimate {
  std::optional<double> value;  // nullopt: undefined
  bool sampled = false;
};

double cooperation_fraction(const GraphSnapshot& g);

/// Cooperatively connected pairs: fraction of unordered pairs that are linked
/// directly or joined by a path whose intermediate nodes all cooperate.
Estimate ccp(const GraphSnapshot& g, const MetricsOptions& options, Rng& rng);

/// Pairwise-search reference for ccp. Intended for small graphs.
double ccp_bruteforce(const GraphSnapshot& g);

/// Mean shortest cooperative-intermediate path length over CCP-connected
/// pairs. Undefined when no pair qualifies.
Estimate ccpl(const GraphSnapshot& g, const MetricsOptions& options, Rng& rng);

/// Pairwise-search reference for ccpl.
std::optional<double> ccpl_bruteforce(const GraphSnapshot& g);

/// Watts-Strogatz mean local clustering; degree < 2 counts as 0.
double clustering_coefficient(const GraphSnapshot& g);

/// Mean shortest-path distance within the largest connected component.
Estimate avg_path_length(const GraphSnapshot& g, const MetricsOptions& options, Rng& rng);

struct ComponentSummary {
  std::size_t size = 0;
  double fraction = 0.0;
};

ComponentSummary largest_component(const GraphSnapshot& g);

/// Member ids of the largest component (lowest member id wins ties).
std::vector<NodeId> largest_component_members(const GraphSnapshot& g);

/// Counts per degree 0..max_view_size.
std::vector<std::size_t> degree_histogram(const GraphSnapshot& g);

struct EstimatorFlags {
  bool ccp_sampled = false;
  bool ccpl_sampled = false;
  bool path_sampled = false;
};

/// One measurement record. The costly path-based fields are only present for
/// full measurements.
struct MetricsSnapshot {
  std::uint64_t cycle = 0;
  double coop_fraction = 0.0;
  std::optional<double> ccp;
  std::optional<double> ccpl;
  double clustering = 0.0;
  std::optional<double> avg_path_length;
  double gcc_fraction = 0.0;
  std::size_t gcc_size = 0;
  double max_degree_fraction = 0.0;   // share of nodes at the view cap
  double zero_degree_fraction = 0.0;  // share of isolated nodes
  bool full = false;                  // path-based metrics were computed
  EstimatorFlags flags;
};

enum class MetricsDetail { Light, Full };

MetricsSnapshot measure(const GraphSnapshot& g, MetricsDetail detail, const MetricsOptions& options,
                        Rng& rng);

}  // namespace slacer
