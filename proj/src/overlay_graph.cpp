#include "slacer/overlay_graph.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace slacer {
namespace {

bool erase_value(std::vector<NodeId>& v, NodeId x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return false;
  *it = v.back();
  v.pop_back();
  return true;
}

}  // namespace

OverlayGraph::OverlayGraph(std::size_t n, std::size_t max_view_size)
    : max_view_size_(max_view_size), nodes_(n) {
  if (max_view_size == 0) throw ContractViolation("max_view_size must be positive");
  for (auto& node : nodes_) node.view.reserve(max_view_size);
}

void OverlayGraph::check_id(NodeId i) const {
  if (i >= nodes_.size()) {
    throw ContractViolation("node id " + std::to_string(i) + " out of range [0, " +
                            std::to_string(nodes_.size()) + ")");
  }
}

const NodeState& OverlayGraph::state(NodeId i) const {
  check_id(i);
  return nodes_[i];
}

std::span<const NodeId> OverlayGraph::view(NodeId i) const {
  check_id(i);
  return nodes_[i].view;
}

bool OverlayGraph::linked(NodeId i, NodeId j) const {
  check_id(i);
  check_id(j);
  const auto& v = nodes_[i].view;
  return std::find(v.begin(), v.end(), j) != v.end();
}

void OverlayGraph::set_strategy(NodeId i, Strategy s) {
  check_id(i);
  nodes_[i].strategy = s;
}

void OverlayGraph::record_payoff(NodeId i, double payoff) {
  check_id(i);
  nodes_[i].utility_sum += payoff;
  ++nodes_[i].games_played;
}

void OverlayGraph::reset_utility(NodeId i) {
  check_id(i);
  nodes_[i].utility_sum = 0.0;
  nodes_[i].games_played = 0;
}

void OverlayGraph::evict_random(NodeId i, Rng& rng) {
  const auto& v = nodes_[i].view;
  const NodeId victim = v[rng.index(v.size())];
  drop_link(i, victim);
}

LinkResult OverlayGraph::add_link(NodeId i, NodeId j, Rng& rng) {
  check_id(i);
  check_id(j);
  if (i == j) return LinkResult::RejectedSelf;
  if (linked(i, j)) return LinkResult::AlreadyPresent;
  if (nodes_[i].view.size() >= max_view_size_) evict_random(i, rng);
  if (nodes_[j].view.size() >= max_view_size_) evict_random(j, rng);
  nodes_[i].view.push_back(j);
  nodes_[j].view.push_back(i);
  return LinkResult::Added;
}

bool OverlayGraph::drop_link(NodeId i, NodeId j) {
  check_id(i);
  check_id(j);
  if (!erase_value(nodes_[i].view, j)) return false;
  erase_value(nodes_[j].view, i);
  return true;
}

std::size_t OverlayGraph::drop_all_links(NodeId i) {
  check_id(i);
  auto old = std::exchange(nodes_[i].view, {});
  nodes_[i].view.reserve(max_view_size_);
  for (NodeId k : old) erase_value(nodes_[k].view, i);
  return old.size();
}

std::optional<NodeId> OverlayGraph::random_neighbor(NodeId i, Rng& rng) const {
  const auto& v = state(i).view;
  if (v.empty()) return std::nullopt;
  return v[rng.index(v.size())];
}

std::size_t OverlayGraph::link_count() const noexcept {
  std::size_t total = 0;
  for (const auto& node : nodes_) total += node.view.size();
  return total / 2;
}

std::vector<std::string> OverlayGraph::audit() const {
  std::vector<std::string> problems;
  std::size_t endpoint_total = 0;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    const auto& node = nodes_[i];
    const auto& v = node.view;
    endpoint_total += v.size();
    const std::string who = "node " + std::to_string(i);
    if (v.size() > max_view_size_) problems.push_back(who + ": view exceeds cap");
    if (node.games_played == 0 && node.utility_sum != 0.0)
      problems.push_back(who + ": utility without games");
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      problems.push_back(who + ": duplicate view entry");
    for (NodeId k : v) {
      if (k == i) {
        problems.push_back(who + ": self-loop");
      } else if (k >= nodes_.size()) {
        problems.push_back(who + ": invalid neighbor id");
      } else if (!linked(k, i)) {
        problems.push_back(who + ": asymmetric link to " + std::to_string(k));
      }
    }
  }
  if (endpoint_total % 2 != 0) problems.push_back("odd endpoint total");
  return problems;
}

void write_edge_list(const OverlayGraph& graph, std::ostream& out) {
  for (NodeId i = 0; i < graph.size(); ++i) {
    std::vector<NodeId> higher;
    for (NodeId k : graph.view(i))
      if (k > i) higher.push_back(k);
    std::sort(higher.begin(), higher.end());
    for (NodeId k : higher) out << i << ' ' << k << '\n';
  }
}

void write_node_states(const OverlayGraph& graph, std::ostream& out) {
  for (NodeId i = 0; i < graph.size(); ++i)
    out << i << ' ' << strategy_code(graph.strategy(i)) << '\n';
}

}  // namespace slacer
