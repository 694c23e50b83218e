#include "slacer/metrics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "slacer/union_find.hpp"

namespace slacer {
namespace {

constexpr std::int32_t kUnreached = -1;

// Breadth-first search from `source` in which only the source and cooperators
// may be expanded. Reached defectors are endpoints only. Fills `dist` for the
// reached nodes and returns them (source first); the caller resets `dist`.
const std::vector<NodeId>& cooperative_bfs(const GraphSnapshot& g, NodeId source,
                                           std::vector<std::int32_t>& dist, std::vector<NodeId>& order) {
  order.clear();
  order.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId x = order[head];
    if (x != source && !g.cooperates(x)) continue;
    for (NodeId y : g.neighbors(x)) {
      if (dist[y] != kUnreached) continue;
      dist[y] = dist[x] + 1;
      order.push_back(y);
    }
  }
  return order;
}

std::vector<NodeId> sample_without_replacement(std::span<const NodeId> pool, std::size_t count, Rng& rng) {
  std::vector<NodeId> out;
  out.reserve(std::min(count, pool.size()));
  std::sample(pool.begin(), pool.end(), std::back_inserter(out), count, rng.engine());
  return out;
}

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  return ids;
}

struct DistanceTotals {
  std::uint64_t sum = 0;
  std::uint64_t pairs = 0;
};

// Shortest-path distance totals from `sources` to every node they reach,
// 64 sources per pass with one bit per source. With `cooperative_only`, a
// node forwards a source's bit only if it cooperates or is that source.
DistanceTotals batched_distance_sums(const GraphSnapshot& g, std::span<const NodeId> sources,
                                     bool cooperative_only) {
  const std::size_t n = g.size();
  DistanceTotals totals;
  std::vector<std::uint64_t> visited(n), frontier(n), next(n), own(n, 0);
  std::vector<NodeId> active, touched;
  for (std::size_t start = 0; start < sources.size(); start += 64) {
    const std::size_t batch = std::min<std::size_t>(64, sources.size() - start);
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    active.clear();
    for (std::size_t k = 0; k < batch; ++k) {
      const NodeId s = sources[start + k];
      const std::uint64_t bit = std::uint64_t{1} << k;
      visited[s] |= bit;
      frontier[s] |= bit;
      own[s] |= bit;
      active.push_back(s);
    }
    for (std::uint64_t depth = 1; !active.empty(); ++depth) {
      touched.clear();
      for (NodeId u : active) {
        std::uint64_t out = frontier[u];
        if (cooperative_only && !g.cooperates(u)) out &= own[u];
        frontier[u] = 0;
        if (out == 0) continue;
        for (NodeId v : g.neighbors(u)) {
          const std::uint64_t fresh = out & ~visited[v] & ~next[v];
          if (fresh == 0) continue;
          if (next[v] == 0) touched.push_back(v);
          next[v] |= fresh;
        }
      }
      active.clear();
      for (NodeId v : touched) {
        const std::uint64_t fresh = next[v];
        next[v] = 0;
        visited[v] |= fresh;
        frontier[v] = fresh;
        const auto reached = static_cast<std::uint64_t>(std::popcount(fresh));
        totals.sum += depth * reached;
        totals.pairs += reached;
        active.push_back(v);
      }
    }
    for (std::size_t k = 0; k < batch; ++k) own[sources[start + k]] = 0;
  }
  return totals;
}

// Touch sets: the cooperator components each node borders or belongs to.
struct TouchSets {
  std::vector<std::vector<std::uint32_t>> of_node;   // sorted component ids
  std::vector<std::vector<NodeId>> touchers;         // nodes per component
};

TouchSets build_touch_sets(const GraphSnapshot& g) {
  const std::size_t n = g.size();
  UnionFind uf(n);
  for (NodeId u = 0; u < n; ++u) {
    if (!g.cooperates(u)) continue;
    for (NodeId v : g.neighbors(u))
      if (v > u && g.cooperates(v)) uf.unite(u, v);
  }
  std::vector<std::uint32_t> component_id(n, UINT32_MAX);
  std::uint32_t components = 0;
  for (NodeId u = 0; u < n; ++u) {
    if (!g.cooperates(u)) continue;
    const auto root = uf.find(u);
    if (component_id[root] == UINT32_MAX) component_id[root] = components++;
  }

  TouchSets sets;
  sets.of_node.resize(n);
  sets.touchers.resize(components);
  for (NodeId u = 0; u < n; ++u) {
    auto& mine = sets.of_node[u];
    if (g.cooperates(u)) {
      mine.push_back(component_id[uf.find(u)]);
    } else {
      for (NodeId v : g.neighbors(u))
        if (g.cooperates(v)) mine.push_back(component_id[uf.find(v)]);
      std::sort(mine.begin(), mine.end());
      mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
    }
    for (auto c : mine) sets.touchers[c].push_back(u);
  }
  return sets;
}

bool intersects(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

double pair_count(std::size_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; }

}  // namespace

GraphSnapshot::GraphSnapshot(std::vector<Strategy> strategies, const std::vector<std::vector<NodeId>>& adjacency,
                             std::size_t max_view_size, std::uint64_t cycle)
    : strategies_(std::move(strategies)), max_view_size_(max_view_size), cycle_(cycle) {
  if (adjacency.size() != strategies_.size()) throw ContractViolation("adjacency/strategy size mismatch");
  offsets_.reserve(adjacency.size() + 1);
  for (const auto& list : adjacency) {
    const auto start = neighbors_.size();
    neighbors_.insert(neighbors_.end(), list.begin(), list.end());
    std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(start), neighbors_.end());
    offsets_.push_back(neighbors_.size());
  }
}

GraphSnapshot GraphSnapshot::capture(const OverlayGraph& graph, std::uint64_t cycle) {
  std::vector<Strategy> strategies(graph.size());
  std::vector<std::vector<NodeId>> adjacency(graph.size());
  for (NodeId i = 0; i < graph.size(); ++i) {
    strategies[i] = graph.strategy(i);
    const auto v = graph.view(i);
    adjacency[i].assign(v.begin(), v.end());
  }
  return GraphSnapshot(std::move(strategies), adjacency, graph.max_view_size(), cycle);
}

GraphSnapshot GraphSnapshot::from_edges(std::vector<Strategy> strategies,
                                        std::span<const std::pair<NodeId, NodeId>> edges,
                                        std::size_t max_view_size, std::uint64_t cycle) {
  std::vector<std::vector<NodeId>> adjacency(strategies.size());
  for (auto [a, b] : edges) {
    if (a >= strategies.size() || b >= strategies.size() || a == b)
      throw ContractViolation("invalid edge in snapshot");
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  return GraphSnapshot(std::move(strategies), adjacency, max_view_size, cycle);
}

bool GraphSnapshot::linked(NodeId i, NodeId j) const {
  const auto n = neighbors(i);
  return std::binary_search(n.begin(), n.end(), j);
}

double cooperation_fraction(const GraphSnapshot& g) {
  if (g.size() == 0) return 0.0;
  std::size_t cooperators = 0;
  for (NodeId i = 0; i < g.size(); ++i) cooperators += g.cooperates(i) ? 1 : 0;
  return static_cast<double>(cooperators) / static_cast<double>(g.size());
}

Estimate ccp(const GraphSnapshot& g, const MetricsOptions& options, Rng& rng) {
  const std::size_t n = g.size();
  if (n < 2) return {};
  const auto sets = build_touch_sets(g);

  if (n > options.exact_ccp_limit) {
    const std::size_t samples = std::max<std::size_t>(options.ccp_pair_samples, 1);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < samples; ++k) {
      const auto u = static_cast<NodeId>(rng.index(n));
      auto v = static_cast<NodeId>(rng.index(n - 1));
      if (v >= u) ++v;
      if (g.linked(u, v) || intersects(sets.of_node[u], sets.of_node[v])) ++hits;
    }
    return {static_cast<double>(hits) / static_cast<double>(samples), true};
  }

  // Count, for every u, the distinct partners v > u sharing a component or a link.
  std::vector<NodeId> stamp(n, static_cast<NodeId>(n));
  std::uint64_t connected = 0;
  for (NodeId u = 0; u < n; ++u) {
    auto visit = [&](NodeId v) {
      if (v > u && stamp[v] != u) {
        stamp[v] = u;
        ++connected;
      }
    };
    for (auto c : sets.of_node[u])
      for (NodeId v : sets.touchers[c]) visit(v);
    for (NodeId v : g.neighbors(u)) visit(v);
  }
  return {static_cast<double>(connected) / pair_count(n), false};
}

double ccp_bruteforce(const GraphSnapshot& g) {
  const std::size_t n = g.size();
  if (n < 2) return 0.0;
  std::vector<std::int32_t> dist(n, kUnreached);
  std::vector<NodeId> order;
  std::uint64_t connected = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const auto& reached = cooperative_bfs(g, u, dist, order);
      if (dist[v] != kUnreached) ++connected;
      for (NodeId t : reached) dist[t] = kUnreached;
    }
  }
  return static_cast<double>(connected) / pair_count(n);
}

Estimate ccpl(const GraphSnapshot& g, const MetricsOptions& options, Rng& rng) {
  const std::size_t n = g.size();
  const auto nodes = all_nodes(n);
  Estimate result;
  std::vector<NodeId> sources;
  if (n > options.exact_ccp_limit && options.ccpl_source_samples < n) {
    sources = sample_without_replacement(nodes, options.ccpl_source_samples, rng);
    result.sampled = true;
  } else {
    sources = nodes;
  }
  const auto totals = batched_distance_sums(g, sources, true);
  if (totals.pairs > 0) result.value = static_cast<double>(totals.sum) / static_cast<double>(totals.pairs);
  return result;
}

std::optional<double> ccpl_bruteforce(const GraphSnapshot& g) {
  const std::size_t n = g.size();
  std::vector<std::int32_t> dist(n, kUnreached);
  std::vector<NodeId> order;
  double sum = 0.0;
  std::uint64_t pairs = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const auto& reached = cooperative_bfs(g, u, dist, order);
      if (dist[v] != kUnreached) {
        sum += dist[v];
        ++pairs;
      }
      for (NodeId t : reached) dist[t] = kUnreached;
    }
  }
  if (pairs == 0) return std::nullopt;
  return sum / static_cast<double>(pairs);
}

double clustering_coefficient(const GraphSnapshot& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0.0;
  std::vector<NodeId> mark(n, static_cast<NodeId>(n));
  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const auto nbrs = g.neighbors(u);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    for (NodeId a : nbrs) mark[a] = u;
    std::size_t twice_links = 0;
    for (NodeId a : nbrs)
      for (NodeId b : g.neighbors(a))
        if (mark[b] == u) ++twice_links;
    total += static_cast<double>(twice_links) / static_cast<double>(k * (k - 1));
  }
  return total / static_cast<double>(n);
}

std::vector<NodeId> largest_component_members(const GraphSnapshot& g) {
  const std::size_t n = g.size();
  if (n == 0) return {};
  UnionFind uf(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.neighbors(u))
      if (v > u) uf.unite(u, v);
  std::size_t best_root = uf.find(0);
  for (NodeId u = 1; u < n; ++u) {
    const auto root = uf.find(u);
    if (uf.component_size(root) > uf.component_size(best_root)) best_root = root;
  }
  std::vector<NodeId> members;
  members.reserve(uf.component_size(best_root));
  for (NodeId u = 0; u < n; ++u)
    if (uf.find(u) == best_root) members.push_back(u);
  return members;
}

ComponentSummary largest_component(const GraphSnapshot& g) {
  if (g.size() == 0) return {};
  const auto size = largest_component_members(g).size();
  return {size, static_cast<double>(size) / static_cast<double>(g.size())};
}

Estimate avg_path_length(const GraphSnapshot& g, const MetricsOptions& options, Rng& rng) {
  const auto members = largest_component_members(g);
  Estimate result;
  if (members.size() < 2) return result;
  std::vector<NodeId> sources;
  if (members.size() > options.exact_path_limit && options.path_source_samples < members.size()) {
    sources = sample_without_replacement(members, options.path_source_samples, rng);
    result.sampled = true;
  } else {
    sources = members;
  }
  const auto totals = batched_distance_sums(g, sources, false);
  if (totals.pairs > 0) result.value = static_cast<double>(totals.sum) / static_cast<double>(totals.pairs);
  return result;
}

std::vector<std::size_t> degree_histogram(const GraphSnapshot& g) {
  std::size_t top = g.max_view_size();
  for (NodeId u = 0; u < g.size(); ++u) top = std::max(top, g.degree(u));
  std::vector<std::size_t> counts(top + 1, 0);
  for (NodeId u = 0; u < g.size(); ++u) ++counts[g.degree(u)];
  return counts;
}

MetricsSnapshot measure(const GraphSnapshot& g, MetricsDetail detail, const MetricsOptions& options, Rng& rng) {
  MetricsSnapshot m;
  m.cycle = g.cycle();
  m.coop_fraction = cooperation_fraction(g);
  m.clustering = clustering_coefficient(g);
  const auto gcc = largest_component(g);
  m.gcc_size = gcc.size;
  m.gcc_fraction = gcc.fraction;
  if (g.size() > 0) {
    const auto hist = degree_histogram(g);
    const auto n = static_cast<double>(g.size());
    m.zero_degree_fraction = static_cast<double>(hist.front()) / n;
    m.max_degree_fraction =
        g.max_view_size() < hist.size() ? static_cast<double>(hist[g.max_view_size()]) / n : 0.0;
  }
  if (detail == MetricsDetail::Full) {
    m.full = true;
    const auto c = ccp(g, options, rng);
    m.ccp = c.value;
    m.flags.ccp_sampled = c.sampled;
    const auto cl = ccpl(g, options, rng);
    m.ccpl = cl.value;
    m.flags.ccpl_sampled = cl.sampled;
    const auto l = avg_path_length(g, options, rng);
    m.avg_path_length = l.value;
    m.flags.path_sampled = l.sampled;
  }
  return m;
}

}  // namespace slacer
