#include "slacer/peer_sampler.hpp"

#include <algorithm>
#include <numeric>

namespace slacer {

NodeId OracleSampler::get_random_node(NodeId caller, Rng& rng) {
  if (population_ < 2) throw NoPeerAvailable();
  if (caller >= population_) throw ContractViolation("caller out of range");
  auto pick = static_cast<NodeId>(rng.index(population_ - 1));
  return pick >= caller ? pick + 1 : pick;
}

std::vector<PeerDescriptor> keep_freshest(NodeId owner, std::span<const PeerDescriptor> candidates,
                                          std::size_t cache_size) {
  std::vector<PeerDescriptor> pool;
  pool.reserve(candidates.size());
  for (const auto& d : candidates)
    if (d.node != owner) pool.push_back(d);

  // Per node keep the freshest descriptor.
  std::sort(pool.begin(), pool.end(), [](const PeerDescriptor& a, const PeerDescriptor& b) {
    return a.node != b.node ? a.node < b.node : a.timestamp > b.timestamp;
  });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const PeerDescriptor& a, const PeerDescriptor& b) { return a.node == b.node; }),
             pool.end());

  std::sort(pool.begin(), pool.end(), [](const PeerDescriptor& a, const PeerDescriptor& b) {
    return a.timestamp != b.timestamp ? a.timestamp > b.timestamp : a.node < b.node;
  });
  if (pool.size() > cache_size) pool.resize(cache_size);
  return pool;
}

void gossip_round(std::vector<SamplerCache>& caches, std::uint64_t current_cycle,
                  std::size_t cache_size, Rng& rng) {
  std::vector<NodeId> order(caches.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng.engine());

  std::vector<PeerDescriptor> merged;
  for (NodeId i : order) {
    auto& mine = caches[i].entries;
    if (mine.empty()) continue;
    const NodeId j = mine[rng.index(mine.size())].node;
    auto& theirs = caches[j].entries;

    merged.clear();
    merged.insert(merged.end(), mine.begin(), mine.end());
    merged.insert(merged.end(), theirs.begin(), theirs.end());
    merged.push_back({i, current_cycle});
    merged.push_back({j, current_cycle});

    mine = keep_freshest(i, merged, cache_size);
    theirs = keep_freshest(j, merged, cache_size);
  }
}

std::vector<SamplerCache> bootstrap_caches(std::size_t population, std::size_t cache_size, Rng& rng) {
  std::vector<SamplerCache> caches(population);
  if (population < 2) {
    for (std::size_t i = 0; i < population; ++i) caches[i].owner = static_cast<NodeId>(i);
    return caches;
  }
  const std::size_t fill = std::min(cache_size, population - 1);
  OracleSampler oracle(population);
  for (std::size_t i = 0; i < population; ++i) {
    auto& cache = caches[i];
    cache.owner = static_cast<NodeId>(i);
    while (cache.entries.size() < fill) {
      const NodeId pick = oracle.get_random_node(cache.owner, rng);
      const bool dup = std::any_of(cache.entries.begin(), cache.entries.end(),
                                   [pick](const PeerDescriptor& d) { return d.node == pick; });
      if (!dup) cache.entries.push_back({pick, 0});
    }
  }
  return caches;
}

GossipSampler::GossipSampler(std::size_t population, std::size_t cache_size, Rng& rng)
    : cache_size_(cache_size), caches_(bootstrap_caches(population, cache_size, rng)) {}

NodeId GossipSampler::get_random_node(NodeId caller, Rng& rng) {
  if (caches_.size() < 2) throw NoPeerAvailable();
  if (caller >= caches_.size()) throw ContractViolation("caller out of range");
  const auto& entries = caches_[caller].entries;
  if (entries.empty()) throw NoPeerAvailable();
  return entries[rng.index(entries.size())].node;
}

void GossipSampler::advance(std::uint64_t cycle, Rng& rng) {
  if (caches_.size() >= 2) gossip_round(caches_, cycle, cache_size_, rng);
}

std::string_view to_string(SamplerKind kind) noexcept {
  return kind == SamplerKind::Oracle ? "oracle" : "gossip";
}

std::unique_ptr<PeerSampler> make_sampler(SamplerKind kind, std::size_t population,
                                          std::size_t cache_size, Rng& rng) {
  if (kind == SamplerKind::Gossip) return std::make_unique<GossipSampler>(population, cache_size, rng);
  return std::make_unique<OracleSampler>(population);
}

}  // namespace slacer
