#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "slacer/rng.hpp"
#include "slacer/types.hpp"

namespace slacer {

class NoPeerAvailable : public std::runtime_error {
 public:
  NoPeerAvailable() : std::runtime_error("no peer available") {}
};

/// Population-wide random node service, independent of the overlay being
/// adapted. Implementations never return the caller.
class PeerSampler {
 public:
  virtual ~PeerSampler() = default;

  virtual NodeId get_random_node(NodeId caller, Rng& rng) = 0;

  /// Called once at the start of every simulation cycle.
  virtual void advance(std::uint64_t /*cycle*/, Rng& /*rng*/) {}
};

/// Exact uniform draw over every node except the caller.
class OracleSampler final : public PeerSampler {
 public:
  explicit OracleSampler(std::size_t population) : population_(population) {}
  NodeId get_random_node(NodeId caller, Rng& rng) override;

 private:
  std::size_t population_;
};

struct PeerDescriptor {
  NodeId node = 0;
  std::uint64_t timestamp = 0;
  friend bool operator==(const PeerDescriptor&, const PeerDescriptor&) = default;
};

struct SamplerCache {
  NodeId owner = 0;
  std::vector<PeerDescriptor> entries;
};

/// Keeps the `cache_size` freshest distinct descriptors from `candidates`,
/// excluding `owner`. Duplicates collapse to their freshest timestamp; equal
/// timestamps are ordered by ascending node id. Result is sorted by that
/// same order.
std::vector<PeerDescriptor> keep_freshest(NodeId owner, std::span<const PeerDescriptor> candidates,
                                          std::size_t cache_size);

/// One newscast-style exchange round. Nodes act once each, in a random order:
/// each picks a uniform entry of its cache as partner and both sides merge the
/// two caches plus fresh self-descriptors stamped with `current_cycle`.
void gossip_round(std::vector<SamplerCache>& caches, std::uint64_t current_cycle,
                  std::size_t cache_size, Rng& rng);

/// Fills every cache with min(cache_size, N-1) distinct random peers at
/// timestamp 0.
std::vector<SamplerCache> bootstrap_caches(std::size_t population, std::size_t cache_size, Rng& rng);

/// Gossip-maintained sampler: draws uniformly from the caller's cache and
/// runs one gossip round per cycle.
class GossipSampler final : public PeerSampler {
 public:
  GossipSampler(std::size_t population, std::size_t cache_size, Rng& rng);

  NodeId get_random_node(NodeId caller, Rng& rng) override;
  void advance(std::uint64_t cycle, Rng& rng) override;

  const std::vector<SamplerCache>& caches() const noexcept { return caches_; }

 private:
  std::size_t cache_size_;
  std::vector<SamplerCache> caches_;
};

enum class SamplerKind { Oracle, Gossip };

std::string_view to_string(SamplerKind kind) noexcept;

std::unique_ptr<PeerSampler> make_sampler(SamplerKind kind, std::size_t population,
                                          std::size_t cache_size, Rng& rng);

}  // namespace slacer
