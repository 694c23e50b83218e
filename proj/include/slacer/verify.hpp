#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slacer/metrics.hpp"
#include "slacer/rng.hpp"

namespace slacer {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Random strategy-labelled Erdos-Renyi graph with n nodes and a random edge
/// density.
GraphSnapshot random_labelled_graph(std::size_t n, std::size_t max_view_size, Rng& rng);

/// ccp and ccpl against their pairwise references on `graphs` random graphs
/// with N in [2, 60].
CheckResult check_ccp_oracle(std::size_t graphs, std::uint64_t seed);
CheckResult check_ccpl_oracle(std::size_t graphs, std::uint64_t seed);

/// Randomised sequences of protocol operations on a small overlay, auditing
/// symmetry, degree cap, self-loops, duplicates and utility reset throughout.
CheckResult check_protocol_fuzz(std::size_t operations, std::uint64_t seed);

/// SemiAsync cycles perform exactly 10N games and N comparisons.
CheckResult check_semi_async_counts(std::size_t cycles, std::uint64_t seed);

std::vector<CheckResult> run_verification(std::uint64_t seed);

}  // namespace slacer
