#pragma once

#include <string>
#include <vector>

#include "slacer/overlay_graph.hpp"
#include "slacer/peer_sampler.hpp"
#include "slacer/rng.hpp"

namespace slacer {

/// The (W, M, MR) protocol space plus the view cap. W = 1 is plain SLAC.
struct ProtocolParams {
  double w = 0.9;    // per-link drop probability on copy and on link mutation
  double m = 0.001;  // strategy mutation rate
  double mr = 0.01;  // link mutation rate
  std::size_t max_view_size = 20;

  std::vector<std::string> validate() const;
  // Non-fatal remarks, e.g. a link mutation rate below the strategy rate.
  std::vector<std::string> warnings() const;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

struct AdaptOutcome {
  bool copied = false;
  NodeId partner = 0;
  bool strategy_mutated = false;
  bool links_mutated = false;
};

/// Periodic utility comparison of node i against a sampler-drawn node j.
///
/// When avg(i) <= avg(j), i copies j partially and may then mutate its
/// strategy (prob. m) and links (prob. mr), in that order. Either way i's
/// utility window is reset. j is only read, apart from symmetric link
/// changes caused by i's additions.
AdaptOutcome compare_and_adapt(NodeId i, OverlayGraph& graph, PeerSampler& sampler,
                               const ProtocolParams& params, Rng& rng);

/// i adopts j's strategy, drops each old link with prob. w, then links to
/// each of j's neighbors (ascending id, skipping i) and finally to j.
void copy_state_partial(NodeId i, NodeId j, OverlayGraph& graph, const ProtocolParams& params, Rng& rng);

/// Drops each of i's links with prob. w, then adds one link to a
/// sampler-drawn node.
void mutate_links(NodeId i, OverlayGraph& graph, PeerSampler& sampler, const ProtocolParams& params,
                  Rng& rng);

void mutate_strategy(NodeId i, OverlayGraph& graph);

}  // namespace slacer
