#include "slacer/verify.hpp"

#include <sstream>

#include "slacer/engine.hpp"
#include "slacer/pd_game.hpp"
#include "slacer/protocol.hpp"

namespace slacer {

GraphSnapshot random_labelled_graph(std::size_t n, std::size_t max_view_size, Rng& rng) {
  const double density = rng.uniform() * 0.3;
  const double coop_share = rng.uniform();
  std::vector<Strategy> strategies(n);
  for (auto& s : strategies) s = rng.bernoulli(coop_share) ? Strategy::Cooperate : Strategy::Defect;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (rng.bernoulli(density)) edges.emplace_back(a, b);
  return GraphSnapshot::from_edges(std::move(strategies), edges, max_view_size);
}

CheckResult check_ccp_oracle(std::size_t graphs, std::uint64_t seed) {
  Rng rng(seed);
  MetricsOptions options;
  CheckResult result{"ccp equals pairwise reference", true, ""};
  for (std::size_t k = 0; k < graphs; ++k) {
    const auto g = random_labelled_graph(2 + rng.index(59), 60, rng);
    const auto fast = ccp(g, options, rng);
    const double slow = ccp_bruteforce(g);
    if (!fast.value || *fast.value != slow) {
      std::ostringstream msg;
      msg << "graph " << k << " (N=" << g.size() << "): fast=" << fast.value.value_or(-1) << " reference=" << slow;
      return {result.name, false, msg.str()};
    }
  }
  result.detail = std::to_string(graphs) + " graphs agree exactly";
  return result;
}

CheckResult check_ccpl_oracle(std::size_t graphs, std::uint64_t seed) {
  Rng rng(seed);
  MetricsOptions options;
  CheckResult result{"ccpl equals pairwise reference", true, ""};
  for (std::size_t k = 0; k < graphs; ++k) {
    const auto g = random_labelled_graph(2 + rng.index(59), 60, rng);
    const auto fast = ccpl(g, options, rng);
    const auto slow = ccpl_bruteforce(g);
    if (fast.value != slow) {
      std::ostringstream msg;
      msg << "graph " << k << " (N=" << g.size() << "): fast=" << fast.value.value_or(-1)
          << " reference=" << slow.value_or(-1);
      return {result.name, false, msg.str()};
    }
  }
  result.detail = std::to_string(graphs) + " graphs agree exactly";
  return result;
}

CheckResult check_protocol_fuzz(std::size_t operations, std::uint64_t seed) {
  Rng rng(seed);
  constexpr std::size_t n = 40;
  ProtocolParams params;
  params.max_view_size = 6;
  PdPayoffs payoffs;
  OverlayGraph graph(n, params.max_view_size);
  OracleSampler sampler(n);
  CheckResult result{"protocol invariants under fuzzing", true, ""};

  auto fail = [&](std::size_t op, const std::string& why) {
    return CheckResult{result.name, false, "operation " + std::to_string(op) + ": " + why};
  };

  for (std::size_t op = 0; op < operations; ++op) {
    const auto i = static_cast<NodeId>(rng.index(n));
    const auto j = static_cast<NodeId>(rng.index(n));
    params.w = rng.uniform();
    switch (rng.index(8)) {
      case 0: graph.add_link(i, j, rng); break;
      case 1: graph.drop_link(i, j); break;
      case 2: play_round(i, graph, sampler, payoffs, rng); break;
      case 3: {
        params.m = rng.uniform();
        params.mr = rng.uniform();
        std::vector<NodeState> before;
        for (NodeId k = 0; k < n; ++k) before.push_back(graph.state(k));
        const auto outcome = compare_and_adapt(i, graph, sampler, params, rng);
        if (graph.state(i).games_played != 0 || graph.state(i).utility_sum != 0.0)
          return fail(op, "utility not reset after comparison");
        const auto& partner = graph.state(outcome.partner);
        const auto& prior = before[outcome.partner];
        if (partner.strategy != prior.strategy || partner.utility_sum != prior.utility_sum ||
            partner.games_played != prior.games_played)
          return fail(op, "comparison partner state modified");
        if (!outcome.copied && (outcome.strategy_mutated || outcome.links_mutated))
          return fail(op, "mutation without copy");
        break;
      }
      case 4: if (i != j) copy_state_partial(i, j, graph, params, rng); break;
      case 5: mutate_links(i, graph, sampler, params, rng); break;
      case 6: mutate_strategy(i, graph); break;
      default:
        if (rng.bernoulli(0.01)) apply_churn(graph, sampler, rng.uniform(), rng);
        else play_round(i, graph, sampler, payoffs, rng);
        break;
    }
    if (graph.degree(i) > params.max_view_size || graph.degree(j) > params.max_view_size)
      return fail(op, "degree cap exceeded");
    if (op % 64 == 0 || op + 1 == operations) {
      if (auto problems = graph.audit(); !problems.empty()) return fail(op, problems.front());
    }
  }
  result.detail = std::to_string(operations) + " operations, audits clean";
  return result;
}

CheckResult check_semi_async_counts(std::size_t cycles, std::uint64_t seed) {
  Rng rng(seed);
  constexpr std::size_t n = 200;
  ProtocolParams params;
  PdPayoffs payoffs;
  OverlayGraph graph(n, params.max_view_size);
  OracleSampler sampler(n);
  wire_random_topology(graph, params.max_view_size / 2, rng);
  for (std::size_t c = 0; c < cycles; ++c) {
    const auto stats = run_cycle(graph, sampler, params, payoffs, {}, rng);
    if (stats.games_played != 10 * n || stats.comparisons_executed != n)
      return {"semi-async event counts", false,
              "cycle " + std::to_string(c) + ": games=" + std::to_string(stats.games_played) +
                  " comparisons=" + std::to_string(stats.comparisons_executed)};
  }
  return {"semi-async event counts", true, std::to_string(cycles) + " cycles with 10N games and N comparisons"};
}

std::vector<CheckResult> run_verification(std::uint64_t seed) {
  return {check_ccp_oracle(500, seed), check_ccpl_oracle(500, seed + 1), check_protocol_fuzz(100000, seed + 2),
          check_semi_async_counts(20, seed + 3)};
}

}  // namespace slacer
