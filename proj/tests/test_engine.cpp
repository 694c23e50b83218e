#include <cmath>
#include <set>

#include "doctest.h"
#include "slacer/engine.hpp"
#include "slacer/simulation.hpp"

using namespace slacer;

namespace {

double total_utility(const OverlayGraph& g) {
  double sum = 0;
  for (NodeId i = 0; i < g.size(); ++i) sum += g.state(i).utility_sum;
  return sum;
}

ExperimentConfig small_config(std::size_t n) {
  ExperimentConfig c;
  c.n = n;
  c.max_cycles = 300;
  return c;
}

}  // namespace

TEST_CASE("semi-async cycle event counts are exact") {
  OverlayGraph g(100, 20);
  OracleSampler sampler(100);
  Rng rng(1);
  wire_random_topology(g, 10, rng);
  for (int c = 0; c < 5; ++c) {
    const auto stats = run_cycle(g, sampler, ProtocolParams{}, PdPayoffs{}, CycleOptions{}, rng);
    CHECK(stats.games_played == 1000);
    CHECK(stats.comparisons_executed == 100);
    CHECK(stats.copies <= stats.comparisons_executed);
  }
  CHECK(g.audit().empty());
}

TEST_CASE("full-async comparison rate is binomial") {
  OverlayGraph g(100, 20);
  OracleSampler sampler(100);
  Rng rng(2);
  CycleOptions opts;
  opts.mode = SchedulerMode::FullAsync;
  const int cycles = 50;
  double total = 0;
  for (int c = 0; c < cycles; ++c) {
    const auto stats = run_cycle(g, sampler, ProtocolParams{}, PdPayoffs{}, opts, rng);
    CHECK(stats.games_played == 1000);
    total += static_cast<double>(stats.comparisons_executed);
  }
  const double se = std::sqrt(1000 * 0.1 * 0.9 / cycles);
  CHECK(std::abs(total / cycles - 100.0) <= 3 * se);
}

TEST_CASE("two cooperators gain 40 per cycle") {
  OverlayGraph g(2, 20);
  OracleSampler sampler(2);
  Rng rng(3);
  g.set_strategy(0, Strategy::Cooperate);
  g.set_strategy(1, Strategy::Cooperate);
  CycleOptions opts;
  opts.mode = SchedulerMode::FullAsync;
  opts.full_async_compare_prob = 0.0;
  const auto stats = run_cycle(g, sampler, ProtocolParams{}, PdPayoffs{}, opts, rng);
  CHECK(stats.games_played == 20);
  CHECK(stats.comparisons_executed == 0);
  CHECK(total_utility(g) == doctest::Approx(40.0));
}

TEST_CASE("run_cycle needs two nodes") {
  OverlayGraph g(1, 20);
  OracleSampler sampler(1);
  Rng rng(1);
  CHECK_THROWS_AS(run_cycle(g, sampler, ProtocolParams{}, PdPayoffs{}, CycleOptions{}, rng), ContractViolation);
}

TEST_CASE("churn") {
  Rng rng(4);
  SUBCASE("fraction 0 changes nothing") {
    OverlayGraph g(50, 20);
    OracleSampler sampler(50);
    wire_random_topology(g, 10, rng);
    const auto links = g.link_count();
    CHECK(apply_churn(g, sampler, 0.0, rng).empty());
    CHECK(g.link_count() == links);
  }
  SUBCASE("fraction 1 resets everyone") {
    OverlayGraph g(50, 20);
    OracleSampler sampler(50);
    wire_random_topology(g, 10, rng);
    for (NodeId i = 0; i < 50; ++i) {
      g.set_strategy(i, Strategy::Cooperate);
      g.record_payoff(i, 1.0);
    }
    CHECK(apply_churn(g, sampler, 1.0, rng).size() == 50);
    for (NodeId i = 0; i < 50; ++i) {
      CHECK(g.strategy(i) == Strategy::Defect);
      CHECK(g.state(i).games_played == 0);
    }
    CHECK(g.link_count() <= 50);
    CHECK(g.link_count() >= 25);
  }
  SUBCASE("fraction 0.5 at N=2000") {
    OverlayGraph g(2000, 20);
    OracleSampler sampler(2000);
    wire_random_topology(g, 10, rng);
    for (NodeId i = 0; i < 2000; ++i) g.set_strategy(i, Strategy::Cooperate);
    const auto reset = apply_churn(g, sampler, 0.5, rng);
    CHECK(reset.size() == 1000);
    CHECK(std::set<NodeId>(reset.begin(), reset.end()).size() == 1000);
    std::size_t defectors = 0;
    for (NodeId i = 0; i < 2000; ++i) defectors += g.strategy(i) == Strategy::Defect;
    CHECK(defectors == 1000);
    for (NodeId i : reset) CHECK(g.degree(i) >= 1);
    CHECK(g.audit().empty());
  }
  SUBCASE("bad fraction") {
    OverlayGraph g(5, 20);
    OracleSampler sampler(5);
    CHECK_THROWS_AS(apply_churn(g, sampler, 1.5, rng), ContractViolation);
  }
}

TEST_CASE("an all-cooperator start converges at the first sample") {
  auto c = small_config(100);
  c.initial_strategy = Strategy::Cooperate;
  const auto r = run_until(c);
  CHECK(r.stop_reason == StopReason::Converged);
  CHECK(r.final_cycle == 0);
  REQUIRE(r.convergence_cycle);
  CHECK(*r.convergence_cycle == 0);
  CHECK(r.final_metrics.full);
}

TEST_CASE("without mutation no cooperation appears") {
  auto c = small_config(200);
  c.params.m = 0;
  c.params.mr = 0;
  c.max_cycles = 40;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = run_until(c, seed);
    CHECK(r.stop_reason == StopReason::CycleBudget);
    CHECK(r.final_cycle == 40);
    CHECK(r.final_metrics.coop_fraction == 0.0);
  }
}

TEST_CASE("runs are deterministic") {
  auto c = small_config(200);
  c.max_cycles = 60;
  c.metrics_detail = MetricsDetail::Full;
  const auto a = run_until(c, 9);
  const auto b = run_until(c, 9);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    CHECK(a.trace[k].metrics.coop_fraction == b.trace[k].metrics.coop_fraction);
    CHECK(a.trace[k].metrics.ccp == b.trace[k].metrics.ccp);
    CHECK(a.trace[k].metrics.clustering == b.trace[k].metrics.clustering);
    CHECK(a.trace[k].activity.copies == b.trace[k].activity.copies);
  }
  CHECK(a.final_cycle == b.final_cycle);
}

TEST_CASE("measuring does not perturb the trajectory") {
  auto c = small_config(150);
  Simulation quiet(c, 5), noisy(c, 5);
  for (int k = 0; k < 30; ++k) {
    quiet.step();
    noisy.step();
    noisy.measure(MetricsDetail::Full);
  }
  CHECK(GraphSnapshot::capture(quiet.graph()).link_count() == GraphSnapshot::capture(noisy.graph()).link_count());
  for (NodeId i = 0; i < 150; ++i) {
    CHECK(quiet.graph().strategy(i) == noisy.graph().strategy(i));
    CHECK(std::set<NodeId>(quiet.graph().view(i).begin(), quiet.graph().view(i).end()) ==
          std::set<NodeId>(noisy.graph().view(i).begin(), noisy.graph().view(i).end()));
  }
}

TEST_CASE("convergence does not depend on the initial topology") {
  for (auto topo : {InitialTopology::Random, InitialTopology::Empty}) {
    auto c = small_config(300);
    c.max_cycles = 2000;
    c.initial_topology = topo;
    const auto r = run_until(c, 3);
    CHECK(r.stop_reason == StopReason::Converged);
  }
}

TEST_CASE("a churn window ends the run") {
  auto c = small_config(100);
  c.churn = ChurnSchedule{0.5, 5, 0, 3};
  const auto r = run_until(c, 2);
  CHECK(r.stop_reason == StopReason::ChurnWindow);
  CHECK(r.churn_cycles == std::vector<std::uint64_t>{5});
  CHECK(r.final_cycle == 8);
}
