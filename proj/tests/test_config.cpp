#include <sstream>

#include "doctest.h"
#include "slacer/config.hpp"
#include "slacer/experiment.hpp"

using namespace slacer;

namespace {

ExperimentConfig roundtrip(const ExperimentConfig& c) {
  std::istringstream in(serialize_config(c));
  return parse_config(in);
}

}  // namespace

TEST_CASE("defaults") {
  const ExperimentConfig c;
  CHECK(c.params.w == 0.9);
  CHECK(c.params.m == 0.001);
  CHECK(c.params.mr == 0.01);
  CHECK(c.params.max_view_size == 20);
  CHECK(c.replicates == 10);
  CHECK(c.stop_coop_fraction == 0.98);
  CHECK(validate(c).empty());
}

TEST_CASE("serialised configs parse back to the same value") {
  CHECK(roundtrip(ExperimentConfig{}) == ExperimentConfig{});
  for (auto name : preset_names()) CHECK(roundtrip(preset(name)) == preset(name));

  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    ExperimentConfig c;
    c.n = 2 + rng.index(100000);
    c.params.w = rng.uniform();
    c.params.m = rng.uniform() * 1e-3;
    c.params.mr = rng.uniform() / 3;
    c.payoffs = PdPayoffs::from_d(rng.uniform() * 1e-3);
    c.mode = rng.bernoulli(0.5) ? SchedulerMode::FullAsync : SchedulerMode::SemiAsync;
    c.full_async_compare_prob = rng.uniform();
    c.sampler = rng.bernoulli(0.5) ? SamplerKind::Gossip : SamplerKind::Oracle;
    c.seed = rng.engine()();
    c.stop_coop_fraction = rng.uniform();
    c.stop_on_convergence = rng.bernoulli(0.5);
    c.metrics_detail = rng.bernoulli(0.5) ? MetricsDetail::Full : MetricsDetail::Light;
    c.initial_topology = rng.bernoulli(0.5) ? InitialTopology::Empty : InitialTopology::Random;
    c.initial_strategy = rng.bernoulli(0.5) ? Strategy::Cooperate : Strategy::Defect;
    if (rng.bernoulli(0.5)) {
      ChurnSchedule ch{rng.uniform(), std::nullopt, rng.index(10), rng.index(100)};
      if (rng.bernoulli(0.5)) ch.at_cycle = rng.index(1000);
      c.churn = ch;
    }
    if (rng.bernoulli(0.5)) c.sweep = SweepSpec{"w", {"0.5", "0.75"}};
    c.output_path = rng.bernoulli(0.5) ? "" : "out/x";
    CHECK(roundtrip(c) == c);
  }
}

TEST_CASE("validation lists every problem") {
  ExperimentConfig c;
  c.n = 1;
  c.replicates = 0;
  c.params.w = 1.5;
  c.payoffs.t = 0.5;
  const auto errors = validate(c);
  CHECK(errors.size() == 4);
}

TEST_CASE("parse errors are itemised by line") {
  std::istringstream in("n = 10\nbogus = 3\nw = abc\nno equals sign\n");
  try {
    parse_config(in);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.items().size() == 3);
    CHECK(e.items()[0].find("line 2") == 0);
    CHECK(e.items()[0].find("unknown key 'bogus'") != std::string::npos);
    CHECK(e.items()[1].find("line 3") == 0);
    CHECK(e.items()[2].find("line 4") == 0);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  std::istringstream in("# header\n\nn = 50   # small\nmode = full\n");
  const auto c = parse_config(in);
  CHECK(c.n == 50);
  CHECK(c.mode == SchedulerMode::FullAsync);
}

TEST_CASE("the d shorthand sets all four payoffs") {
  ExperimentConfig c;
  apply_setting(c, "d", "0.01");
  CHECK(c.payoffs.t == 1.9);
  CHECK(c.payoffs.r == 1.0);
  CHECK(c.payoffs.p == 0.02);
  CHECK(c.payoffs.s == 0.01);
}

TEST_CASE("sweeps") {
  ExperimentConfig c;
  apply_setting(c, "sweep", "w:0.5,0.7,0.9,1");
  const auto points = expand_sweep(c);
  REQUIRE(points.size() == 4);
  CHECK(points[1].value == "0.7");
  CHECK(points[1].config.params.w == 0.7);
  CHECK(points[3].config.params.w == 1.0);
  CHECK_THROWS_AS(apply_setting(c, "sweep", "w:0.5,x"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "sweep", "nocolon"), ConfigError);
  CHECK(expand_sweep(ExperimentConfig{}).size() == 1);
}

TEST_CASE("churn keys") {
  ExperimentConfig c;
  apply_setting(c, "churn_fraction", "0.25");
  apply_setting(c, "churn_at", "converged");
  REQUIRE(c.churn);
  CHECK(c.churn->fraction == 0.25);
  CHECK_FALSE(c.churn->at_cycle);
  apply_setting(c, "churn_at", "40");
  CHECK(c.churn->at_cycle == 40u);
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 7);
  const auto slac = preset("fig4-slac-partition");
  CHECK(slac.params.w == 1.0);
  CHECK(slac.params.m == 0.001);
  CHECK(slac.params.mr == 0.01);
  REQUIRE(slac.sweep);
  CHECK(slac.sweep->values == std::vector<std::string>{"2000", "4000", "8000"});
  CHECK(preset("fig4-slac-partition", 4000).sweep->values == std::vector<std::string>{"2000", "4000"});

  const auto churn = preset("churn-recovery");
  REQUIRE(churn.churn);
  CHECK(churn.churn->fraction == 0.5);
  CHECK_FALSE(churn.churn->at_cycle);
  CHECK(churn.churn->interval == 0);

  const auto typical = preset("fig7-typical-run");
  CHECK(typical.n == 2000);
  CHECK(typical.params.w == 0.9);
  CHECK(typical.metrics_interval == 1);
  CHECK(typical.metrics_detail == MetricsDetail::Full);

  for (auto name : preset_names()) CHECK(validate(preset(name)).empty());
}

TEST_CASE("unknown presets list the valid names") {
  try {
    preset("fig9");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.items().size() == 8);
    CHECK(std::string(e.what()).find("w-sweep") != std::string::npos);
  }
}

TEST_CASE("rate advice is a warning") {
  ExperimentConfig c;
  c.params.m = 0.1;
  CHECK(validate(c).empty());
  CHECK(config_warnings(c).size() == 1);
}
