#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "doctest.h"
#include "slacer/metrics.hpp"
#include "slacer/verify.hpp"

using namespace slacer;

namespace {

constexpr auto C = Strategy::Cooperate;
constexpr auto D = Strategy::Defect;
using Edges = std::vector<std::pair<NodeId, NodeId>>;

GraphSnapshot make(std::vector<Strategy> s, const Edges& e) {
  return GraphSnapshot::from_edges(std::move(s), e, 20);
}

GraphSnapshot all_c(std::size_t n, const Edges& e) { return make(std::vector<Strategy>(n, C), e); }

// All-pairs distances; intermediates restricted to cooperators when asked.
struct Apsp {
  static constexpr int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d;

  Apsp(const GraphSnapshot& g, bool coop_only) {
    const std::size_t n = g.size();
    d.assign(n, std::vector<int>(n, inf));
    for (NodeId i = 0; i < n; ++i) {
      d[i][i] = 0;
      for (NodeId j : g.neighbors(i)) d[i][j] = 1;
    }
    for (NodeId k = 0; k < n; ++k) {
      if (coop_only && !g.cooperates(k)) continue;
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
};

double ccp_oracle(const GraphSnapshot& g) {
  const Apsp a(g, true);
  const std::size_t n = g.size();
  double hit = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) hit += a.d[i][j] < Apsp::inf;
  return hit / (n * (n - 1) / 2.0);
}

std::optional<double> ccpl_oracle(const GraphSnapshot& g) {
  const Apsp a(g, true);
  double sum = 0, count = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (a.d[i][j] < Apsp::inf) {
        sum += a.d[i][j];
        ++count;
      }
  if (count == 0) return std::nullopt;
  return sum / count;
}

Rng& rng() {
  static Rng r(17);
  return r;
}

double exact_ccp(const GraphSnapshot& g) { return *ccp(g, MetricsOptions{}, rng()).value; }

Edges path(std::size_t n) {
  Edges e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

}  // namespace

TEST_CASE("cooperation fraction") {
  CHECK(cooperation_fraction(make({D, D, D}, {})) == 0.0);
  CHECK(cooperation_fraction(all_c(4, {})) == 1.0);
  std::vector<Strategy> s(50, C);
  s[7] = D;
  CHECK(cooperation_fraction(make(s, {})) == doctest::Approx(0.98));
}

TEST_CASE("ccp worked examples") {
  CHECK(exact_ccp(all_c(5, path(5))) == 1.0);
  const auto five = make({C, C, D, C, C}, path(5));
  CHECK(exact_ccp(five) == doctest::Approx(0.6));
  CHECK(ccp_oracle(five) == doctest::Approx(0.6));
  const auto star = make({D, D, D, D}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(exact_ccp(star) == doctest::Approx(0.5));
  CHECK(ccp_bruteforce(make({D, D}, {{0, 1}})) == 1.0);
  CHECK(ccp_bruteforce(make({C, C}, {})) == 0.0);
}

TEST_CASE("ccp and ccpl agree with an all-pairs oracle") {
  Rng r(2024);
  for (int t = 0; t < 150; ++t) {
    const auto g = random_labelled_graph(2 + r.index(30), 60, r);
    CHECK(exact_ccp(g) == doctest::Approx(ccp_oracle(g)).epsilon(1e-12));
    CHECK(ccp_bruteforce(g) == doctest::Approx(ccp_oracle(g)).epsilon(1e-12));
    const auto fast = ccpl(g, MetricsOptions{}, r).value;
    const auto slow = ccpl_oracle(g);
    REQUIRE(fast.has_value() == slow.has_value());
    if (slow) CHECK(*fast == doctest::Approx(*slow).epsilon(1e-12));
    REQUIRE(ccpl_bruteforce(g).has_value() == slow.has_value());
  }
}

TEST_CASE("ccpl worked examples") {
  CHECK(*ccpl(all_c(2, {{0, 1}}), MetricsOptions{}, rng()).value == 1.0);
  CHECK(*ccpl(all_c(3, path(3)), MetricsOptions{}, rng()).value == doctest::Approx(4.0 / 3));
  CHECK(*ccpl(make({C, C, D, C, C}, path(5)), MetricsOptions{}, rng()).value == doctest::Approx(4.0 / 3));
  CHECK_FALSE(ccpl(make({C, C}, {}), MetricsOptions{}, rng()).value.has_value());
}

TEST_CASE("turning a defector into a cooperator never lowers ccp") {
  Rng r(99);
  for (int t = 0; t < 100; ++t) {
    auto g = random_labelled_graph(3 + r.index(25), 60, r);
    std::vector<Strategy> s(g.size());
    Edges e;
    for (NodeId i = 0; i < g.size(); ++i) {
      s[i] = g.strategy(i);
      for (NodeId j : g.neighbors(i))
        if (i < j) e.emplace_back(i, j);
    }
    const double before = ccp_bruteforce(g);
    for (NodeId i = 0; i < s.size(); ++i)
      if (s[i] == D) {
        auto flipped_s = s;
        flipped_s[i] = C;
        CHECK(ccp_bruteforce(make(flipped_s, e)) >= before);
      }
  }
}

TEST_CASE("clustering coefficient") {
  CHECK(clustering_coefficient(all_c(3, {{0, 1}, {1, 2}, {0, 2}})) == 1.0);
  CHECK(clustering_coefficient(all_c(3, path(3))) == 0.0);
  const Edges k4_minus{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  CHECK(clustering_coefficient(all_c(4, k4_minus)) == doctest::Approx(5.0 / 6));
}

TEST_CASE("average path length") {
  Edges k5;
  for (NodeId i = 0; i < 5; ++i)
    for (NodeId j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
  CHECK(*avg_path_length(all_c(5, k5), MetricsOptions{}, rng()).value == 1.0);
  CHECK(*avg_path_length(all_c(3, path(3)), MetricsOptions{}, rng()).value == doctest::Approx(4.0 / 3));
  auto ring = path(6);
  ring.emplace_back(5, 0);
  CHECK(*avg_path_length(all_c(6, ring), MetricsOptions{}, rng()).value == doctest::Approx(1.8));
  CHECK_FALSE(avg_path_length(all_c(4, {}), MetricsOptions{}, rng()).value.has_value());
}

TEST_CASE("ccpl equals path length on connected all-cooperator graphs") {
  Rng r(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + r.index(40);
    Edges e = path(n);
    for (int k = 0; k < 20; ++k) {
      const auto a = static_cast<NodeId>(r.index(n)), b = static_cast<NodeId>(r.index(n));
      if (a != b) e.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    const auto g = all_c(n, e);
    CHECK(*ccpl(g, MetricsOptions{}, r).value == doctest::Approx(*avg_path_length(g, MetricsOptions{}, r).value));
  }
}

TEST_CASE("components") {
  const auto conn = all_c(4, path(4));
  CHECK(largest_component(conn).size == 4);
  CHECK(largest_component(conn).fraction == 1.0);
  const auto two = all_c(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(largest_component(two).size == 3);
  CHECK(largest_component(two).fraction == 0.5);
  CHECK(largest_component_members(two) == std::vector<NodeId>{0, 1, 2});
  const auto empty = all_c(8, {});
  CHECK(largest_component(empty).size == 1);
  CHECK(largest_component(empty).fraction == doctest::Approx(1.0 / 8));
}

TEST_CASE("degree histogram") {
  auto h = degree_histogram(all_c(5, {}));
  CHECK(h.size() == 21);
  CHECK(h[0] == 5);
  h = degree_histogram(all_c(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(h[2] == 3);
  Rng r(8);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_labelled_graph(2 + r.index(58), 60, r);
    const auto hist = degree_histogram(g);
    std::size_t nodes = 0, ends = 0;
    for (std::size_t d = 0; d < hist.size(); ++d) {
      nodes += hist[d];
      ends += d * hist[d];
    }
    CHECK(nodes == g.size());
    CHECK(ends == 2 * g.link_count());
  }
}

TEST_CASE("sampled estimators are stable under a doubled sample") {
  Rng r(31);
  const std::size_t n = 6000;
  std::vector<Strategy> s(n);
  Edges e;
  for (NodeId i = 0; i < n; ++i) {
    s[i] = r.bernoulli(0.8) ? C : D;
    e.emplace_back(i, (i + 1) % n);
    for (int k = 0; k < 3; ++k) {
      const auto j = static_cast<NodeId>(r.index(n));
      if (j != i) e.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  const auto g = GraphSnapshot::from_edges(s, e, 40);

  MetricsOptions base;
  MetricsOptions twice = base;
  twice.ccp_pair_samples *= 2;
  twice.ccpl_source_samples *= 2;
  twice.path_source_samples *= 2;
  Rng r1(1), r2(2);
  const auto c1 = ccp(g, base, r1), c2 = ccp(g, twice, r2);
  CHECK(c1.sampled);
  CHECK(std::abs(*c1.value - *c2.value) < 0.02 * *c2.value);
  const auto l1 = ccpl(g, base, r1), l2 = ccpl(g, twice, r2);
  CHECK(l1.sampled);
  CHECK(std::abs(*l1.value - *l2.value) < 0.02 * *l2.value);
  const auto p1 = avg_path_length(g, base, r1), p2 = avg_path_length(g, twice, r2);
  CHECK(p1.sampled);
  CHECK(std::abs(*p1.value - *p2.value) < 0.02 * *p2.value);
}

TEST_CASE("full measurement fills every field") {
  const auto g = make({C, C, D, C, C}, path(5));
  Rng r(1);
  const auto m = measure(g, MetricsDetail::Full, MetricsOptions{}, r);
  CHECK(m.full);
  CHECK(m.coop_fraction == doctest::Approx(0.8));
  CHECK(*m.ccp == doctest::Approx(0.6));
  CHECK(*m.ccpl == doctest::Approx(4.0 / 3));
  CHECK(m.gcc_size == 5);
  CHECK(m.avg_path_length.has_value());
  const auto light = measure(g, MetricsDetail::Light, MetricsOptions{}, r);
  CHECK_FALSE(light.full);
  CHECK_FALSE(light.ccpl.has_value());
}
