#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slacer/engine.hpp"
#include "slacer/metrics.hpp"
#include "slacer/pd_game.hpp"
#include "slacer/peer_sampler.hpp"
#include "slacer/protocol.hpp"

namespace slacer {

enum class InitialTopology { Random, Empty };

struct ChurnSchedule {
  double fraction = 0.5;
  std::optional<std::uint64_t> at_cycle;  // first event; nullopt = at first convergence
  std::uint64_t interval = 0;             // repeat period after the first event, 0 = once
  std::uint64_t window = 0;               // stop this many cycles after the latest event, 0 = never

  friend bool operator==(const ChurnSchedule&, const ChurnSchedule&) = default;
};

struct SweepSpec {
  std::string key;
  std::vector<std::string> values;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// One runnable experiment. Serialised as flat `key = value` lines; see
/// README for the key list.
struct ExperimentConfig {
  std::size_t n = 2000;
  ProtocolParams params;
  PdPayoffs payoffs;
  SchedulerMode mode = SchedulerMode::SemiAsync;
  double full_async_compare_prob = 0.1;
  SamplerKind sampler = SamplerKind::Oracle;
  std::size_t sampler_cache_size = 20;
  std::uint64_t seed = 1;
  std::size_t replicates = 10;
  std::uint64_t max_cycles = 1000;
  double stop_coop_fraction = 0.98;
  bool stop_on_convergence = true;
  std::uint64_t metrics_interval = 1;
  MetricsDetail metrics_detail = MetricsDetail::Light;
  std::optional<ChurnSchedule> churn;
  InitialTopology initial_topology = InitialTopology::Random;
  Strategy initial_strategy = Strategy::Defect;
  MetricsOptions metrics;
  std::optional<SweepSpec> sweep;
  std::string output_path;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Itemised configuration failure.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> items);
  const std::vector<std::string>& items() const noexcept { return items_; }

 private:
  std::vector<std::string> items_;
};

/// Applies one `key = value` setting. Throws ConfigError on an unknown key or
/// malformed value. The shorthand key `d` sets all four payoffs.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Every constraint violation in the config; empty when valid.
std::vector<std::string> validate(const ExperimentConfig& config);

/// Non-fatal remarks (currently only protocol-rate advice).
std::vector<std::string> config_warnings(const ExperimentConfig& config);

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
void write_config(const ExperimentConfig& config, std::ostream& out);
std::string serialize_config(const ExperimentConfig& config);

/// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace slacer
