#include "slacer/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace slacer {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError({"key '" + std::string(key) + "': invalid value '" + std::string(value) + "' (expected " +
                     std::string(expected) + ")"});
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "a number");
  return out;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "a non-negative integer");
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true|false");
}

ChurnSchedule& churn_of(ExperimentConfig& c) {
  if (!c.churn) c.churn.emplace();
  return *c.churn;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  while (true) {
    const auto pos = s.find(sep);
    parts.emplace_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return parts;
}

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> items)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& item : items) msg += "\n  - " + item;
        return msg;
      }()),
      items_(std::move(items)) {}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "n") c.n = to_unsigned(key, value);
  else if (key == "w") c.params.w = to_double(key, value);
  else if (key == "m") c.params.m = to_double(key, value);
  else if (key == "mr") c.params.mr = to_double(key, value);
  else if (key == "view_size") c.params.max_view_size = to_unsigned(key, value);
  else if (key == "t") c.payoffs.t = to_double(key, value);
  else if (key == "r") c.payoffs.r = to_double(key, value);
  else if (key == "p") c.payoffs.p = to_double(key, value);
  else if (key == "s") c.payoffs.s = to_double(key, value);
  else if (key == "d") c.payoffs = PdPayoffs::from_d(to_double(key, value));
  else if (key == "mode") {
    if (value == "semi") c.mode = SchedulerMode::SemiAsync;
    else if (value == "full") c.mode = SchedulerMode::FullAsync;
    else bad_value(key, value, "semi|full");
  } else if (key == "full_async_compare_prob") c.full_async_compare_prob = to_double(key, value);
  else if (key == "sampler") {
    if (value == "oracle") c.sampler = SamplerKind::Oracle;
    else if (value == "gossip") c.sampler = SamplerKind::Gossip;
    else bad_value(key, value, "oracle|gossip");
  } else if (key == "sampler_cache_size") c.sampler_cache_size = to_unsigned(key, value);
  else if (key == "seed") c.seed = to_unsigned(key, value);
  else if (key == "replicates") c.replicates = to_unsigned(key, value);
  else if (key == "max_cycles") c.max_cycles = to_unsigned(key, value);
  else if (key == "stop_coop") c.stop_coop_fraction = to_double(key, value);
  else if (key == "stop_on_convergence") c.stop_on_convergence = to_bool(key, value);
  else if (key == "metrics_interval") c.metrics_interval = to_unsigned(key, value);
  else if (key == "metrics_detail") {
    if (value == "full") c.metrics_detail = MetricsDetail::Full;
    else if (value == "light") c.metrics_detail = MetricsDetail::Light;
    else bad_value(key, value, "full|light");
  } else if (key == "churn_fraction") churn_of(c).fraction = to_double(key, value);
  else if (key == "churn_at") {
    if (value == "converged") churn_of(c).at_cycle.reset();
    else churn_of(c).at_cycle = to_unsigned(key, value);
  } else if (key == "churn_interval") churn_of(c).interval = to_unsigned(key, value);
  else if (key == "churn_window") churn_of(c).window = to_unsigned(key, value);
  else if (key == "initial_topology") {
    if (value == "random") c.initial_topology = InitialTopology::Random;
    else if (value == "empty") c.initial_topology = InitialTopology::Empty;
    else bad_value(key, value, "random|empty");
  } else if (key == "initial_strategy") {
    if (value == "defect" || value == "D") c.initial_strategy = Strategy::Defect;
    else if (value == "cooperate" || value == "C") c.initial_strategy = Strategy::Cooperate;
    else bad_value(key, value, "defect|cooperate");
  } else if (key == "exact_ccp_limit") c.metrics.exact_ccp_limit = to_unsigned(key, value);
  else if (key == "ccp_pair_samples") c.metrics.ccp_pair_samples = to_unsigned(key, value);
  else if (key == "ccpl_source_samples") c.metrics.ccpl_source_samples = to_unsigned(key, value);
  else if (key == "exact_path_limit") c.metrics.exact_path_limit = to_unsigned(key, value);
  else if (key == "path_source_samples") c.metrics.path_source_samples = to_unsigned(key, value);
  else if (key == "sweep") {
    const auto colon = value.find(':');
    if (colon == std::string_view::npos) bad_value(key, value, "key:v1,v2,...");
    SweepSpec sweep{std::string(trim(value.substr(0, colon))), split(value.substr(colon + 1), ',')};
    if (sweep.key == "sweep" || sweep.key == "out") bad_value(key, value, "a sweepable key");
    // Reject bad sweep values up front.
    for (const auto& v : sweep.values) {
      ExperimentConfig probe = c;
      apply_setting(probe, sweep.key, v);
    }
    c.sweep = std::move(sweep);
  } else if (key == "out") c.output_path = std::string(value);
  else throw ConfigError({"unknown key '" + std::string(key) + "'"});
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  if (c.n < 2) errors.emplace_back("n must be at least 2");
  if (c.replicates < 1) errors.emplace_back("replicates must be at least 1");
  for (auto& e : c.params.validate()) errors.push_back(std::move(e));
  for (auto& e : c.payoffs.validate()) errors.push_back(std::move(e));
  if (!is_probability(c.full_async_compare_prob)) errors.emplace_back("full_async_compare_prob must be in [0, 1]");
  if (!is_probability(c.stop_coop_fraction)) errors.emplace_back("stop_coop must be in [0, 1]");
  if (c.metrics_interval < 1) errors.emplace_back("metrics_interval must be at least 1");
  if (c.sampler_cache_size < 1) errors.emplace_back("sampler_cache_size must be at least 1");
  if (c.churn && !is_probability(c.churn->fraction)) errors.emplace_back("churn_fraction must be in [0, 1]");
  if (c.sweep && c.sweep->values.empty()) errors.emplace_back("sweep needs at least one value");
  return errors;
}

std::vector<std::string> config_warnings(const ExperimentConfig& c) { return c.params.warnings(); }

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::vector<std::string> errors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    try {
      apply_setting(config, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      for (const auto& item : e.items()) errors.push_back("line " + std::to_string(line_no) + ": " + item);
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  return parse_config(in);
}

void write_config(const ExperimentConfig& c, std::ostream& out) {
  out << "n = " << c.n << '\n'
      << "w = " << format_double(c.params.w) << '\n'
      << "m = " << format_double(c.params.m) << '\n'
      << "mr = " << format_double(c.params.mr) << '\n'
      << "view_size = " << c.params.max_view_size << '\n'
      << "t = " << format_double(c.payoffs.t) << '\n'
      << "r = " << format_double(c.payoffs.r) << '\n'
      << "p = " << format_double(c.payoffs.p) << '\n'
      << "s = " << format_double(c.payoffs.s) << '\n'
      << "mode = " << to_string(c.mode) << '\n'
      << "full_async_compare_prob = " << format_double(c.full_async_compare_prob) << '\n'
      << "sampler = " << to_string(c.sampler) << '\n'
      << "sampler_cache_size = " << c.sampler_cache_size << '\n'
      << "seed = " << c.seed << '\n'
      << "replicates = " << c.replicates << '\n'
      << "max_cycles = " << c.max_cycles << '\n'
      << "stop_coop = " << format_double(c.stop_coop_fraction) << '\n'
      << "stop_on_convergence = " << (c.stop_on_convergence ? "true" : "false") << '\n'
      << "metrics_interval = " << c.metrics_interval << '\n'
      << "metrics_detail = " << (c.metrics_detail == MetricsDetail::Full ? "full" : "light") << '\n'
      << "initial_topology = " << (c.initial_topology == InitialTopology::Random ? "random" : "empty") << '\n'
      << "initial_strategy = " << (c.initial_strategy == Strategy::Defect ? "defect" : "cooperate") << '\n'
      << "exact_ccp_limit = " << c.metrics.exact_ccp_limit << '\n'
      << "ccp_pair_samples = " << c.metrics.ccp_pair_samples << '\n'
      << "ccpl_source_samples = " << c.metrics.ccpl_source_samples << '\n'
      << "exact_path_limit = " << c.metrics.exact_path_limit << '\n'
      << "path_source_samples = " << c.metrics.path_source_samples << '\n';
  if (c.churn) {
    out << "churn_fraction = " << format_double(c.churn->fraction) << '\n'
        << "churn_at = " << (c.churn->at_cycle ? std::to_string(*c.churn->at_cycle) : "converged") << '\n'
        << "churn_interval = " << c.churn->interval << '\n'
        << "churn_window = " << c.churn->window << '\n';
  }
  if (c.sweep) {
    out << "sweep = " << c.sweep->key << ':';
    for (std::size_t k = 0; k < c.sweep->values.size(); ++k) out << (k ? "," : "") << c.sweep->values[k];
    out << '\n';
  }
  if (!c.output_path.empty()) out << "out = " << c.output_path << '\n';
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  write_config(config, out);
  return out.str();
}

}  // namespace slacer
