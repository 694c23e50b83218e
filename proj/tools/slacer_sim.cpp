// slacer-sim: run SLACER/SLAC overlay experiments, verify the metric oracles,
// list presets.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "slacer/config.hpp"
#include "slacer/experiment.hpp"
#include "slacer/verify.hpp"

namespace {

using namespace slacer;

void print_summary(const ExperimentSummary& summary) {
  for (const auto& point : summary.points) {
    const auto& a = point.aggregate;
    std::cout << (a.sweep_key.empty() ? std::string("run") : a.sweep_key + "=" + a.sweep_value) << ": "
              << a.converged << "/" << a.replicates << " converged";
    if (a.convergence_cycle.mean) std::cout << ", mean convergence cycle " << *a.convergence_cycle.mean;
    if (a.coop_fraction.mean) std::cout << ", coop " << *a.coop_fraction.mean;
    if (a.ccp.mean) std::cout << ", ccp " << *a.ccp.mean;
    if (a.gcc_fraction.mean) std::cout << ", gcc " << *a.gcc_fraction.mean;
    if (a.clustering.mean) std::cout << ", C " << *a.clustering.mean;
    if (a.avg_path_length.mean) std::cout << ", L " << *a.avg_path_length.mean;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLACER self-organising overlay simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment from a preset or config file");
  std::string preset_name, config_path, trace_path;
  std::size_t max_n = 8000, workers = 0;
  bool strict = false, charts = false, export_graphs = false;
  std::vector<std::string> sets;
  auto* source = run->add_option_group("source");
  source->add_option("--preset", preset_name, "Named preset (see `presets`)");
  source->add_option("--config", config_path, "Key-value config file");
  source->require_option(1);
  run->add_option("--max-n", max_n, "Population cap applied to presets")->capture_default_str();

  // Overrides, applied after the preset/config; they always win.
  std::map<std::string, std::string> overrides;
  const std::pair<const char*, const char*> flags[] = {
      {"--n", "n"},
      {"--w", "w"},
      {"--m", "m"},
      {"--mr", "mr"},
      {"--view-size", "view_size"},
      {"--mode", "mode"},
      {"--sampler", "sampler"},
      {"--seed", "seed"},
      {"--replicates", "replicates"},
      {"--max-cycles", "max_cycles"},
      {"--stop-coop", "stop_coop"},
      {"--metrics-interval", "metrics_interval"},
      {"--metrics-detail", "metrics_detail"},
      {"--churn-fraction", "churn_fraction"},
      {"--churn-at", "churn_at"},
      {"--churn-interval", "churn_interval"},
      {"--churn-window", "churn_window"},
      {"--initial-topology", "initial_topology"},
      {"--sweep", "sweep"},
      {"--out", "out"},
  };
  std::map<std::string, std::string> raw;
  for (const auto& [flag, key] : flags) run->add_option(flag, raw[key], std::string("Override '") + key + "'");
  run->add_option("--set", sets, "Arbitrary key=value override (repeatable)");
  run->add_flag("--strict", strict, "Exit nonzero if any replicate exhausts its cycle budget");
  run->add_flag("--charts", charts, "Write SVG line charts per replicate");
  run->add_flag("--export-graph", export_graphs, "Write final edge list and node states per replicate");
  run->add_option("--trace", trace_path, "Write every utility comparison to this CSV (single worker)");
  run->add_option("--workers", workers, "Parallel replicate workers (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "Run oracle-equivalence and invariant checks");
  std::uint64_t verify_seed = 2005;
  verify->add_option("--seed", verify_seed)->capture_default_str();

  auto* presets = app.add_subcommand("presets", "List experiment presets");
  auto* show = app.add_subcommand("show-config", "Print the resolved config of a preset");
  std::string show_name;
  show->add_option("preset", show_name)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) {
      for (auto name : preset_names()) std::cout << name << '\n';
      return 0;
    }
    if (show->parsed()) {
      write_config(preset(show_name, max_n), std::cout);
      return 0;
    }
    if (verify->parsed()) {
      bool ok = true;
      for (const auto& check : run_verification(verify_seed)) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
        ok = ok && check.passed;
      }
      return ok ? 0 : 1;
    }

    ExperimentConfig config = preset_name.empty() ? load_config(config_path) : preset(preset_name, max_n);
    for (const auto& [key, value] : raw)
      if (!value.empty()) apply_setting(config, key, value);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError({"--set expects key=value, got '" + kv + "'"});
      apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (config.output_path.empty()) config.output_path = "out";
    for (const auto& w : config_warnings(config)) std::cerr << "warning: " << w << '\n';

    RunOptions options;
    options.workers = workers;
    options.write_charts = charts;
    options.export_graphs = export_graphs;
    std::ofstream trace_out;
    AdaptTrace tracer;
    if (!trace_path.empty()) {
      trace_out.open(trace_path);
      if (!trace_out) throw ConfigError({"cannot open trace file '" + trace_path + "'"});
      trace_out << "cycle,node,partner,copied,strategy_mutated,links_mutated\n";
      tracer = [&](std::uint64_t cycle, NodeId node, const AdaptOutcome& o) {
        trace_out << cycle << ',' << node << ',' << o.partner << ',' << o.copied << ',' << o.strategy_mutated << ','
                  << o.links_mutated << '\n';
      };
      options.adapt_trace = &tracer;
    }

    const auto summary = run_experiment(config, options);
    print_summary(summary);
    std::cout << "results written to " << config.output_path << '\n';
    if (strict && !summary.all_converged()) {
      std::cerr << "strict: at least one replicate did not reach the cooperation threshold\n";
      return 3;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
