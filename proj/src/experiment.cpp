#include "slacer/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include "slacer/csv.hpp"
#include "slacer/svg_chart.hpp"

namespace slacer {
namespace fs = std::filesystem;
namespace {

std::string run_id_for(const SweepPoint& point, const ExperimentConfig& base, std::size_t replicate) {
  std::string id;
  if (point.value) id = base.sweep->key + *point.value + "-";
  return id + "rep" + std::to_string(replicate);
}

void ensure_writable(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto probe = fs::path(dir) / ".write-probe";
  std::ofstream out(probe);
  if (ec || !out) throw ConfigError({"output path '" + dir + "' is not writable"});
  out.close();
  fs::remove(probe, ec);
}

void write_charts(const fs::path& dir, const std::string& run_id, const std::vector<TraceRow>& trace) {
  std::vector<double> xs;
  for (const auto& row : trace) xs.push_back(static_cast<double>(row.metrics.cycle));
  auto emit = [&](const std::string& metric, auto getter) {
    std::vector<std::optional<double>> ys;
    for (const auto& row : trace) ys.push_back(getter(row.metrics));
    std::ofstream out(dir / (run_id + "_" + metric + ".svg"));
    write_svg_line_chart(out, run_id + " " + metric, xs, ys);
  };
  emit("coop_fraction", [](const MetricsSnapshot& m) -> std::optional<double> { return m.coop_fraction; });
  emit("ccp", [](const MetricsSnapshot& m) { return m.ccp; });
  emit("ccpl", [](const MetricsSnapshot& m) { return m.ccpl; });
  emit("clustering", [](const MetricsSnapshot& m) -> std::optional<double> { return m.clustering; });
  emit("avg_path_length", [](const MetricsSnapshot& m) { return m.avg_path_length; });
  emit("gcc_fraction", [](const MetricsSnapshot& m) -> std::optional<double> { return m.gcc_fraction; });
}

template <typename Getter>
MeanVariance stat_of(const std::vector<RunResult>& runs, Getter getter) {
  std::vector<double> values;
  for (const auto& run : runs)
    if (const std::optional<double> v = getter(run); v) values.push_back(*v);
  return mean_variance(values);
}

}  // namespace

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config) {
  if (!config.sweep) return {SweepPoint{std::nullopt, config}};
  std::vector<SweepPoint> points;
  for (const auto& value : config.sweep->values) {
    ExperimentConfig c = config;
    c.sweep.reset();
    apply_setting(c, config.sweep->key, value);
    points.push_back({value, std::move(c)});
  }
  return points;
}

MeanVariance mean_variance(const std::vector<double>& values) {
  MeanVariance mv;
  mv.count = values.size();
  if (values.empty()) return mv;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  mv.mean = mean;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    mv.variance = ss / static_cast<double>(values.size() - 1);
  }
  return mv;
}

AggregateRow aggregate(const SweepPoint& point, const std::vector<RunResult>& runs) {
  AggregateRow row;
  row.sweep_value = point.value.value_or("");
  row.replicates = runs.size();
  row.converged = static_cast<std::size_t>(
      std::count_if(runs.begin(), runs.end(), [](const RunResult& r) { return r.convergence_cycle.has_value(); }));
  using Opt = std::optional<double>;
  row.convergence_cycle = stat_of(runs, [](const RunResult& r) -> Opt {
    if (!r.convergence_cycle) return std::nullopt;
    return static_cast<double>(*r.convergence_cycle);
  });
  row.final_cycle = stat_of(runs, [](const RunResult& r) -> Opt { return static_cast<double>(r.final_cycle); });
  row.coop_fraction = stat_of(runs, [](const RunResult& r) -> Opt { return r.final_metrics.coop_fraction; });
  row.ccp = stat_of(runs, [](const RunResult& r) { return r.final_metrics.ccp; });
  row.ccpl = stat_of(runs, [](const RunResult& r) { return r.final_metrics.ccpl; });
  row.clustering = stat_of(runs, [](const RunResult& r) -> Opt { return r.final_metrics.clustering; });
  row.avg_path_length = stat_of(runs, [](const RunResult& r) { return r.final_metrics.avg_path_length; });
  row.gcc_size = stat_of(runs, [](const RunResult& r) -> Opt { return static_cast<double>(r.final_metrics.gcc_size); });
  row.gcc_fraction = stat_of(runs, [](const RunResult& r) -> Opt { return r.final_metrics.gcc_fraction; });
  row.max_degree_fraction = stat_of(runs, [](const RunResult& r) -> Opt { return r.final_metrics.max_degree_fraction; });
  row.zero_degree_fraction =
      stat_of(runs, [](const RunResult& r) -> Opt { return r.final_metrics.zero_degree_fraction; });
  return row;
}

bool ExperimentSummary::all_converged() const {
  return std::all_of(points.begin(), points.end(),
                     [](const PointResult& p) { return p.aggregate.converged == p.aggregate.replicates; });
}

ExperimentSummary run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (auto errors = validate(config); !errors.empty()) throw ConfigError(std::move(errors));
  const auto points = expand_sweep(config);
  for (const auto& p : points)
    if (auto errors = validate(p.config); !errors.empty()) throw ConfigError(std::move(errors));
  const bool write = options.write_files && !config.output_path.empty();
  if (write) ensure_writable(config.output_path);

  struct Job {
    std::size_t point;
    std::size_t replicate;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t r = 0; r < config.replicates; ++r) jobs.push_back({p, r});

  std::vector<RunResult> results(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const auto& job = jobs[k];
        results[k] = run_until(points[job.point].config, config.seed + job.replicate, options.adapt_trace);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  std::size_t workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  if (options.adapt_trace != nullptr) workers = 1;
  workers = std::min(workers, jobs.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  ExperimentSummary summary;
  for (std::size_t p = 0; p < points.size(); ++p) {
    PointResult pr;
    pr.point = points[p];
    for (std::size_t r = 0; r < config.replicates; ++r) {
      pr.runs.push_back(std::move(results[p * config.replicates + r]));
      pr.run_ids.push_back(run_id_for(points[p], config, r));
    }
    pr.aggregate = aggregate(pr.point, pr.runs);
    if (config.sweep) pr.aggregate.sweep_key = config.sweep->key;
    summary.points.push_back(std::move(pr));
  }

  if (write) {
    const fs::path dir = config.output_path;
    for (const auto& pr : summary.points) {
      for (std::size_t r = 0; r < pr.runs.size(); ++r) {
        const auto& id = pr.run_ids[r];
        std::ofstream trace(dir / ("trace_" + id + ".csv"));
        write_trace_csv(trace, id, pr.runs[r].trace);
        if (options.write_charts) write_charts(dir, id, pr.runs[r].trace);
        if (options.export_graphs) {
          const auto& g = pr.runs[r].final_graph;
          std::ofstream edges(dir / ("edges_" + id + ".txt"));
          std::ofstream states(dir / ("states_" + id + ".txt"));
          for (NodeId i = 0; i < g.size(); ++i) {
            states << i << ' ' << strategy_code(g.strategy(i)) << '\n';
            for (NodeId k : g.neighbors(i))
              if (k > i) edges << i << ' ' << k << '\n';
          }
        }
      }
    }
    std::ofstream agg(dir / "aggregate.csv");
    write_aggregate_csv(agg, summary);
    std::ofstream used(dir / "config.txt");
    write_config(config, used);
  }
  return summary;
}

std::vector<std::string_view> preset_names() {
  return {"fig3-convergence", "fig4-slac-partition", "fig5-slacer-gcc", "fig6-smallworld",
          "fig7-typical-run", "churn-recovery",      "w-sweep"};
}

ExperimentConfig preset(std::string_view name, std::size_t max_n) {
  ExperimentConfig c;
  c.n = std::min<std::size_t>(2000, max_n);
  c.replicates = 10;
  c.max_cycles = 2000;
  c.output_path = "out/" + std::string(name);

  auto size_sweep = [&] {
    SweepSpec sweep{"n", {}};
    for (std::size_t n : {2000u, 4000u, 8000u})
      if (n <= max_n) sweep.values.push_back(std::to_string(n));
    if (sweep.values.empty()) sweep.values.push_back(std::to_string(c.n));
    return sweep;
  };

  if (name == "fig3-convergence") {
    c.sweep = SweepSpec{"w", {"0.9", "1"}};
  } else if (name == "fig4-slac-partition") {
    c.params.w = 1.0;
    c.sweep = size_sweep();
  } else if (name == "fig5-slacer-gcc" || name == "fig6-smallworld") {
    c.sweep = size_sweep();
  } else if (name == "fig7-typical-run") {
    c.metrics_detail = MetricsDetail::Full;
  } else if (name == "churn-recovery") {
    c.metrics_detail = MetricsDetail::Full;
    c.churn = ChurnSchedule{0.5, std::nullopt, 0, 50};
  } else if (name == "w-sweep") {
    c.stop_on_convergence = false;
    c.sweep = SweepSpec{"w", {"0.5", "0.7", "0.9", "1"}};
  } else {
    std::vector<std::string> items{"unknown preset '" + std::string(name) + "'; valid presets:"};
    for (auto p : preset_names()) items.emplace_back(p);
    throw ConfigError(std::move(items));
  }
  return c;
}

}  // namespace slacer
