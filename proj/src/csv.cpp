#include "slacer/csv.hpp"

#include <ostream>

namespace slacer {
namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_stat(std::ostream& out, const MeanVariance& mv) {
  out << ',' << cell(mv.mean) << ',' << cell(mv.variance);
}

}  // namespace

void write_trace_csv(std::ostream& out, std::string_view run_id, const std::vector<TraceRow>& trace) {
  out << kTraceHeader << '\n';
  for (const auto& row : trace) {
    const auto& m = row.metrics;
    out << run_id << ',' << m.cycle << ',' << format_double(m.coop_fraction) << ',' << cell(m.ccp) << ','
        << cell(m.ccpl) << ',' << format_double(m.clustering) << ',' << cell(m.avg_path_length) << ','
        << m.gcc_size << ',' << format_double(m.gcc_fraction) << ',' << format_double(m.max_degree_fraction)
        << ',' << row.activity.games_played << ',' << row.activity.copies << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const ExperimentSummary& summary) {
  out << "sweep_key,sweep_value,replicates,converged,convergence_cycle_mean,convergence_cycle_var,"
         "final_cycle_mean,final_cycle_var,coop_fraction_mean,coop_fraction_var,ccp_mean,ccp_var,"
         "ccpl_mean,ccpl_var,clustering_mean,clustering_var,avg_path_length_mean,avg_path_length_var,"
         "gcc_size_mean,gcc_size_var,gcc_fraction_mean,gcc_fraction_var,max_degree_fraction_mean,"
         "max_degree_fraction_var,zero_degree_fraction_mean,zero_degree_fraction_var\n";
  for (const auto& point : summary.points) {
    const auto& a = point.aggregate;
    out << a.sweep_key << ',' << a.sweep_value << ',' << a.replicates << ',' << a.converged;
    for (const auto* mv : {&a.convergence_cycle, &a.final_cycle, &a.coop_fraction, &a.ccp, &a.ccpl,
                           &a.clustering, &a.avg_path_length, &a.gcc_size, &a.gcc_fraction,
                           &a.max_degree_fraction, &a.zero_degree_fraction})
      write_stat(out, *mv);
    out << '\n';
  }
}

}  // namespace slacer
