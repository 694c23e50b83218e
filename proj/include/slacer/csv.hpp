#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "slacer/experiment.hpp"
#include "slacer/simulation.hpp"

namespace slacer {

inline constexpr std::string_view kTraceHeader =
    "run_id,cycle,coop_fraction,ccp,ccpl,clustering,avg_path_length,gcc_size,gcc_fraction,"
    "max_degree_fraction,games_played,copies";

/// Trace rows in the fixed column order above; undefined values are empty.
void write_trace_csv(std::ostream& out, std::string_view run_id, const std::vector<TraceRow>& trace);

void write_aggregate_csv(std::ostream& out, const ExperimentSummary& summary);

}  // namespace slacer
