#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pmsam/objective.hpp"

namespace pmsam {

/// One point of the per-iteration convergence trace.
struct TracePoint {
    int iteration = 0;
    double best_value = 0.0;
};

/// Outcome of a single optimization run.
struct RunReport {
    std::string function_id;
    std::string algorithm;  ///< "ma" or "pmsam"
    std::uint64_t seed = 0;
    double best_value = 0.0;
    Position best_position;
    int iterations_used = 0;
    std::uint64_t ticks = 0;
    double wall_seconds = 0.0;  ///< measured; never serialized (reports are byte-deterministic)
    std::string stop_reason;
    std::vector<TracePoint> trace;  ///< best-so-far after each outer iteration
    std::map<std::string, std::uint64_t> tick_ledger;
};

} // namespace pmsam
