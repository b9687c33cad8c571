#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pmsam/clock.hpp"
#include "pmsam/monkey.hpp"
#include "pmsam/objective.hpp"
#include "pmsam/random.hpp"
#include "pmsam/report.hpp"

namespace pmsam {

/// Membrane polarization. Carried as metadata; no rule changes it.
enum class Charge { positive, negative, neutral };

/// A local search region: a labeled sub-population with its own random
/// substream and local clock. local_best is the best state observed in this
/// membrane since its creation (monotone for the membrane's lifetime).
struct Membrane {
    int label = 0;
    Charge charge = Charge::neutral;
    std::vector<MonkeyState> monkeys;
    MonkeyState local_best;
    RandomStream stream;
    LogicalClock clock;

    Membrane(int label_, RandomStream stream_) : label(label_), stream(std::move(stream_)) {}
};

/// Full configuration of a membrane-algorithm run.
struct PmsamConfig {
    MaParams ma;
    int membranes = 10;  ///< m, number of local membranes per cycle
    std::uint64_t t_max = 1'000'000'000'000'000ULL;  ///< logical tick budget
    std::optional<double> target_value;  ///< stop once the best reaches this
    double target_tolerance = 1e-9;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Coordinator state: the skin membrane.
struct GlobalRegion {
    MonkeyState global_best;
    int iteration = 0;  ///< completed outer cycles (N_curr)
    LogicalClock clock;
    PmsamConfig config;
    Sense sense = Sense::minimize;        ///< sense of the objective being run
    std::vector<MonkeyState> population;  ///< monkeys held between cycles
};

enum class StopReason { keep_running, stop_time, stop_iterations, stop_feasible };

std::string to_string(StopReason reason);

/// One line of the phase/tick log kept when tracing is enabled.
struct TraceEvent {
    std::string phase;
    std::uint64_t t = 0;
    int local_membranes = 0;
    std::string note;
};

using TraceLog = std::vector<TraceEvent>;

/// Builds the global region: evolves n feasible random monkeys, injects the
/// clock at t = 0 and seeds global_best from the initial population.
GlobalRegion initialize(const ObjectiveDescriptor& desc, const PmsamConfig& config);

/// floor(n / m), the monkeys initially assigned to each local membrane.
/// Throws std::invalid_argument unless n >= m >= 1.
int compute_threshold(int n, int m);

/// Threshold computation as an engine step: one division tick on the global
/// clock.
int compute_threshold(GlobalRegion& region, const TickModel& model);

/// Creates m empty membranes labeled 1..m, each with a substream derived
/// from (seed, iteration, label) and a copy of the global clock. One
/// membrane-creation tick.
std::vector<Membrane> create_membranes(GlobalRegion& region, const TickModel& model);

/// Moves the global population into the membranes in index order, threshold
/// monkeys per membrane with the remainder going to the highest label. One
/// distribution tick; local clocks sync to the global clock and local bests
/// are computed.
void distribute(GlobalRegion& region, std::vector<Membrane>& membranes,
                const TickModel& model);

/// Runs the climb pass on every membrane, any subset concurrently
/// (workers >= 1). Each membrane bills its own clock; the cost of the pass
/// is independent of population size and worker count.
void parallel_climb(std::vector<Membrane>& membranes, const ObjectiveDescriptor& desc,
                    const MaParams& params, const TickModel& model, int workers = 1);

/// Merges consecutive label pairs into the member with the better local
/// best (ties to the lower label); an unpaired trailing membrane passes
/// through. Returns the ceil(count/2) survivors; one migrate tick on the
/// global clock, local clocks re-synced. Throws std::invalid_argument with
/// fewer than two membranes.
std::vector<Membrane> migrate(std::vector<Membrane> membranes, GlobalRegion& region,
                              const TickModel& model);

/// One watch-jump over every monkey of the membrane; local best updated.
void watch_jump_round(Membrane& membrane, const ObjectiveDescriptor& desc,
                      const MaParams& params, const TickModel& model);

/// Somersault on the full population of the single surviving membrane.
/// Throws std::invalid_argument unless exactly one membrane remains.
void somersault_final(std::vector<Membrane>& membranes, const ObjectiveDescriptor& desc,
                      const MaParams& params, const TickModel& model);

/// Dissolves the membrane into the global region: monkeys and local best
/// move out, global_best keeps the better value, clocks merge (max), plus
/// one solution-elimination tick.
void eliminate_to_global(Membrane& membrane, GlobalRegion& region, const TickModel& model);

/// End-of-cycle decision: stop_time when t >= t_max, then stop_feasible
/// when a target is set and met, then stop_iterations when
/// iteration >= cyclic_number; otherwise keep running. One
/// termination-check tick is billed by the caller.
StopReason check_termination(const GlobalRegion& region);

/// Full membrane-algorithm run. Workers bound the number of threads used
/// for concurrent membrane phases; results are bitwise independent of the
/// worker count. When trace is non-null every phase appends an event.
RunReport run_pmsam(const ObjectiveDescriptor& desc, const PmsamConfig& config,
                    const TickModel& model, int workers = 1, TraceLog* trace = nullptr);

} // namespace pmsam
