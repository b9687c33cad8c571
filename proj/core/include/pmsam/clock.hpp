#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace pmsam {

/// Stage labels used by the tick model and the clock ledger.
///
/// One label per rule-firing step of the engine. Climb and watch-jump bill
/// the objective evaluation separately ("objective-breakdown" vs
/// "watch-objective") so the ledger partitions cleanly by phase.
namespace stages {
inline constexpr std::string_view division = "division";
inline constexpr std::string_view membrane_creation = "membrane-creation";
inline constexpr std::string_view distribution = "distribution";
inline constexpr std::string_view climb_perturb = "climb-perturb";
inline constexpr std::string_view objective_breakdown = "objective-breakdown";
inline constexpr std::string_view gradient = "gradient";
inline constexpr std::string_view sign = "sign";
inline constexpr std::string_view update = "update";
inline constexpr std::string_view check = "check";
inline constexpr std::string_view time_elimination = "time-elimination";
inline constexpr std::string_view migrate = "migrate";
inline constexpr std::string_view watch_update = "watch-update";
inline constexpr std::string_view watch_objective = "watch-objective";
inline constexpr std::string_view watch_check = "watch-check";
inline constexpr std::string_view somersault_division = "somersault-division";
inline constexpr std::string_view somersault_summation = "somersault-summation";
inline constexpr std::string_view somersault_pivot = "somersault-pivot";
inline constexpr std::string_view somersault_pivot_process = "somersault-pivot-process";
inline constexpr std::string_view somersault_alfa = "somersault-alfa";
inline constexpr std::string_view somersault_new_positions = "somersault-new-positions";
inline constexpr std::string_view somersault_check = "somersault-check";
inline constexpr std::string_view solution_elimination = "solution-elimination";
inline constexpr std::string_view termination_check = "termination-check";
} // namespace stages

/// Per-stage tick costs of the logical rule-firing schedule.
///
/// The defaults are calibrated so that the first transitions of a run cost
/// 0 -> 1 -> 2 -> 3 ticks (threshold division, membrane creation,
/// distribution). The objective-breakdown cost defaults to 2 (the cost of
/// breaking a square into rule firings); it is configurable because richer
/// objectives decompose into more rules.
struct TickModel {
    std::map<std::string, std::uint64_t, std::less<>> ticks_per_stage;

    static TickModel defaults();

    /// Cost of one firing of the stage. Throws std::invalid_argument on an
    /// unknown stage label.
    std::uint64_t cost(std::string_view stage) const;

    /// Sets the objective decomposition cost for both climb and watch-jump.
    void set_objective_breakdown(std::uint64_t c);
};

/// Monotone tick counter with a per-stage ledger.
///
/// A tick records one maximally parallel rule firing: its cost is
/// independent of how many membranes or monkeys fire the rule, so the
/// parallel width never multiplies ticks. The invariant t == sum(ledger)
/// holds through tick and merge.
struct LogicalClock {
    std::uint64_t t = 0;
    std::map<std::string, std::uint64_t> ledger;

    /// Advances by the stage cost, regardless of parallel_width (>= 1).
    void tick(const TickModel& model, std::string_view stage, int parallel_width = 1);

    /// Bills `count` back-to-back firings of the stage in one call.
    void tick_n(const TickModel& model, std::string_view stage, std::uint64_t count);

    /// Reconciles with a clock that forked from a common barrier state:
    /// t becomes max(t, other.t) and the ledger the per-stage max.
    void merge_from(const LogicalClock& other);
};

/// Out-of-place merge of two barrier-forked clocks.
LogicalClock merge(const LogicalClock& a, const LogicalClock& b);

/// Tick cost of one climb iteration (perturb, objective breakdown, gradient,
/// sign, update, check).
std::uint64_t climb_iteration_ticks(const TickModel& model);

/// Tick cost of one membrane climb pass: climb_number iterations plus the
/// closing time-elimination firing. Width-independent by construction.
std::uint64_t climb_pass_ticks(const TickModel& model, int climb_number);

/// Tick cost of one watch-jump round over a membrane.
std::uint64_t watch_jump_round_ticks(const TickModel& model);

/// Tick cost of the somersault rule sequence.
std::uint64_t somersault_phase_ticks(const TickModel& model);

/// Number of pairwise migration rounds needed to reduce m membranes to one:
/// ceil(log2(m)), zero for m == 1.
int migration_rounds(int m);

/// Closed-form tick count of one outer cycle of the membrane algorithm.
/// The population size n does not enter the cost: every climb and
/// watch-jump stage fires maximally parallel. Migration contributes
/// ceil(log2(m)) rounds, each followed by a watch-jump round and a climb
/// pass on the survivors.
std::uint64_t pmsam_ticks(int n, int m, int climb_number, const TickModel& model);

/// Closed-form tick count of the climb phases of one cycle:
/// (1 + ceil(log2 m)) passes.
std::uint64_t pmsam_climb_ticks(int m, int climb_number, const TickModel& model);

/// Closed-form tick count of one cycle of the sequential baseline: every
/// stage runs once per monkey (climb, watch-jump, climb, somersault), plus
/// one termination check.
std::uint64_t ma_ticks(int n, int climb_number, const TickModel& model);

/// Climb-phase ticks of one baseline cycle (two passes, n monkeys each).
std::uint64_t ma_climb_ticks(int n, int climb_number, const TickModel& model);

} // namespace pmsam
