#pragma once

#include <cstdint>
#include <vector>

#include "pmsam/clock.hpp"
#include "pmsam/objective.hpp"
#include "pmsam/random.hpp"
#include "pmsam/report.hpp"

namespace pmsam {

/// One monkey: a feasible position plus the objective value cached when the
/// position was last set. For stochastic objectives the cache holds the
/// noisy value observed at that move.
struct MonkeyState {
    Position position;
    double value = 0.0;
};

/// Monkey-algorithm parameters. Defaults follow the standard desk-scale
/// setup: n=60, d=30, step 1e-4, eyesight 1, somersault interval [-1, 1],
/// 50 climb iterations, 20 outer cycles.
struct MaParams {
    int population = 60;       ///< n
    int dimension = 30;        ///< d
    double step_length = 1e-4; ///< climb step a
    double eyesight = 1.0;     ///< watch-jump radius b
    double somersault_lo = -1.0;
    double somersault_hi = 1.0;
    int climb_number = 50;     ///< climb iterations per pass (P_c)
    int cyclic_number = 20;    ///< outer cycles (N_max)
    double climb_epsilon = 1e-9;  ///< early stop when the value moves less than this
    int max_resample = 100;       ///< retry bound for watch-jump and somersault draws

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Random climb perturbation: each coordinate is +a or -a with probability
/// one half.
Position generate_climb_perturbation(RandomStream& rng, int dimension, double step_length);

/// Simultaneous-perturbation pseudo-gradient of the raw objective:
/// component j is (f(p + dp) - f(p - dp)) / (2 dp[j]).
/// Throws std::invalid_argument when any dp[j] is zero.
Position pseudo_gradient(const ObjectiveDescriptor& desc, const Position& p,
                         const Position& dp, RandomStream* rng = nullptr);

/// Three-valued sign: +1, 0, or -1.
int sign(double x);

/// Climb: up to climb_number pseudo-gradient sign steps of length
/// step_length, taken on the internal score (ascent). A step lands only if
/// feasible; the walk stops early when the value changes by less than
/// climb_epsilon. Returns the best state visited, never worse than the
/// input.
MonkeyState climb_process(const ObjectiveDescriptor& desc, MonkeyState monkey,
                          const MaParams& params, RandomStream& rng);

/// Watch-jump: samples y uniformly within eyesight of the current position
/// and takes the first feasible draw at least as good as the cached value;
/// gives up after max_resample draws and returns the input unchanged.
MonkeyState watch_jump(const ObjectiveDescriptor& desc, MonkeyState monkey,
                       const MaParams& params, RandomStream& rng);

/// Coordinate-wise mean of the population. Throws std::invalid_argument on
/// an empty population.
Position somersault_pivot(const std::vector<MonkeyState>& monkeys);

/// Somersault: every monkey leaps to y = p + alpha (pivot - p) with its own
/// alpha drawn from the somersault interval, redrawing alpha up to
/// max_resample times while y is infeasible and keeping p on exhaustion.
/// Values are re-cached on every move.
std::vector<MonkeyState> somersault(const ObjectiveDescriptor& desc,
                                    std::vector<MonkeyState> monkeys,
                                    const MaParams& params, RandomStream& rng);

/// Sequential monkey-algorithm baseline: cyclic_number cycles of
/// {climb, watch-jump, climb, somersault} applied monkey by monkey in index
/// order, with logical ticks billed per monkey per pipeline stage.
RunReport run_ma(const ObjectiveDescriptor& desc, const MaParams& params,
                 std::uint64_t seed, const TickModel& model);

/// Uniform feasible position, one coordinate at a time.
Position random_position(const ObjectiveDescriptor& desc, RandomStream& rng);

} // namespace pmsam
