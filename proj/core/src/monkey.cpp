#include "pmsam/monkey.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace pmsam {

void MaParams::validate() const {
    if (population < 1) throw std::invalid_argument("params: n must be >= 1");
    if (dimension < 1) throw std::invalid_argument("params: d must be >= 1");
    if (!(step_length > 0.0)) throw std::invalid_argument("params: step_length must be > 0");
    if (!(eyesight > 0.0)) throw std::invalid_argument("params: eyesight must be > 0");
    if (!(somersault_lo < somersault_hi))
        throw std::invalid_argument("params: somersault_lo must be < somersault_hi");
    if (climb_number < 0) throw std::invalid_argument("params: climb_number must be >= 0");
    if (cyclic_number < 1) throw std::invalid_argument("params: n_max must be >= 1");
    if (climb_epsilon < 0.0) throw std::invalid_argument("params: climb_epsilon must be >= 0");
    if (max_resample < 1) throw std::invalid_argument("params: max_resample must be >= 1");
}

Position generate_climb_perturbation(RandomStream& rng, int dimension, double step_length) {
    Position dp(static_cast<std::size_t>(dimension));
    for (auto& v : dp) v = rng.coin() ? step_length : -step_length;
    return dp;
}

Position pseudo_gradient(const ObjectiveDescriptor& desc, const Position& p,
                         const Position& dp, RandomStream* rng) {
    if (dp.size() != p.size())
        throw std::invalid_argument("pseudo_gradient: perturbation dimension mismatch");
    for (double v : dp)
        if (v == 0.0)
            throw std::invalid_argument("pseudo_gradient: zero perturbation component");
    Position plus(p), minus(p);
    for (std::size_t j = 0; j < p.size(); ++j) {
        plus[j] += dp[j];
        minus[j] -= dp[j];
    }
    double diff = evaluate(desc, plus, rng) - evaluate(desc, minus, rng);
    Position g(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) g[j] = diff / (2.0 * dp[j]);
    return g;
}

int sign(double x) {
    if (x > 0.0) return 1;
    if (x < 0.0) return -1;
    return 0;
}

MonkeyState climb_process(const ObjectiveDescriptor& desc, MonkeyState monkey,
                          const MaParams& params, RandomStream& rng) {
    MonkeyState best = monkey;
    MonkeyState walk = std::move(monkey);
    double flip = desc.sense == Sense::minimize ? -1.0 : 1.0;
    for (int iter = 0; iter < params.climb_number; ++iter) {
        Position dp = generate_climb_perturbation(rng, params.dimension, params.step_length);
        Position g = pseudo_gradient(desc, walk.position, dp, &rng);
        Position candidate(walk.position);
        for (std::size_t j = 0; j < candidate.size(); ++j)
            candidate[j] += params.step_length * sign(flip * g[j]);
        double change = 0.0;
        if (is_feasible(desc, candidate)) {
            double value = evaluate(desc, candidate, &rng);
            change = std::fabs(value - walk.value);
            walk.position = std::move(candidate);
            walk.value = value;
            if (better(desc, walk.value, best.value)) best = walk;
        }
        if (change < params.climb_epsilon) break;
    }
    return best;
}

MonkeyState watch_jump(const ObjectiveDescriptor& desc, MonkeyState monkey,
                       const MaParams& params, RandomStream& rng) {
    Position y(monkey.position.size());
    for (int attempt = 0; attempt < params.max_resample; ++attempt) {
        for (std::size_t j = 0; j < y.size(); ++j)
            y[j] = rng.uniform(monkey.position[j] - params.eyesight,
                               monkey.position[j] + params.eyesight);
        if (!is_feasible(desc, y)) continue;
        double value = evaluate(desc, y, &rng);
        if (score_of(desc, value) >= score_of(desc, monkey.value)) {
            monkey.position = y;
            monkey.value = value;
            return monkey;
        }
    }
    return monkey;
}

Position somersault_pivot(const std::vector<MonkeyState>& monkeys) {
    if (monkeys.empty())
        throw std::invalid_argument("somersault_pivot: empty population");
    Position pivot(monkeys.front().position.size(), 0.0);
    for (const auto& m : monkeys) {
        if (m.position.size() != pivot.size())
            throw std::invalid_argument("somersault_pivot: mixed dimensions");
        for (std::size_t j = 0; j < pivot.size(); ++j) pivot[j] += m.position[j];
    }
    for (auto& v : pivot) v /= static_cast<double>(monkeys.size());
    return pivot;
}

std::vector<MonkeyState> somersault(const ObjectiveDescriptor& desc,
                                    std::vector<MonkeyState> monkeys,
                                    const MaParams& params, RandomStream& rng) {
    Position pivot = somersault_pivot(monkeys);
    Position y(pivot.size());
    for (auto& monkey : monkeys) {
        for (int attempt = 0; attempt < params.max_resample; ++attempt) {
            double alpha = rng.uniform(params.somersault_lo, params.somersault_hi);
            for (std::size_t j = 0; j < y.size(); ++j)
                y[j] = monkey.position[j] + alpha * (pivot[j] - monkey.position[j]);
            if (is_feasible(desc, y)) {
                monkey.position = y;
                monkey.value = evaluate(desc, y, &rng);
                break;
            }
        }
    }
    return monkeys;
}

Position random_position(const ObjectiveDescriptor& desc, RandomStream& rng) {
    Position p(static_cast<std::size_t>(desc.dimension));
    for (auto& v : p) v = rng.uniform(desc.lower, desc.upper);
    return p;
}

namespace {

const MonkeyState* best_of(const ObjectiveDescriptor& desc,
                           const std::vector<MonkeyState>& monkeys) {
    const MonkeyState* best = &monkeys.front();
    for (const auto& m : monkeys)
        if (better(desc, m.value, best->value)) best = &m;
    return best;
}

} // namespace

RunReport run_ma(const ObjectiveDescriptor& desc, const MaParams& params,
                 std::uint64_t seed, const TickModel& model) {
    if (params.population < 1) throw std::invalid_argument("run_ma: n must be >= 1");
    if (desc.dimension != params.dimension)
        throw std::invalid_argument("run_ma: d=" + std::to_string(params.dimension) +
                                    " does not match objective '" + desc.id + "'");
    auto start = std::chrono::steady_clock::now();
    RandomStream rng(seed);
    LogicalClock clock;

    std::vector<MonkeyState> monkeys(static_cast<std::size_t>(params.population));
    for (auto& m : monkeys) {
        m.position = random_position(desc, rng);
        m.value = evaluate(desc, m.position, &rng);
    }
    MonkeyState best = *best_of(desc, monkeys);

    auto note_best = [&] {
        const MonkeyState* b = best_of(desc, monkeys);
        if (better(desc, b->value, best.value)) best = *b;
    };
    // The schedule is billed at the full climb_number: early stopping freezes
    // the walk, not the rule-firing plan.
    auto bill_climb_pass = [&] {
        clock.tick_n(model, stages::climb_perturb, static_cast<std::uint64_t>(params.climb_number));
        clock.tick_n(model, stages::objective_breakdown,
                     static_cast<std::uint64_t>(params.climb_number));
        clock.tick_n(model, stages::gradient, static_cast<std::uint64_t>(params.climb_number));
        clock.tick_n(model, stages::sign, static_cast<std::uint64_t>(params.climb_number));
        clock.tick_n(model, stages::update, static_cast<std::uint64_t>(params.climb_number));
        clock.tick_n(model, stages::check, static_cast<std::uint64_t>(params.climb_number));
    };

    RunReport report;
    report.function_id = desc.id;
    report.algorithm = "ma";
    report.seed = seed;

    for (int cycle = 1; cycle <= params.cyclic_number; ++cycle) {
        for (auto& m : monkeys) {
            m = climb_process(desc, std::move(m), params, rng);
            bill_climb_pass();
        }
        note_best();
        for (auto& m : monkeys) {
            m = watch_jump(desc, std::move(m), params, rng);
            clock.tick(model, stages::watch_update);
            clock.tick(model, stages::watch_objective);
            clock.tick(model, stages::watch_check);
        }
        note_best();
        for (auto& m : monkeys) {
            m = climb_process(desc, std::move(m), params, rng);
            bill_climb_pass();
        }
        note_best();
        monkeys = somersault(desc, std::move(monkeys), params, rng);
        for (int i = 0; i < params.population; ++i) {
            clock.tick(model, stages::somersault_division);
            clock.tick(model, stages::somersault_summation);
            clock.tick(model, stages::somersault_pivot);
            clock.tick(model, stages::somersault_pivot_process);
            clock.tick(model, stages::somersault_alfa);
            clock.tick(model, stages::somersault_new_positions);
            clock.tick(model, stages::somersault_check);
        }
        note_best();
        clock.tick(model, stages::termination_check);
        report.trace.push_back({cycle, best.value});
    }

    report.best_value = best.value;
    report.best_position = best.position;
    report.iterations_used = params.cyclic_number;
    report.ticks = clock.t;
    report.tick_ledger = clock.ledger;
    report.stop_reason = "iterations";
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace pmsam
