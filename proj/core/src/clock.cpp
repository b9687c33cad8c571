#include "pmsam/clock.hpp"

#include <bit>
#include <stdexcept>

namespace pmsam {

TickModel TickModel::defaults() {
    TickModel m;
    auto set = [&m](std::string_view stage, std::uint64_t c) {
        m.ticks_per_stage.emplace(std::string(stage), c);
    };
    set(stages::division, 1);
    set(stages::membrane_creation, 1);
    set(stages::distribution, 1);
    set(stages::climb_perturb, 2);  // evolve the random vector, then inject it
    set(stages::objective_breakdown, 2);
    set(stages::gradient, 1);
    set(stages::sign, 3);  // three-case rule set
    set(stages::update, 1);
    set(stages::check, 2);  // feasibility check plus comparison
    set(stages::time_elimination, 1);
    set(stages::migrate, 1);
    set(stages::watch_update, 1);
    set(stages::watch_objective, 2);
    set(stages::watch_check, 1);
    set(stages::somersault_division, 1);
    set(stages::somersault_summation, 1);
    set(stages::somersault_pivot, 1);
    set(stages::somersault_pivot_process, 1);
    set(stages::somersault_alfa, 1);
    set(stages::somersault_new_positions, 1);
    set(stages::somersault_check, 1);
    set(stages::solution_elimination, 1);
    set(stages::termination_check, 1);
    return m;
}

std::uint64_t TickModel::cost(std::string_view stage) const {
    auto it = ticks_per_stage.find(stage);
    if (it == ticks_per_stage.end())
        throw std::invalid_argument("tick model: unknown stage '" + std::string(stage) + "'");
    return it->second;
}

void TickModel::set_objective_breakdown(std::uint64_t c) {
    ticks_per_stage[std::string(stages::objective_breakdown)] = c;
    ticks_per_stage[std::string(stages::watch_objective)] = c;
}

void LogicalClock::tick(const TickModel& model, std::string_view stage, int parallel_width) {
    if (parallel_width < 1)
        throw std::invalid_argument("logical clock: parallel width must be >= 1");
    tick_n(model, stage, 1);
}

void LogicalClock::tick_n(const TickModel& model, std::string_view stage, std::uint64_t count) {
    std::uint64_t delta = model.cost(stage) * count;
    t += delta;
    ledger[std::string(stage)] += delta;
}

void LogicalClock::merge_from(const LogicalClock& other) {
    if (other.t > t) t = other.t;
    for (const auto& [stage, ticks] : other.ledger) {
        auto& mine = ledger[stage];
        if (ticks > mine) mine = ticks;
    }
}

LogicalClock merge(const LogicalClock& a, const LogicalClock& b) {
    LogicalClock out = a;
    out.merge_from(b);
    return out;
}

std::uint64_t climb_iteration_ticks(const TickModel& model) {
    return model.cost(stages::climb_perturb) + model.cost(stages::objective_breakdown) +
           model.cost(stages::gradient) + model.cost(stages::sign) +
           model.cost(stages::update) + model.cost(stages::check);
}

std::uint64_t climb_pass_ticks(const TickModel& model, int climb_number) {
    return climb_iteration_ticks(model) * static_cast<std::uint64_t>(climb_number) +
           model.cost(stages::time_elimination);
}

std::uint64_t watch_jump_round_ticks(const TickModel& model) {
    return model.cost(stages::watch_update) + model.cost(stages::watch_objective) +
           model.cost(stages::watch_check);
}

std::uint64_t somersault_phase_ticks(const TickModel& model) {
    return model.cost(stages::somersault_division) + model.cost(stages::somersault_summation) +
           model.cost(stages::somersault_pivot) + model.cost(stages::somersault_pivot_process) +
           model.cost(stages::somersault_alfa) + model.cost(stages::somersault_new_positions) +
           model.cost(stages::somersault_check);
}

int migration_rounds(int m) {
    if (m < 1) throw std::invalid_argument("migration_rounds: m must be >= 1");
    return std::bit_width(static_cast<unsigned>(m - 1));
}

std::uint64_t pmsam_climb_ticks(int m, int climb_number, const TickModel& model) {
    auto passes = static_cast<std::uint64_t>(1 + migration_rounds(m));
    return passes * climb_pass_ticks(model, climb_number);
}

std::uint64_t pmsam_ticks(int n, int m, int climb_number, const TickModel& model) {
    if (n < m || m < 1)
        throw std::invalid_argument("pmsam_ticks: need n >= m >= 1");
    auto rounds = static_cast<std::uint64_t>(migration_rounds(m));
    std::uint64_t ticks = model.cost(stages::division) + model.cost(stages::membrane_creation) +
                          model.cost(stages::distribution);
    ticks += pmsam_climb_ticks(m, climb_number, model);
    ticks += rounds * (model.cost(stages::migrate) + watch_jump_round_ticks(model));
    ticks += somersault_phase_ticks(model);
    ticks += model.cost(stages::solution_elimination);
    ticks += model.cost(stages::termination_check);
    return ticks;
}

std::uint64_t ma_climb_ticks(int n, int climb_number, const TickModel& model) {
    return 2 * static_cast<std::uint64_t>(n) * climb_iteration_ticks(model) *
           static_cast<std::uint64_t>(climb_number);
}

std::uint64_t ma_ticks(int n, int climb_number, const TickModel& model) {
    if (n < 1) throw std::invalid_argument("ma_ticks: n must be >= 1");
    std::uint64_t per_monkey =
        2 * climb_iteration_ticks(model) * static_cast<std::uint64_t>(climb_number) +
        watch_jump_round_ticks(model) + somersault_phase_ticks(model);
    return static_cast<std::uint64_t>(n) * per_monkey + model.cost(stages::termination_check);
}

} // namespace pmsam
