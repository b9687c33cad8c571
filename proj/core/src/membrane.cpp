#include "pmsam/membrane.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace pmsam {

void PmsamConfig::validate() const {
    ma.validate();
    if (membranes < 1) throw std::invalid_argument("config: m must be >= 1");
    if (membranes > ma.population)
        throw std::invalid_argument("config: m must be <= n (at least one monkey per membrane)");
    if (t_max < 1) throw std::invalid_argument("config: t_max must be >= 1");
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::keep_running: return "continue";
        case StopReason::stop_time: return "time";
        case StopReason::stop_iterations: return "iterations";
        case StopReason::stop_feasible: return "feasible";
    }
    return "unknown";
}

namespace {

double sense_score(Sense sense, double v) { return sense == Sense::minimize ? -v : v; }

bool wins(Sense sense, double a, double b) { return sense_score(sense, a) > sense_score(sense, b); }

void check_dimensions(const ObjectiveDescriptor& desc, const MaParams& params) {
    if (desc.dimension != params.dimension)
        throw std::invalid_argument("config: d=" + std::to_string(params.dimension) +
                                    " does not match objective '" + desc.id + "' (d=" +
                                    std::to_string(desc.dimension) + ")");
}

void update_local_best(Membrane& membrane, const ObjectiveDescriptor& desc) {
    for (const auto& m : membrane.monkeys)
        if (better(desc, m.value, membrane.local_best.value)) membrane.local_best = m;
}

/// Runs fn over each membrane with up to `workers` threads. Membranes are
/// disjoint units of work, so the partition cannot affect results.
template <typename Fn>
void for_each_membrane(std::vector<Membrane>& membranes, int workers, Fn fn) {
    if (workers <= 1 || membranes.size() <= 1) {
        for (auto& m : membranes) fn(m);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < membranes.size(); i = next.fetch_add(1))
            fn(membranes[i]);
    };
    auto count = std::min<std::size_t>(static_cast<std::size_t>(workers), membranes.size());
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

void barrier_sync(GlobalRegion& region, std::vector<Membrane>& membranes) {
    for (const auto& m : membranes) region.clock.merge_from(m.clock);
    for (auto& m : membranes) m.clock = region.clock;
}

} // namespace

GlobalRegion initialize(const ObjectiveDescriptor& desc, const PmsamConfig& config) {
    config.validate();
    check_dimensions(desc, config.ma);
    GlobalRegion region;
    region.config = config;
    region.sense = desc.sense;
    RandomStream root = RandomStream::substream(config.seed, 0, 0);
    region.population.resize(static_cast<std::size_t>(config.ma.population));
    for (auto& m : region.population) {
        m.position = random_position(desc, root);
        m.value = evaluate(desc, m.position, &root);
    }
    region.global_best = region.population.front();
    for (const auto& m : region.population)
        if (wins(region.sense, m.value, region.global_best.value)) region.global_best = m;
    return region;
}

int compute_threshold(int n, int m) {
    if (m < 1) throw std::invalid_argument("threshold: m must be >= 1");
    if (m > n) throw std::invalid_argument("threshold: m must be <= n");
    return n / m;
}

int compute_threshold(GlobalRegion& region, const TickModel& model) {
    int th = compute_threshold(region.config.ma.population, region.config.membranes);
    region.clock.tick(model, stages::division);
    return th;
}

std::vector<Membrane> create_membranes(GlobalRegion& region, const TickModel& model) {
    region.clock.tick(model, stages::membrane_creation);
    std::vector<Membrane> membranes;
    membranes.reserve(static_cast<std::size_t>(region.config.membranes));
    for (int label = 1; label <= region.config.membranes; ++label) {
        Membrane m(label,
                   RandomStream::substream(region.config.seed,
                                           static_cast<std::uint64_t>(region.iteration),
                                           static_cast<std::uint64_t>(label)));
        m.clock = region.clock;
        membranes.push_back(std::move(m));
    }
    return membranes;
}

void distribute(GlobalRegion& region, std::vector<Membrane>& membranes, const TickModel& model) {
    for (const auto& m : membranes)
        if (!m.monkeys.empty())
            throw std::invalid_argument("distribute: membranes must start empty");
    if (membranes.empty()) throw std::invalid_argument("distribute: no membranes");
    int n = static_cast<int>(region.population.size());
    int m_count = static_cast<int>(membranes.size());
    int th = compute_threshold(n, m_count);
    region.clock.tick(model, stages::distribution);
    std::size_t pos = 0;
    for (int i = 0; i < m_count; ++i) {
        // The highest label absorbs the remainder when m does not divide n.
        auto take = static_cast<std::size_t>(th);
        if (i == m_count - 1) take = region.population.size() - pos;
        auto first = region.population.begin() + static_cast<std::ptrdiff_t>(pos);
        auto last = first + static_cast<std::ptrdiff_t>(take);
        membranes[static_cast<std::size_t>(i)].monkeys.assign(std::make_move_iterator(first),
                                                              std::make_move_iterator(last));
        pos += take;
    }
    region.population.clear();
    for (auto& m : membranes) {
        m.clock = region.clock;
        m.local_best = m.monkeys.front();
        for (const auto& monkey : m.monkeys)
            if (wins(region.sense, monkey.value, m.local_best.value)) m.local_best = monkey;
    }
}

void parallel_climb(std::vector<Membrane>& membranes, const ObjectiveDescriptor& desc,
                    const MaParams& params, const TickModel& model, int workers) {
    for (const auto& m : membranes)
        if (m.monkeys.empty())
            throw std::invalid_argument("parallel_climb: membrane " + std::to_string(m.label) +
                                        " is empty");
    auto pc = static_cast<std::uint64_t>(params.climb_number);
    for_each_membrane(membranes, workers, [&](Membrane& membrane) {
        for (auto& monkey : membrane.monkeys)
            monkey = climb_process(desc, std::move(monkey), params, membrane.stream);
        update_local_best(membrane, desc);
        // One membrane-wide schedule: every monkey fires each rule in parallel.
        membrane.clock.tick_n(model, stages::climb_perturb, pc);
        membrane.clock.tick_n(model, stages::objective_breakdown, pc);
        membrane.clock.tick_n(model, stages::gradient, pc);
        membrane.clock.tick_n(model, stages::sign, pc);
        membrane.clock.tick_n(model, stages::update, pc);
        membrane.clock.tick_n(model, stages::check, pc);
        membrane.clock.tick(model, stages::time_elimination);
    });
}

std::vector<Membrane> migrate(std::vector<Membrane> membranes, GlobalRegion& region,
                              const TickModel& model) {
    if (membranes.size() < 2)
        throw std::invalid_argument("migrate: need at least two membranes");
    for (const auto& m : membranes) region.clock.merge_from(m.clock);
    region.clock.tick(model, stages::migrate);

    std::vector<Membrane> survivors;
    survivors.reserve((membranes.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < membranes.size(); i += 2) {
        Membrane& a = membranes[i];
        Membrane& b = membranes[i + 1];
        // The better local best absorbs the pair; ties go to the lower label.
        bool b_wins = wins(region.sense, b.local_best.value, a.local_best.value);
        Membrane& winner = b_wins ? b : a;
        Membrane& loser = b_wins ? a : b;
        winner.monkeys.insert(winner.monkeys.end(),
                              std::make_move_iterator(loser.monkeys.begin()),
                              std::make_move_iterator(loser.monkeys.end()));
        if (wins(region.sense, loser.local_best.value, winner.local_best.value))
            winner.local_best = loser.local_best;
        survivors.push_back(std::move(winner));
    }
    if (membranes.size() % 2 == 1) survivors.push_back(std::move(membranes.back()));
    for (auto& m : survivors) m.clock = region.clock;
    return survivors;
}

void watch_jump_round(Membrane& membrane, const ObjectiveDescriptor& desc,
                      const MaParams& params, const TickModel& model) {
    if (membrane.monkeys.empty())
        throw std::invalid_argument("watch_jump_round: membrane is empty");
    for (auto& monkey : membrane.monkeys)
        monkey = watch_jump(desc, std::move(monkey), params, membrane.stream);
    update_local_best(membrane, desc);
    membrane.clock.tick(model, stages::watch_update);
    membrane.clock.tick(model, stages::watch_objective);
    membrane.clock.tick(model, stages::watch_check);
}

void somersault_final(std::vector<Membrane>& membranes, const ObjectiveDescriptor& desc,
                      const MaParams& params, const TickModel& model) {
    if (membranes.size() != 1)
        throw std::invalid_argument("somersault_final: requires exactly one live membrane, got " +
                                    std::to_string(membranes.size()));
    Membrane& membrane = membranes.front();
    membrane.monkeys = somersault(desc, std::move(membrane.monkeys), params, membrane.stream);
    update_local_best(membrane, desc);
    membrane.clock.tick(model, stages::somersault_division);
    membrane.clock.tick(model, stages::somersault_summation);
    membrane.clock.tick(model, stages::somersault_pivot);
    membrane.clock.tick(model, stages::somersault_pivot_process);
    membrane.clock.tick(model, stages::somersault_alfa);
    membrane.clock.tick(model, stages::somersault_new_positions);
    membrane.clock.tick(model, stages::somersault_check);
}

void eliminate_to_global(Membrane& membrane, GlobalRegion& region, const TickModel& model) {
    region.clock.merge_from(membrane.clock);
    region.clock.tick(model, stages::solution_elimination);
    region.population = std::move(membrane.monkeys);
    membrane.monkeys.clear();
    if (wins(region.sense, membrane.local_best.value, region.global_best.value))
        region.global_best = membrane.local_best;
}

StopReason check_termination(const GlobalRegion& region) {
    if (region.clock.t >= region.config.t_max) return StopReason::stop_time;
    if (region.config.target_value) {
        double target = *region.config.target_value;
        double tol = region.config.target_tolerance;
        double v = region.global_best.value;
        bool met = region.sense == Sense::minimize ? v <= target + tol : v >= target - tol;
        if (met) return StopReason::stop_feasible;
    }
    if (region.iteration >= region.config.ma.cyclic_number) return StopReason::stop_iterations;
    return StopReason::keep_running;
}

namespace {

void record(TraceLog* trace, std::string phase, std::uint64_t t, int locals, std::string note) {
    if (trace) trace->push_back({std::move(phase), t, locals, std::move(note)});
}

std::string size_list(const std::vector<Membrane>& membranes) {
    std::string out;
    std::size_t start = 1;
    for (std::size_t i = 0; i < membranes.size(); ++i) {
        if (i) out += " | ";
        std::size_t count = membranes[i].monkeys.size();
        out += "monkeys " + std::to_string(start) + "-" + std::to_string(start + count - 1) +
               " -> membrane " + std::to_string(membranes[i].label);
        start += count;
    }
    return out;
}

} // namespace

RunReport run_pmsam(const ObjectiveDescriptor& desc, const PmsamConfig& config,
                    const TickModel& model, int workers, TraceLog* trace) {
    auto start = std::chrono::steady_clock::now();
    GlobalRegion region = initialize(desc, config);
    record(trace, "initialize", region.clock.t, 0,
           "n=" + std::to_string(config.ma.population) +
               " m=" + std::to_string(config.membranes));

    RunReport report;
    report.function_id = desc.id;
    report.algorithm = "pmsam";
    report.seed = config.seed;

    StopReason decision = StopReason::keep_running;
    while (true) {
        if (region.clock.t >= config.t_max) {
            decision = StopReason::stop_time;
            break;
        }
        if (region.iteration >= config.ma.cyclic_number) {
            decision = StopReason::stop_iterations;
            break;
        }
        region.iteration += 1;

        int th = compute_threshold(region, model);
        record(trace, "division", region.clock.t, 0, "threshold=" + std::to_string(th));

        auto membranes = create_membranes(region, model);
        record(trace, "membrane-creation", region.clock.t, static_cast<int>(membranes.size()),
               "labels 1.." + std::to_string(membranes.size()));

        distribute(region, membranes, model);
        record(trace, "distribution", region.clock.t, static_cast<int>(membranes.size()),
               size_list(membranes));

        parallel_climb(membranes, desc, config.ma, model, workers);
        barrier_sync(region, membranes);
        record(trace, "climb", region.clock.t, static_cast<int>(membranes.size()), "");

        while (membranes.size() > 1) {
            auto before = membranes.size();
            membranes = migrate(std::move(membranes), region, model);
            record(trace, "migrate", region.clock.t, static_cast<int>(membranes.size()),
                   std::to_string(before) + " -> " + std::to_string(membranes.size()));

            for_each_membrane(membranes, workers, [&](Membrane& membrane) {
                watch_jump_round(membrane, desc, config.ma, model);
            });
            barrier_sync(region, membranes);
            record(trace, "watch-jump", region.clock.t, static_cast<int>(membranes.size()), "");

            parallel_climb(membranes, desc, config.ma, model, workers);
            barrier_sync(region, membranes);
            record(trace, "climb", region.clock.t, static_cast<int>(membranes.size()), "");
        }

        somersault_final(membranes, desc, config.ma, model);
        record(trace, "somersault", membranes.front().clock.t, 1, "");

        eliminate_to_global(membranes.front(), region, model);
        membranes.clear();
        record(trace, "solution-elimination", region.clock.t, 0, "");

        region.clock.tick(model, stages::termination_check);
        decision = check_termination(region);
        record(trace, "termination-check", region.clock.t, 0, to_string(decision));

        report.trace.push_back({region.iteration, region.global_best.value});
        if (decision != StopReason::keep_running) break;
    }

    report.best_value = region.global_best.value;
    report.best_position = region.global_best.position;
    report.iterations_used = region.iteration;
    report.ticks = region.clock.t;
    report.tick_ledger = region.clock.ledger;
    report.stop_reason = to_string(decision);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace pmsam
