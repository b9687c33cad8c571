#include "pmsam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace pmsam {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::ma: return "ma";
        case Algorithm::pmsam: return "pmsam";
        case Algorithm::both: return "both";
    }
    return "unknown";
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("failed to format floating-point value");
    return std::string(buf, ptr);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file '" + path.string() + "'");
    return out;
}

/// Climb budget for the baseline so that one baseline cycle (two passes)
/// spends the same climb iterations as one membrane cycle
/// (1 + ceil(log2 m) passes).
int equalized_ma_climb(int climb_number, int m) {
    auto passes = static_cast<long long>(1 + migration_rounds(m));
    long long total = static_cast<long long>(climb_number) * passes;
    return static_cast<int>(std::max(1LL, (total + 1) / 2));
}

struct RunTask {
    const ObjectiveDescriptor* desc = nullptr;
    Algorithm algorithm = Algorithm::pmsam;
    std::uint64_t seed = 0;
};

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const TickModel& model,
                                int run_workers) {
    if (spec.runs < 1) throw std::invalid_argument("experiment: runs must be >= 1");
    spec.config.validate();

    std::vector<const ObjectiveDescriptor*> descs;
    for (const auto& id : spec.function_ids) {
        const ObjectiveDescriptor* d = find_objective(id);
        if (!d) throw std::invalid_argument("unknown function id '" + id + "'");
        descs.push_back(d);
    }
    std::sort(descs.begin(), descs.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });
    descs.erase(std::unique(descs.begin(), descs.end()), descs.end());

    std::vector<Algorithm> algos;
    if (spec.algorithm == Algorithm::both)
        algos = {Algorithm::ma, Algorithm::pmsam};
    else
        algos = {spec.algorithm};

    ExperimentResult result;
    result.ma_climb_number =
        equalized_ma_climb(spec.config.ma.climb_number, spec.config.membranes);

    MaParams ma_params = spec.config.ma;
    ma_params.climb_number = result.ma_climb_number;

    std::vector<RunTask> tasks;
    for (const auto* desc : descs)
        for (Algorithm algo : algos)
            for (int k = 0; k < spec.runs; ++k)
                tasks.push_back({desc, algo, spec.base_seed + static_cast<std::uint64_t>(k)});

    std::vector<RunReport> reports(tasks.size());
    auto run_one = [&](std::size_t i) {
        const RunTask& task = tasks[i];
        if (task.algorithm == Algorithm::ma) {
            reports[i] = run_ma(*task.desc, ma_params, task.seed, model);
        } else {
            PmsamConfig config = spec.config;
            config.seed = task.seed;
            reports[i] = run_pmsam(*task.desc, config, model, 1);
        }
    };

    if (run_workers <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                run_one(i);
        };
        auto count = std::min<std::size_t>(static_cast<std::size_t>(run_workers), tasks.size());
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (std::size_t i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto* desc : descs) {
        for (Algorithm algo : algos) {
            std::vector<double> bests;
            for (std::size_t i = 0; i < tasks.size(); ++i)
                if (tasks[i].desc == desc && tasks[i].algorithm == algo)
                    bests.push_back(reports[i].best_value);
            double mean = 0.0;
            for (double v : bests) mean += v;
            mean /= static_cast<double>(bests.size());
            double variance = 0.0;
            if (bests.size() > 1) {
                for (double v : bests) variance += (v - mean) * (v - mean);
                variance /= static_cast<double>(bests.size() - 1);
            }
            SummaryRow row;
            row.function_id = desc->id;
            row.algorithm = to_string(algo);
            row.m = spec.config.membranes;
            row.n = spec.config.ma.population;
            row.climb_number = algo == Algorithm::ma ? result.ma_climb_number
                                                     : spec.config.ma.climb_number;
            row.mean = mean;
            row.variance = variance;
            result.rows.push_back(std::move(row));
        }
    }

    result.reports = std::move(reports);
    std::sort(result.reports.begin(), result.reports.end(), [](const auto& a, const auto& b) {
        return std::tie(a.function_id, a.algorithm, a.seed) <
               std::tie(b.function_id, b.algorithm, b.seed);
    });
    return result;
}

void emit_convergence_csv(const std::vector<RunReport>& reports,
                          const std::filesystem::path& path) {
    std::vector<const RunReport*> sorted;
    sorted.reserve(reports.size());
    for (const auto& r : reports) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return std::tie(a->function_id, a->algorithm, a->seed) <
               std::tie(b->function_id, b->algorithm, b->seed);
    });
    auto out = open_output(path);
    out << "function,algorithm,seed,iteration,best_value\n";
    for (const auto* r : sorted)
        for (const auto& point : r->trace)
            out << r->function_id << ',' << r->algorithm << ',' << r->seed << ','
                << point.iteration << ',' << format_double(point.best_value) << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
    std::vector<const SummaryRow*> sorted;
    sorted.reserve(rows.size());
    for (const auto& r : rows) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return std::tie(a->function_id, a->algorithm) < std::tie(b->function_id, b->algorithm);
    });
    auto out = open_output(path);
    out << "function,algorithm,m,n,climb_number,mean,variance\n";
    for (const auto* r : sorted)
        out << r->function_id << ',' << r->algorithm << ',' << r->m << ',' << r->n << ','
            << r->climb_number << ',' << format_double(r->mean) << ','
            << format_double(r->variance) << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<TimingRow> compare_time(const std::vector<int>& n_values, int m,
                                    const MaParams& params, const TickModel& model) {
    if (n_values.empty()) throw std::invalid_argument("compare_time: empty n list");
    for (int n : n_values)
        if (n < m)
            throw std::invalid_argument("compare_time: population " + std::to_string(n) +
                                        " is smaller than m=" + std::to_string(m));
    const ObjectiveDescriptor* desc = find_objective("f1");
    std::vector<TimingRow> rows;
    for (int n : n_values) {
        TimingRow row;
        row.n = n;
        row.m = m;
        row.ma_model = ma_ticks(n, params.climb_number, model);
        row.pmsam_model = pmsam_ticks(n, m, params.climb_number, model);

        MaParams micro = params;
        micro.population = n;
        micro.dimension = desc->dimension;
        micro.cyclic_number = 1;
        row.ma_measured = run_ma(*desc, micro, 0, model).ticks;

        PmsamConfig config;
        config.ma = micro;
        config.membranes = m;
        config.seed = 0;
        row.pmsam_measured = run_pmsam(*desc, config, model, 1).ticks;
        rows.push_back(row);
    }
    return rows;
}

void emit_timing_csv(const std::vector<TimingRow>& rows, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "n,m,ma_ticks,pmsam_ticks,ma_ticks_measured,pmsam_ticks_measured\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.m << ',' << r.ma_model << ',' << r.pmsam_model << ','
            << r.ma_measured << ',' << r.pmsam_measured << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void emit_report_json(const ExperimentSpec& spec, const ExperimentResult& result,
                      const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["report_version"] = 1;

    nlohmann::ordered_json config;
    config["n"] = spec.config.ma.population;
    config["m"] = spec.config.membranes;
    config["d"] = spec.config.ma.dimension;
    config["step_length"] = spec.config.ma.step_length;
    config["eyesight"] = spec.config.ma.eyesight;
    config["somersault_lo"] = spec.config.ma.somersault_lo;
    config["somersault_hi"] = spec.config.ma.somersault_hi;
    config["climb_number"] = spec.config.ma.climb_number;
    config["n_max"] = spec.config.ma.cyclic_number;
    config["t_max"] = spec.config.t_max;
    config["climb_epsilon"] = spec.config.ma.climb_epsilon;
    config["max_resample"] = spec.config.ma.max_resample;
    if (spec.config.target_value)
        config["target_value"] = *spec.config.target_value;
    else
        config["target_value"] = nullptr;
    config["seed"] = spec.config.seed;

    nlohmann::ordered_json echo;
    echo["functions"] = spec.function_ids;
    echo["algorithm"] = to_string(spec.algorithm);
    echo["runs"] = spec.runs;
    echo["base_seed"] = spec.base_seed;
    echo["ma_climb_number"] = result.ma_climb_number;
    echo["config"] = std::move(config);
    doc["spec"] = std::move(echo);

    doc["summary"] = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        nlohmann::ordered_json r;
        r["function"] = row.function_id;
        r["algorithm"] = row.algorithm;
        r["m"] = row.m;
        r["n"] = row.n;
        r["climb_number"] = row.climb_number;
        r["mean"] = row.mean;
        r["variance"] = row.variance;
        doc["summary"].push_back(std::move(r));
    }

    doc["runs"] = nlohmann::ordered_json::array();
    for (const auto& report : result.reports) {
        nlohmann::ordered_json r;
        r["function"] = report.function_id;
        r["algorithm"] = report.algorithm;
        r["seed"] = report.seed;
        r["best_value"] = report.best_value;
        r["best_position"] = report.best_position;
        r["iterations"] = report.iterations_used;
        r["ticks"] = report.ticks;
        r["stop_reason"] = report.stop_reason;
        r["tick_ledger"] = report.tick_ledger;
        doc["runs"].push_back(std::move(r));
    }

    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

const BenchSetting* bench_setting(std::string_view function_id) {
    // (m, n, climb_number) are the published rows. The published table does
    // not record cycle counts; these are the probed counts at which each row
    // reaches its reproducible scale (f8 needs the longest valley descent,
    // f12's optimum basin is found almost immediately).
    static const std::map<std::string, BenchSetting, std::less<>> settings = {
        {"f1", {10, 60, 50, 150}},  {"f2", {20, 100, 50, 400}},  {"f3", {5, 100, 50, 400}},
        {"f4", {20, 60, 30, 200}},  {"f5", {10, 60, 30, 400}},   {"f6", {5, 100, 100, 400}},
        {"f7", {5, 60, 50, 400}},   {"f8", {20, 60, 50, 800}},   {"f9", {20, 60, 50, 400}},
        {"f10", {10, 100, 100, 400}}, {"f11", {10, 100, 30, 400}}, {"f12", {20, 100, 100, 100}},
    };
    auto it = settings.find(function_id);
    return it == settings.end() ? nullptr : &it->second;
}

} // namespace pmsam
