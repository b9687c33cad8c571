#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "pmsam/config.hpp"
#include "pmsam/harness.hpp"
#include "pmsam/membrane.hpp"

namespace fs = std::filesystem;

namespace {

int default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

pmsam::Algorithm parse_algorithm(const std::string& name) {
    if (name == "ma") return pmsam::Algorithm::ma;
    if (name == "pmsam") return pmsam::Algorithm::pmsam;
    if (name == "both") return pmsam::Algorithm::both;
    throw pmsam::ConfigError("unknown algorithm '" + name + "' (expected ma, pmsam or both)");
}

struct CliOptions {
    std::optional<std::string> config_path;
    std::vector<std::string> sets;
    std::string out_dir = ".";
    std::optional<long long> seed;
    std::string function_id = "f1";
    std::optional<std::string> algorithm;
    std::optional<int> runs;
};

pmsam::PmsamConfig build_config(const CliOptions& opts) {
    std::optional<fs::path> path;
    if (opts.config_path) path = fs::path(*opts.config_path);
    std::vector<std::string> overrides = opts.sets;
    if (opts.seed) overrides.push_back("seed=" + std::to_string(*opts.seed));
    return pmsam::parse_config(path, overrides);
}

const pmsam::ObjectiveDescriptor& lookup_function(const std::string& id) {
    const pmsam::ObjectiveDescriptor* desc = pmsam::find_objective(id);
    if (!desc) throw pmsam::ConfigError("unknown function id '" + id + "'");
    return *desc;
}

int cmd_bench(const CliOptions& opts) {
    pmsam::PmsamConfig base = build_config(opts);
    pmsam::Algorithm algo = parse_algorithm(opts.algorithm.value_or("both"));
    int runs = opts.runs.value_or(20);
    pmsam::TickModel model = pmsam::TickModel::defaults();

    pmsam::ExperimentResult merged;
    pmsam::ExperimentSpec echo_spec;
    echo_spec.algorithm = algo;
    echo_spec.config = base;
    echo_spec.runs = runs;
    echo_spec.base_seed = base.seed;

    for (const auto& desc : pmsam::builtin_suite()) {
        const pmsam::BenchSetting* setting = pmsam::bench_setting(desc.id);
        if (!setting) throw pmsam::ConfigError("no bench setting for '" + desc.id + "'");
        pmsam::ExperimentSpec spec;
        spec.function_ids = {desc.id};
        spec.algorithm = algo;
        spec.config = base;
        spec.config.ma.population = setting->n;
        spec.config.membranes = setting->m;
        spec.config.ma.climb_number = setting->climb_number;
        spec.config.ma.cyclic_number = setting->cycles;
        spec.runs = runs;
        spec.base_seed = base.seed;
        echo_spec.function_ids.push_back(desc.id);

        pmsam::ExperimentResult part = pmsam::run_experiment(spec, model, default_workers());
        for (auto& row : part.rows) merged.rows.push_back(std::move(row));
        for (auto& report : part.reports) merged.reports.push_back(std::move(report));
        merged.ma_climb_number = part.ma_climb_number;
    }

    fs::create_directories(opts.out_dir);
    pmsam::emit_summary_csv(merged.rows, fs::path(opts.out_dir) / "summary.csv");
    pmsam::emit_report_json(echo_spec, merged, fs::path(opts.out_dir) / "report.json");
    return 0;
}

int cmd_run(const CliOptions& opts) {
    pmsam::PmsamConfig config = build_config(opts);
    pmsam::Algorithm algo = parse_algorithm(opts.algorithm.value_or("pmsam"));
    if (algo == pmsam::Algorithm::both)
        throw pmsam::ConfigError("run expects --algorithm ma or pmsam");
    const auto& desc = lookup_function(opts.function_id);

    pmsam::ExperimentSpec spec;
    spec.function_ids = {desc.id};
    spec.algorithm = algo;
    spec.config = config;
    spec.runs = opts.runs.value_or(1);
    spec.base_seed = config.seed;

    pmsam::TickModel model = pmsam::TickModel::defaults();
    pmsam::ExperimentResult result = pmsam::run_experiment(spec, model, default_workers());

    fs::create_directories(opts.out_dir);
    pmsam::emit_convergence_csv(result.reports, fs::path(opts.out_dir) / "convergence.csv");
    pmsam::emit_report_json(spec, result, fs::path(opts.out_dir) / "report.json");
    return 0;
}

int cmd_compare(const CliOptions& opts) {
    pmsam::PmsamConfig config = build_config(opts);
    std::vector<int> n_values = {20, 40, 80, 160};
    pmsam::TickModel model = pmsam::TickModel::defaults();
    auto rows = pmsam::compare_time(n_values, config.membranes, config.ma, model);
    fs::create_directories(opts.out_dir);
    pmsam::emit_timing_csv(rows, fs::path(opts.out_dir) / "timing.csv");
    return 0;
}

int cmd_trace(const CliOptions& opts) {
    pmsam::PmsamConfig config = build_config(opts);
    config.ma.population = 20;
    config.membranes = 4;
    config.ma.cyclic_number = 1;
    const auto& desc = lookup_function("f1");

    pmsam::TickModel model = pmsam::TickModel::defaults();
    pmsam::TraceLog trace;
    pmsam::RunReport report = pmsam::run_pmsam(desc, config, model, 1, &trace);

    for (const auto& event : trace)
        std::printf("t=%-8llu locals=%d  %-20s %s\n",
                    static_cast<unsigned long long>(event.t), event.local_membranes,
                    event.phase.c_str(), event.note.c_str());
    std::printf("total ticks=%llu iterations=%d best=%.6g stop=%s\n",
                static_cast<unsigned long long>(report.ticks), report.iterations_used,
                report.best_value, report.stop_reason.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monkey-algorithm optimization engine with membrane parallelism"};
    app.require_subcommand(1);

    CliOptions opts;
    app.add_option("--config", opts.config_path, "flat key=value config file");
    app.add_option("--set", opts.sets, "override KEY=VALUE (repeatable)")->take_all();
    app.add_option("--out", opts.out_dir, "output directory");
    app.add_option("--seed", opts.seed, "base random seed");
    app.add_option("--function", opts.function_id, "objective id (f1..f12 or registered)");
    app.add_option("--algorithm", opts.algorithm, "ma, pmsam or both");
    app.add_option("--runs", opts.runs, "number of seeded runs");

    CLI::App* bench = app.add_subcommand("bench", "reproduce the 12-function result table");
    CLI::App* run = app.add_subcommand("run", "run one function/algorithm pair");
    CLI::App* compare = app.add_subcommand("compare", "emit the logical-time comparison table");
    CLI::App* trace = app.add_subcommand("trace", "print the n=20, m=4 phase/tick log");
    for (CLI::App* sub : {bench, run, compare, trace}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code();
    }

    try {
        if (bench->parsed()) return cmd_bench(opts);
        if (run->parsed()) return cmd_run(opts);
        if (compare->parsed()) return cmd_compare(opts);
        if (trace->parsed()) return cmd_trace(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand given\n";
    return 1;
}
