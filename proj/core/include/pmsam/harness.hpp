#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pmsam/clock.hpp"
#include "pmsam/membrane.hpp"
#include "pmsam/report.hpp"

namespace pmsam {

enum class Algorithm { ma, pmsam, both };

std::string to_string(Algorithm a);

/// A batch of independent seeded runs over one or more functions.
struct ExperimentSpec {
    std::vector<std::string> function_ids;
    Algorithm algorithm = Algorithm::pmsam;
    PmsamConfig config;
    int runs = 20;
    std::uint64_t base_seed = 0;  ///< run k uses seed base_seed + k
};

/// Sample mean and unbiased variance of best values over one
/// (function, algorithm) cell.
struct SummaryRow {
    std::string function_id;
    std::string algorithm;
    int m = 0;
    int n = 0;
    int climb_number = 0;  ///< the climb number the algorithm actually ran
    double mean = 0.0;
    double variance = 0.0;
};

struct ExperimentResult {
    std::vector<SummaryRow> rows;       ///< sorted by (function, algorithm)
    std::vector<RunReport> reports;     ///< sorted by (function, algorithm, seed)
    int ma_climb_number = 0;            ///< equalized climb budget used for baseline runs
};

/// Runs `spec.runs` independent runs per function and algorithm, optionally
/// fanning runs out over `run_workers` threads. Results are independent of
/// the worker count. Baseline (ma) runs use an equalized climb number so
/// both algorithms spend the same total climb iterations per cycle.
/// Throws std::invalid_argument on an unknown function id.
ExperimentResult run_experiment(const ExperimentSpec& spec, const TickModel& model,
                                int run_workers = 1);

/// Writes `function,algorithm,seed,iteration,best_value` rows sorted by
/// (function, algorithm, seed, iteration). Byte-deterministic for fixed
/// inputs. Throws std::runtime_error when the path is not writable.
void emit_convergence_csv(const std::vector<RunReport>& reports,
                          const std::filesystem::path& path);

/// Writes `function,algorithm,m,n,climb_number,mean,variance` rows sorted
/// by (function, algorithm). Byte-deterministic for fixed inputs.
void emit_summary_csv(const std::vector<SummaryRow>& rows,
                      const std::filesystem::path& path);

/// One row of the logical-time comparison between the baseline and the
/// membrane algorithm: closed-form model ticks plus ticks measured from
/// instrumented single-cycle runs.
struct TimingRow {
    int n = 0;
    int m = 0;
    std::uint64_t ma_model = 0;
    std::uint64_t pmsam_model = 0;
    std::uint64_t ma_measured = 0;
    std::uint64_t pmsam_measured = 0;
};

/// Evaluates the per-cycle tick cost of both algorithms over the given
/// population sizes (each >= m). Measured values come from one-cycle
/// micro-runs on f1.
std::vector<TimingRow> compare_time(const std::vector<int>& n_values, int m,
                                    const MaParams& params, const TickModel& model);

/// Writes the timing table as CSV.
void emit_timing_csv(const std::vector<TimingRow>& rows, const std::filesystem::path& path);

/// Writes the structured experiment report: spec echo, summary rows and
/// per-run results (without traces or wall-clock times), with stable key
/// order. Byte-deterministic for fixed inputs.
void emit_report_json(const ExperimentSpec& spec, const ExperimentResult& result,
                      const std::filesystem::path& path);

/// The per-function settings used by the 12-function bench reproduction:
/// published (m, n, climb_number) plus a probed cycle count from the
/// published 20..5000 spread (the published table omits it).
struct BenchSetting {
    int m = 0;
    int n = 0;
    int climb_number = 0;
    int cycles = 400;
};

/// Returns the bench setting for a built-in function id, or nullptr.
const BenchSetting* bench_setting(std::string_view function_id);

} // namespace pmsam
