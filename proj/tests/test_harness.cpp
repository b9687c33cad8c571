#include <doctest.h>

#include <limits>
#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "pmsam/harness.hpp"

using namespace pmsam;
namespace fs = std::filesystem;

namespace {

ExperimentSpec tiny_spec(const char* id = "f1", Algorithm algo = Algorithm::pmsam, int runs = 4) {
    ExperimentSpec spec;
    spec.function_ids = {id};
    spec.algorithm = algo;
    spec.config.ma.population = 6;
    spec.config.ma.dimension = 30;
    spec.config.ma.climb_number = 2;
    spec.config.ma.cyclic_number = 3;
    spec.config.membranes = 2;
    spec.runs = runs;
    spec.base_seed = 100;
    return spec;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pmsam-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("summary statistics match a two-pass oracle") {
    TickModel model = TickModel::defaults();
    ExperimentResult result = run_experiment(tiny_spec(), model, 1);
    REQUIRE(result.rows.size() == 1);
    REQUIRE(result.reports.size() == 4);

    double mean = 0.0;
    for (const auto& r : result.reports) mean += r.best_value;
    mean /= 4.0;
    double variance = 0.0;
    for (const auto& r : result.reports)
        variance += (r.best_value - mean) * (r.best_value - mean);
    variance /= 3.0;

    CHECK(std::fabs(result.rows[0].mean - mean) <= 1e-12 * std::max(1.0, std::fabs(mean)));
    CHECK(std::fabs(result.rows[0].variance - variance) <=
          1e-12 * std::max(1.0, std::fabs(variance)));
    CHECK(result.rows[0].variance >= 0.0);
}

TEST_CASE("a single run has exactly zero variance") {
    TickModel model = TickModel::defaults();
    ExperimentSpec spec = tiny_spec("f4", Algorithm::pmsam, 1);
    ExperimentResult result = run_experiment(spec, model, 1);
    CHECK(result.rows[0].variance == 0.0);
}

TEST_CASE("running both algorithms yields two summary rows with shared seeds") {
    TickModel model = TickModel::defaults();
    ExperimentSpec spec = tiny_spec("f1", Algorithm::both, 3);
    ExperimentResult result = run_experiment(spec, model, 2);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].algorithm == "ma");
    CHECK(result.rows[1].algorithm == "pmsam");
    CHECK(result.reports.size() == 6);
    // Baseline climb budget equalizes total climb iterations per cycle:
    // P_c * (1 + ceil(log2 m)) / 2, rounded up.
    CHECK(result.ma_climb_number == 2);
    CHECK(result.rows[0].climb_number == 2);
    CHECK(result.rows[1].climb_number == 2);
    for (int k = 0; k < 3; ++k) {
        CHECK(result.reports[static_cast<std::size_t>(k)].seed == 100 + k);
        CHECK(result.reports[static_cast<std::size_t>(3 + k)].seed == 100 + k);
    }
}

TEST_CASE("experiments are invariant to the run worker count") {
    TickModel model = TickModel::defaults();
    ExperimentSpec spec = tiny_spec("f4", Algorithm::both, 5);
    ExperimentResult serial = run_experiment(spec, model, 1);
    ExperimentResult pooled = run_experiment(spec, model, 4);
    REQUIRE(serial.reports.size() == pooled.reports.size());
    for (std::size_t i = 0; i < serial.reports.size(); ++i) {
        CHECK(serial.reports[i].best_value == pooled.reports[i].best_value);
        CHECK(serial.reports[i].ticks == pooled.reports[i].ticks);
    }
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].mean == pooled.rows[i].mean);
        CHECK(serial.rows[i].variance == pooled.rows[i].variance);
    }
}

TEST_CASE("unknown function ids are configuration errors") {
    TickModel model = TickModel::defaults();
    ExperimentSpec spec = tiny_spec("f99");
    CHECK_THROWS_WITH_AS(run_experiment(spec, model, 1),
                         doctest::Contains("f99"), std::invalid_argument);
}

TEST_CASE("convergence CSV is sorted, complete and byte-stable") {
    TickModel model = TickModel::defaults();
    ExperimentSpec spec = tiny_spec("f1", Algorithm::pmsam, 2);
    ExperimentResult result = run_experiment(spec, model, 1);

    TempDir dir;
    fs::path csv = dir.path / "convergence.csv";
    emit_convergence_csv(result.reports, csv);
    std::string first = slurp(csv);

    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "function,algorithm,seed,iteration,best_value");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 2 * 3);  // two seeds, three iterations each
    // Rows grouped by seed, iterations contiguous and ascending.
    for (int k = 0; k < 3; ++k) {
        CHECK(rows[static_cast<std::size_t>(k)].rfind("f1,pmsam,100," +
                                                      std::to_string(k + 1) + ",",
                                                      0) == 0);
        CHECK(rows[static_cast<std::size_t>(3 + k)].rfind("f1,pmsam,101," +
                                                          std::to_string(k + 1) + ",",
                                                          0) == 0);
    }

    emit_convergence_csv(result.reports, csv);
    CHECK(slurp(csv) == first);

    CHECK_THROWS_AS(emit_convergence_csv(result.reports, "/no-such-dir/x.csv"),
                    std::runtime_error);
}

TEST_CASE("summary CSV is sorted and deterministic") {
    TickModel model = TickModel::defaults();
    ExperimentSpec spec = tiny_spec("f1", Algorithm::both, 2);
    ExperimentResult result = run_experiment(spec, model, 1);
    TempDir dir;
    fs::path csv = dir.path / "summary.csv";
    emit_summary_csv(result.rows, csv);
    std::string text = slurp(csv);
    CHECK(text.rfind("function,algorithm,m,n,climb_number,mean,variance\n", 0) == 0);
    CHECK(text.find("f1,ma,") != std::string::npos);
    CHECK(text.find("f1,pmsam,") != std::string::npos);
    emit_summary_csv(result.rows, csv);
    CHECK(slurp(csv) == text);
}

TEST_CASE("timing comparison: measured equals modeled, model trends hold") {
    TickModel model = TickModel::defaults();
    MaParams params;
    params.dimension = 30;
    params.climb_number = 2;
    auto rows = compare_time({4, 8, 16}, 2, params, model);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.ma_measured == row.ma_model);
        CHECK(row.pmsam_measured == row.pmsam_model);
        CHECK(row.pmsam_model < row.ma_model);
    }
    CHECK(rows[0].ma_model < rows[1].ma_model);
    CHECK(rows[1].ma_model < rows[2].ma_model);
    CHECK(rows[0].pmsam_model == rows[1].pmsam_model);  // width independence
    CHECK(rows[1].pmsam_model == rows[2].pmsam_model);

    CHECK_THROWS_AS(compare_time({1}, 2, params, model), std::invalid_argument);
    CHECK_THROWS_AS(compare_time({}, 2, params, model), std::invalid_argument);

    TempDir dir;
    fs::path csv = dir.path / "timing.csv";
    emit_timing_csv(rows, csv);
    std::string text = slurp(csv);
    CHECK(text.rfind("n,m,ma_ticks,pmsam_ticks,ma_ticks_measured,pmsam_ticks_measured\n", 0) ==
          0);
    emit_timing_csv(rows, csv);
    CHECK(slurp(csv) == text);
}

TEST_CASE("bench settings carry the published rows") {
    const BenchSetting* f1 = bench_setting("f1");
    REQUIRE(f1 != nullptr);
    CHECK(f1->m == 10);
    CHECK(f1->n == 60);
    CHECK(f1->climb_number == 50);
    const BenchSetting* f12 = bench_setting("f12");
    REQUIRE(f12 != nullptr);
    CHECK(f12->m == 20);
    CHECK(f12->n == 100);
    CHECK(f12->climb_number == 100);
    CHECK(bench_setting("f99") == nullptr);
    for (int i = 1; i <= 12; ++i) {
        const BenchSetting* s = bench_setting("f" + std::to_string(i));
        REQUIRE(s != nullptr);
        CHECK(s->cycles >= 20);
        CHECK(s->cycles <= 5000);
    }
}

TEST_CASE("report JSON: empty result, byte determinism and round trip") {
    TempDir dir;
    fs::path path = dir.path / "report.json";

    ExperimentSpec spec = tiny_spec();
    ExperimentResult empty;
    emit_report_json(spec, empty, path);
    auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["report_version"] == 1);
    CHECK(doc["summary"].is_array());
    CHECK(doc["summary"].empty());
    CHECK(doc["runs"].empty());

    TickModel model = TickModel::defaults();
    ExperimentResult result = run_experiment(spec, model, 1);
    emit_report_json(spec, result, path);
    std::string once = slurp(path);
    emit_report_json(spec, result, path);
    CHECK(slurp(path) == once);

    auto parsed = nlohmann::json::parse(once);
    REQUIRE(parsed["summary"].size() == result.rows.size());
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        CHECK(parsed["summary"][i]["function"] == result.rows[i].function_id);
        CHECK(parsed["summary"][i]["algorithm"] == result.rows[i].algorithm);
        CHECK(parsed["summary"][i]["m"] == result.rows[i].m);
        CHECK(parsed["summary"][i]["n"] == result.rows[i].n);
        CHECK(parsed["summary"][i]["mean"].get<double>() == result.rows[i].mean);
        CHECK(parsed["summary"][i]["variance"].get<double>() == result.rows[i].variance);
    }
    REQUIRE(parsed["runs"].size() == result.reports.size());
    CHECK(parsed["runs"][0].contains("tick_ledger"));
    CHECK(!parsed["runs"][0].contains("wall_seconds"));
}
