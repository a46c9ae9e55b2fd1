#pragma once

// Command implementations behind the `effidx` executable. Each returns the
// process exit code and writes diagnostics to the given streams.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "effidx/efficiency.hpp"
#include "effidx/ingest.hpp"
#include "effidx/radar.hpp"
#include "effidx/report.hpp"
#include "effidx/validate.hpp"

namespace effidx::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2, kCheckFailure = 3 };

struct InputSpec {
    std::string ticker;
    fs::path path;
    std::string country;
};

struct AnalyzeOptions {
    std::vector<fs::path> inputs;  // files or directories of *.csv
    std::optional<fs::path> manifest;
    fs::path output_dir = ".";
    EfficiencyConfig config;
    std::set<std::string> formats{"csv", "json"};
    bool skip_bad = false;
    std::size_t jobs = 1;
};

/// Reads `ticker,path,country`; relative paths resolve against the manifest's directory.
inline std::vector<InputSpec> read_manifest(const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw Error("cannot open manifest " + manifest.string());
    std::vector<InputSpec> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = csv::split(line, line_no);
        if (line_no == 1 && !f.empty() && f[0] == "ticker") continue;
        if (f.size() < 2 || f.size() > 3) throw ParseError(line_no, "manifest rows are `ticker,path[,country]`");
        fs::path p = f[1];
        if (p.is_relative()) p = manifest.parent_path() / p;
        out.push_back({f[0], p, f.size() == 3 ? f[2] : std::string{}});
    }
    return out;
}

inline std::vector<InputSpec> collect_inputs(const AnalyzeOptions& opt) {
    std::vector<InputSpec> specs;
    if (opt.manifest) specs = read_manifest(*opt.manifest);
    for (const auto& input : opt.inputs) {
        if (fs::is_directory(input)) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(input))
                if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) specs.push_back({f.stem().string(), f, {}});
        } else {
            specs.push_back({input.stem().string(), input, {}});
        }
    }
    return specs;
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

inline EfficiencyRecord analyze_file(const InputSpec& spec, const EfficiencyConfig& cfg, StatsSummary* stats) {
    std::ifstream in(spec.path, std::ios::binary);
    if (!in) throw AnalysisError(spec.ticker, "cannot open " + spec.path.string());
    try {
        const auto prices = parse_price_csv(in, spec.ticker);
        const auto returns = to_log_returns(prices);
        if (stats != nullptr) *stats = describe(returns);
        return analyze_series(returns, to_log_prices(prices), cfg, spec.country);
    } catch (const AnalysisError&) {
        throw;
    } catch (const Error& e) {
        throw AnalysisError(spec.ticker, e.what());
    }
}

inline int run_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<InputSpec> specs;
    try {
        opt.config.validate();
        specs = collect_inputs(opt);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    if (specs.empty()) {
        err << "error: no input series\n";
        return kUsageError;
    }

    struct Outcome {
        std::optional<EfficiencyRecord> record;
        StatsSummary stats{};
        std::string error;
    };
    std::vector<Outcome> outcomes(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                outcomes[i].record = analyze_file(specs[i], opt.config, &outcomes[i].stats);
            } catch (const Error& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(opt.jobs, 1, specs.size());
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<EfficiencyRecord> records;
    std::vector<std::pair<std::string, StatsSummary>> stats;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (outcomes[i].record) {
            records.push_back(std::move(*outcomes[i].record));
            stats.emplace_back(specs[i].ticker, outcomes[i].stats);
        } else {
            ++failures;
            err << (opt.skip_bad ? "warning: " : "error: ") << outcomes[i].error << '\n';
        }
    }
    if ((failures > 0 && !opt.skip_bad) || records.empty()) {
        if (records.empty() && failures == 0) err << "error: no series analysed\n";
        return kDataError;
    }

    std::vector<EfficiencyRecord> ranked;
    try {
        ranked = rank_records(std::move(records));
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }

    try {
        fs::create_directories(opt.output_dir);
        if (opt.formats.contains("csv")) {
            std::ostringstream results;
            write_results_csv(results, ranked);
            write_file(opt.output_dir / "results.csv", results.str());
            std::sort(stats.begin(), stats.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            std::string table = std::string(kStatsCsvHeader) + '\n';
            for (const auto& [ticker, s] : stats) table += to_csv_row(ticker, s) + '\n';
            write_file(opt.output_dir / "stats.csv", table);
        }
        if (opt.formats.contains("json"))
            write_file(opt.output_dir / "results.json", results_json(ranked, opt.config).dump(2) + '\n');
        if (opt.formats.contains("svg")) {
            const auto table = deviation_table(ranked);
            std::ostringstream dev;
            write_deviations_csv(dev, table);
            write_file(opt.output_dir / "deviations.csv", dev.str());
            for (const auto& chart : radar_charts(table)) write_file(opt.output_dir / chart.file_name, chart.svg);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    out << "analysed " << ranked.size() << " series";
    if (failures > 0) out << " (" << failures << " skipped)";
    out << "; most efficient: " << ranked.front().ticker << '\n';
    return kSuccess;
}

struct TableCheckOptions {
    std::optional<fs::path> fixture;  // defaults to the bundled table
};

inline int run_table_check(const TableCheckOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<FixtureRow> rows;
    try {
        if (opt.fixture) {
            std::ifstream in(*opt.fixture);
            if (!in) throw Error("cannot open fixture " + opt.fixture->string());
            rows = read_fixture_csv(in);
        } else {
            rows = bundled_fixture();
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    const auto report = table_check(rows);
    print_report(out, report);
    return report.passed() ? kSuccess : kCheckFailure;
}

inline int run_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.reps < kMinValidateReps) {
        err << "error: --reps must be at least " << kMinValidateReps << '\n';
        return kUsageError;
    }
    try {
        const auto report = run_validation(opt);
        print_validation(out, report);
        return report.passed() ? kSuccess : kCheckFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

struct RadarOptions {
    std::optional<fs::path> results;  // results.csv; the bundled table when absent
    fs::path output_dir = ".";
};

inline int run_radar(const RadarOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<EfficiencyRecord> records;
    try {
        if (opt.results) {
            std::ifstream in(*opt.results);
            if (!in) throw Error("cannot open " + opt.results->string());
            records = read_results_csv(in);
        } else {
            EfficiencyConfig cfg;
            cfg.apply_sqrt = false;
            for (const auto& row : bundled_fixture())
                records.push_back(make_record(row.ticker, row.country, row.measures, cfg));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    try {
        fs::create_directories(opt.output_dir);
        const auto table = deviation_table(records);
        std::ostringstream dev;
        write_deviations_csv(dev, table);
        write_file(opt.output_dir / "deviations.csv", dev.str());
        for (const auto& chart : radar_charts(table)) write_file(opt.output_dir / chart.file_name, chart.svg);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    out << "wrote 4 radar charts for " << records.size() << " series to " << opt.output_dir.string() << '\n';
    return kSuccess;
}

}  // namespace effidx::cli
