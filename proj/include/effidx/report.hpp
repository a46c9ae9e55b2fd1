#pragma once

// Text serialisation of efficiency records and the published-table regression.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "effidx/detail/numeric.hpp"
#include "effidx/efficiency.hpp"
#include "effidx/error.hpp"
#include "effidx/fixture.hpp"
#include "json.hpp"

namespace effidx {

inline constexpr std::string_view kToolVersion = "effidx 1.0.0";
inline constexpr std::string_view kResultsCsvHeader = "ticker,country,hurst,fractal,entropy,ei,rank";

namespace csv {

inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Splits one CSV line, honouring double-quoted fields.
inline std::vector<std::string> split(std::string_view line, std::size_t line_no = 0) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw ParseError(line_no, "unterminated quoted field");
    return fields;
}

inline double to_double(const std::string& s, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError(line_no, "not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ParseError(line_no, "not a number: '" + s + "'");
    return v;
}

inline std::size_t to_index(const std::string& s, std::size_t line_no) {
    const double v = to_double(s, line_no);
    if (v < 0.0 || v != std::floor(v)) throw ParseError(line_no, "not a nonnegative integer: '" + s + "'");
    return static_cast<std::size_t>(v);
}

}  // namespace csv

inline void write_results_csv(std::ostream& out, std::span<const EfficiencyRecord> ranked) {
    using detail::fixed;
    out << kResultsCsvHeader << '\n';
    for (const auto& r : ranked) {
        out << csv::quote(r.ticker) << ',' << csv::quote(r.country) << ',' << fixed(r.measures.hurst, 6) << ','
            << fixed(r.measures.fractal, 6) << ',' << fixed(r.measures.entropy, 6) << ',' << fixed(r.ei, 6) << ','
            << r.rank << '\n';
    }
}

/// Reads a results.csv produced by write_results_csv().
inline std::vector<EfficiencyRecord> read_results_csv(std::istream& in, const EfficiencyConfig& cfg = {}) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "empty results file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultsCsvHeader) throw ParseError(1, "expected header '" + std::string(kResultsCsvHeader) + "'");
    std::vector<EfficiencyRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = csv::split(line, line_no);
        if (f.size() != 7) throw ParseError(line_no, "expected 7 fields");
        if (f[0].empty()) throw ParseError(line_no, "empty ticker");
        auto r = make_record(f[0], f[1],
                             {csv::to_double(f[2], line_no), csv::to_double(f[3], line_no),
                              csv::to_double(f[4], line_no)},
                             cfg);
        r.ei = csv::to_double(f[5], line_no);
        r.rank = csv::to_index(f[6], line_no);
        records.push_back(std::move(r));
    }
    if (records.empty()) throw ParseError(line_no, "results file has no rows");
    return records;
}

inline nlohmann::ordered_json to_json(const EfficiencyRecord& r) {
    nlohmann::ordered_json j;
    j["ticker"] = r.ticker;
    j["country"] = r.country;
    j["hurst"] = r.measures.hurst;
    j["fractal"] = r.measures.fractal;
    j["entropy"] = r.measures.entropy;
    j["ei"] = r.ei;
    j["rank"] = r.rank;
    j["deviations"] = {{"hurst", r.deviations[0]}, {"fractal", r.deviations[1]}, {"entropy", r.deviations[2]}};
    if (r.details) {
        const auto& d = *r.details;
        j["estimates"] = {
            {"length", d.length},
            {"bandwidth", d.local_whittle.bandwidth},
            {"local_whittle", {{"value", d.local_whittle.value}, {"std_error", d.local_whittle.std_error}}},
            {"gph", {{"value", d.gph.value}, {"std_error", d.gph.std_error}, {"clamped", d.gph.clamped}}},
            {"hall_wood", {{"value", d.hall_wood.value}, {"out_of_range", d.hall_wood.out_of_range}}},
            {"genton", {{"value", d.genton.value}, {"out_of_range", d.genton.out_of_range}}},
            {"apen", {{"raw", d.entropy.raw_apen}, {"normalized", d.entropy.normalized},
                      {"tolerance", d.entropy.tolerance}}},
        };
    }
    return j;
}

inline nlohmann::ordered_json run_metadata(const EfficiencyConfig& cfg) {
    return {
        {"tool_version", kToolVersion},
        {"generator", synth::kGeneratorName},
        {"seed", cfg.entropy.seed},
        {"bandwidth_exponent", cfg.bandwidth_exponent},
        {"apply_sqrt", cfg.apply_sqrt},
        {"apen_m", cfg.entropy.embedding},
        {"apen_r_multiplier", cfg.entropy.r_multiplier},
        {"surrogates", cfg.entropy.surrogates},
    };
}

inline nlohmann::ordered_json results_json(std::span<const EfficiencyRecord> ranked, const EfficiencyConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["metadata"] = run_metadata(cfg);
    doc["results"] = nlohmann::ordered_json::array();
    for (const auto& r : ranked) doc["results"].push_back(to_json(r));
    return doc;
}

// ---------------------------------------------------------------------------
// Published-table regression

struct FixtureRow {
    std::string ticker;
    std::string country;
    Measures measures;
    double ei = 0.0;
    std::size_t hurst_rank = 0;
    std::size_t fractal_rank = 0;
    std::size_t entropy_rank = 0;
};

inline constexpr std::string_view kFixtureCsvHeader =
    "ticker,country,hurst,fractal,entropy,ei,hurst_rank,fractal_rank,entropy_rank";

inline std::vector<FixtureRow> bundled_fixture() {
    std::vector<FixtureRow> rows;
    for (const auto& p : fixture::kPublishedRanking)
        rows.push_back({std::string(p.ticker), std::string(p.country), {p.hurst, p.fractal, p.entropy}, p.ei,
                        p.hurst_rank, p.fractal_rank, p.entropy_rank});
    return rows;
}

inline void write_fixture_csv(std::ostream& out, std::span<const FixtureRow> rows) {
    using detail::fixed;
    out << kFixtureCsvHeader << '\n';
    for (const auto& r : rows)
        out << csv::quote(r.ticker) << ',' << csv::quote(r.country) << ',' << fixed(r.measures.hurst, 4) << ','
            << fixed(r.measures.fractal, 4) << ',' << fixed(r.measures.entropy, 4) << ',' << fixed(r.ei, 4) << ','
            << r.hurst_rank << ',' << r.fractal_rank << ',' << r.entropy_rank << '\n';
}

/// Rows must appear in published EI order.
inline std::vector<FixtureRow> read_fixture_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty fixture file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kFixtureCsvHeader) throw ParseError(1, "expected header '" + std::string(kFixtureCsvHeader) + "'");
    std::vector<FixtureRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = csv::split(line, line_no);
        if (f.size() != 9) throw ParseError(line_no, "expected 9 fields");
        rows.push_back({f[0], f[1],
                        {csv::to_double(f[2], line_no), csv::to_double(f[3], line_no), csv::to_double(f[4], line_no)},
                        csv::to_double(f[5], line_no), csv::to_index(f[6], line_no), csv::to_index(f[7], line_no),
                        csv::to_index(f[8], line_no)});
    }
    if (rows.empty()) throw ParseError(line_no, "fixture has no rows");
    return rows;
}

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct TableCheckReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

inline constexpr double kEiTolerance = 5e-4;
inline constexpr double kSpearmanTolerance = 0.015;

/// Recomputes the un-rooted EI from each row's (H, D, ApEn), and checks it
/// against the printed EI, the row order, the component ranks and the
/// published rank correlations.
inline TableCheckReport table_check(std::span<const FixtureRow> rows) {
    using detail::fixed;
    TableCheckReport report;
    EfficiencyConfig cfg;
    cfg.apply_sqrt = false;

    std::vector<EfficiencyRecord> records;
    for (const auto& row : rows) {
        auto rec = make_record(row.ticker, row.country, row.measures, cfg);
        const double diff = std::abs(rec.ei - row.ei);
        report.checks.push_back({"ei " + row.ticker, diff <= kEiTolerance,
                                 "computed " + fixed(rec.ei, 6) + " printed " + fixed(row.ei, 4)});
        records.push_back(std::move(rec));
    }

    std::vector<std::size_t> ei_ranks;
    try {
        ei_ranks = detail::rank_by(records, [](const EfficiencyRecord& r) { return r.ei; });
    } catch (const Error& e) {
        report.checks.push_back({"ranking", false, e.what()});
        return report;
    }
    {
        std::string mismatch;
        for (std::size_t i = 0; i < rows.size() && mismatch.empty(); ++i)
            if (ei_ranks[i] != i + 1)
                mismatch = rows[i].ticker + " listed at " + std::to_string(i + 1) + ", computed rank " +
                           std::to_string(ei_ranks[i]);
        report.checks.push_back({"ranking", mismatch.empty(), mismatch.empty() ? "order matches" : mismatch});
    }

    const auto comp = component_rankings(records);
    auto compare = [&](std::string_view name, const std::vector<std::size_t>& computed, auto published) {
        std::string mismatch;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::size_t expected = published(rows[i]);
            if (computed[i] != expected) {
                if (!mismatch.empty()) mismatch += "; ";
                mismatch += rows[i].ticker + " computed " + std::to_string(computed[i]) + " published " +
                            std::to_string(expected);
            }
        }
        report.checks.push_back({std::string(name), mismatch.empty(), mismatch.empty() ? "ranks match" : mismatch});
    };
    compare("component hurst", comp.hurst, [](const FixtureRow& r) { return r.hurst_rank; });
    compare("component fractal", comp.fractal, [](const FixtureRow& r) { return r.fractal_rank; });
    compare("component entropy", comp.entropy, [](const FixtureRow& r) { return r.entropy_rank; });

    auto rho_check = [&](std::string_view name, const std::vector<std::size_t>& component, double published) {
        const double rho = spearman(ei_ranks, component);
        report.checks.push_back({std::string(name), std::abs(rho - published) <= kSpearmanTolerance,
                                 "rho " + fixed(rho, 4) + " published " + fixed(published, 2)});
    };
    if (rows.size() >= 2) {
        rho_check("spearman entropy", comp.entropy, fixture::kSpearmanEntropy);
        rho_check("spearman fractal", comp.fractal, fixture::kSpearmanFractal);
        rho_check("spearman hurst", comp.hurst, fixture::kSpearmanHurst);
    }
    return report;
}

inline void print_report(std::ostream& out, const TableCheckReport& report) {
    for (const auto& c : report.checks)
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    out << (report.passed() ? "all checks passed" : "table check FAILED") << '\n';
}

}  // namespace effidx
