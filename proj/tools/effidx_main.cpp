#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "effidx/commands.hpp"

namespace {

using namespace effidx;

void add_config_flags(CLI::App& cmd, EfficiencyConfig& cfg, bool& no_sqrt) {
    cmd.add_option("--q", cfg.bandwidth_exponent, "Bandwidth exponent: m = floor(T^q)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--apen-m", cfg.entropy.embedding, "ApEn embedding dimension")->capture_default_str();
    cmd.add_option("--apen-r", cfg.entropy.r_multiplier, "ApEn tolerance as a multiple of the series sd")
        ->capture_default_str();
    cmd.add_option("--surrogates", cfg.entropy.surrogates, "Shuffled surrogates for entropy normalisation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--seed", cfg.entropy.seed, "Seed for surrogate generation")->capture_default_str();
    cmd.add_flag("--no-sqrt", no_sqrt, "Report the un-rooted EI sum (published-table convention)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capital-market efficiency from long memory, fractal dimension and approximate entropy"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    cli::AnalyzeOptions analyze;
    std::vector<std::string> inputs;
    std::string manifest, analyze_out = ".", formats = "csv,json";
    bool no_sqrt = false;
    auto* cmd_analyze = app.add_subcommand("analyze", "Rank price series by the Efficiency Index");
    cmd_analyze->add_option("inputs", inputs, "Price CSV files or directories of them");
    cmd_analyze->add_option("--manifest", manifest, "CSV of ticker,path,country");
    cmd_analyze->add_option("-o,--out", analyze_out, "Output directory")->capture_default_str();
    cmd_analyze->add_option("--format", formats, "Comma-separated subset of csv,json,svg")->capture_default_str();
    cmd_analyze->add_flag("--skip-bad", analyze.skip_bad, "Warn about unreadable series instead of failing");
    cmd_analyze->add_option("-j,--jobs", analyze.jobs, "Series analysed in parallel")->capture_default_str();
    add_config_flags(*cmd_analyze, analyze.config, no_sqrt);

    cli::TableCheckOptions table;
    std::string fixture_path;
    auto* cmd_table = app.add_subcommand("table-check", "Verify the bundled published ranking table");
    cmd_table->add_option("--fixture", fixture_path, "Alternative fixture CSV");
    bool dump_fixture = false;
    cmd_table->add_flag("--dump-fixture", dump_fixture, "Print the bundled fixture as CSV and exit");

    ValidateOptions validate;
    auto* cmd_validate = app.add_subcommand("validate", "Monte Carlo check of the estimators on synthetic series");
    cmd_validate->add_option("--reps", validate.reps, "Replications per case (>= 50)")->capture_default_str();
    cmd_validate->add_option("-T,--length", validate.length, "Series length")->capture_default_str();
    cmd_validate->add_option("--seed", validate.seed, "Base seed")->capture_default_str();
    cmd_validate->add_option("--q", validate.bandwidth_exponent, "Bandwidth exponent")->capture_default_str();

    cli::RadarOptions radar;
    std::string radar_results, radar_out = ".";
    auto* cmd_radar = app.add_subcommand("radar", "Render radar charts of deviations from the efficient market");
    cmd_radar->add_option("results", radar_results, "results.csv (defaults to the bundled table)");
    cmd_radar->add_option("-o,--out", radar_out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsageError;
    }

    if (cmd_analyze->parsed()) {
        for (const auto& i : inputs) analyze.inputs.emplace_back(i);
        if (!manifest.empty()) analyze.manifest = manifest;
        analyze.output_dir = analyze_out;
        analyze.config.apply_sqrt = !no_sqrt;
        analyze.formats.clear();
        std::stringstream ss(formats);
        for (std::string f; std::getline(ss, f, ',');) {
            if (f != "csv" && f != "json" && f != "svg") {
                std::cerr << "error: unknown format '" << f << "'\n";
                return cli::kUsageError;
            }
            analyze.formats.insert(f);
        }
        return cli::run_analyze(analyze, std::cout, std::cerr);
    }
    if (cmd_table->parsed()) {
        if (dump_fixture) {
            write_fixture_csv(std::cout, bundled_fixture());
            return cli::kSuccess;
        }
        if (!fixture_path.empty()) table.fixture = fixture_path;
        return cli::run_table_check(table, std::cout, std::cerr);
    }
    if (cmd_validate->parsed()) return cli::run_validate(validate, std::cout, std::cerr);
    if (cmd_radar->parsed()) {
        if (!radar_results.empty()) radar.results = radar_results;
        radar.output_dir = radar_out;
        return cli::run_radar(radar, std::cout, std::cerr);
    }
    return cli::kUsageError;
}
