// lstlab — liquid staking laboratory CLI.
//
// Subcommands: simulate (scenario runner), analyze (descriptive pipeline),
// regress (excess / premium regressions), pacf (lag diagnostics).
// Exit codes: 0 ok, 2 config error, 3 data error, 4 numerical error, 1 other.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lst/analytics.hpp"
#include "lst/csv.hpp"
#include "lst/econometrics.hpp"
#include "lst/errors.hpp"
#include "lst/ingest.hpp"
#include "lst/manifest.hpp"
#include "lst/pipeline.hpp"
#include "lst/scenario.hpp"
#include "lst/tables.hpp"

namespace fs = std::filesystem;

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("LSTLAB_OUT")) return env;
    return ".";
}

// Writes one artifact and records its content hash in the manifest.
template <typename Writer>
void emit(lst::RunManifest& manifest, const fs::path& dir, const std::string& name,
          Writer&& writer) {
    const fs::path path = dir / name;
    std::ofstream out(path);
    if (!out) throw lst::data_error("cannot write " + path.string());
    writer(out);
    out.close();
    manifest.artifacts.emplace_back(name, lst::hash_file(path.string()));
}

void finalize(lst::RunManifest& manifest, const fs::path& dir) {
    manifest.timestamp = lst::utc_timestamp_now();
    lst::write_manifest(manifest, (dir / "manifest.txt").string());
}

struct NamedInput {
    std::string token;
    std::string path;
};

NamedInput parse_named(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq == std::string::npos) {
        return {fs::path(arg).stem().string(), arg};
    }
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

lst::RateCurve baseline_from_flags(const std::string& curve_path, double flat_rate,
                                   bool flat_given) {
    std::optional<std::string> path;
    if (!curve_path.empty()) path = curve_path;
    std::optional<double> flat;
    if (flat_given) flat = flat_rate;
    return lst::load_staking_curve(path, flat);
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override) {
    auto config = lst::ScenarioConfig::load(config_path);
    if (seed_override) config.seed = *seed_override;

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    auto trace = lst::run_scenario(config);

    lst::RunManifest manifest;
    manifest.command = "simulate";
    manifest.config_paths = {config_path};
    manifest.seed = config.seed;
    manifest.out_dir = out_dir;

    emit(manifest, dir, "trace.csv", [&](std::ostream& out) { lst::write_trace_csv(trace, out); });
    emit(manifest, dir, "markers.csv",
         [&](std::ostream& out) { lst::write_markers_csv(trace, out); });
    emit(manifest, dir, "lsp_state.csv",
         [&](std::ostream& out) { lst::write_lsp_csv(trace, out); });
    finalize(manifest, dir);

    std::cerr << "simulate: " << trace.rows.size() << " rows, " << trace.arbitrage_trades
              << " arbitrage trades, " << trace.slash_events << " slash events, max audit error "
              << trace.max_audit_error << "\n";
    return 0;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::vector<std::string>& fairs,
                const std::string& curve_path, double flat_rate, bool flat_given, double peg_band,
                bool include_gap_returns, const std::string& out_dir) {
    if (inputs.empty()) throw lst::config_error("analyze: at least one --input required");
    const auto curve = baseline_from_flags(curve_path, flat_rate, flat_given);

    std::map<std::string, std::string> fair_paths;
    for (const auto& f : fairs) {
        auto named = parse_named(f);
        fair_paths[named.token] = named.path;
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    lst::RunManifest manifest;
    manifest.command = "analyze";
    manifest.out_dir = out_dir;

    std::vector<std::pair<std::string, lst::DescriptiveStats>> table;
    for (const auto& arg : inputs) {
        const auto named = parse_named(arg);
        manifest.config_paths.push_back(named.path);
        auto series = lst::load_price_series(named.path);
        series.token = named.token;

        auto analytics = lst::analyze_token(series, curve, include_gap_returns);
        table.emplace_back(named.token, lst::descriptive_stats(analytics.excess));

        emit(manifest, dir, named.token + "_ecdf.tsv", [&](std::ostream& out) {
            lst::write_ecdf_tsv(lst::ecdf(analytics.excess), out);
        });
        emit(manifest, dir, named.token + "_premium.tsv", [&](std::ostream& out) {
            lst::write_dated_series_tsv("premium_pp", analytics.dates, analytics.premium, out);
        });

        auto fair_it = fair_paths.find(named.token);
        if (fair_it != fair_paths.end()) {
            auto fair_series = lst::load_price_series(fair_it->second);
            // Align market and fair observations by date before the peg check.
            std::map<lst::Date, double> fair_by_date;
            for (const auto& row : fair_series.rows) fair_by_date[row.date] = row.price_native;
            std::vector<lst::Date> dates;
            std::vector<double> market, fair;
            for (const auto& row : series.rows) {
                auto it = fair_by_date.find(row.date);
                if (it == fair_by_date.end()) continue;
                dates.push_back(row.date);
                market.push_back(row.price_native);
                fair.push_back(it->second);
            }
            if (dates.empty()) {
                throw lst::data_error("analyze: no overlapping dates between market and fair for " +
                                      named.token);
            }
            auto peg = lst::peg_deviation(market, fair, peg_band);
            emit(manifest, dir, named.token + "_peg.tsv",
                 [&](std::ostream& out) { lst::write_peg_tsv(dates, peg, out); });
        }
    }

    emit(manifest, dir, "table5.tsv",
         [&](std::ostream& out) { lst::write_descriptive_table(table, out); });
    finalize(manifest, dir);
    return 0;
}

int cmd_regress(const std::string& model, const std::vector<std::string>& inputs,
                const std::string& base_path, const std::string& curve_path, double flat_rate,
                bool flat_given, int lags, int sigma_window, bool raw_usd,
                const std::string& delta_source, int pacf_lags, bool include_gap_returns,
                const std::string& out_dir) {
    if (inputs.empty()) throw lst::config_error("regress: at least one --input required");
    if (model != "excess" && model != "premium") {
        throw lst::config_error("regress: --model must be excess or premium");
    }
    const auto curve = baseline_from_flags(curve_path, flat_rate, flat_given);
    auto base = lst::load_price_series(base_path);

    lst::PipelineOptions options;
    options.sigma_window = sigma_window;
    options.standardize_usd = !raw_usd;
    options.include_gap_returns = include_gap_returns;
    options.delta_source = delta_source == "lst" ? lst::PipelineOptions::DeltaSource::kLst
                                                 : lst::PipelineOptions::DeltaSource::kBase;

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    lst::RunManifest manifest;
    manifest.command = "regress-" + model;
    manifest.config_paths = {base_path};
    manifest.out_dir = out_dir;

    std::vector<lst::RegressionResult> results;
    std::vector<std::string> failures;
    std::vector<std::pair<std::string, lst::Panel>> panels;

    for (const auto& arg : inputs) {
        const auto named = parse_named(arg);
        manifest.config_paths.push_back(named.path);
        // A singular design in one token must not abort the batch.
        try {
            auto series = lst::load_price_series(named.path);
            series.token = named.token;
            auto [panel, report] = lst::build_token_panel(series, base, curve, options);
            if (model == "excess") {
                results.push_back(lst::excess_regression(panel, named.token));
            } else {
                results.push_back(lst::premium_regression(panel, named.token, lags));
                panels.emplace_back(named.token, panel);
            }
            std::cerr << "regress: " << named.token << ": " << report.align.rows
                      << " rows after alignment";
            for (const auto& [column, dropped] : report.align.dropped_per_column) {
                if (dropped > 0) std::cerr << ", " << column << " dropped " << dropped;
            }
            if (report.token_gap_returns_dropped > 0) {
                std::cerr << ", " << report.token_gap_returns_dropped << " gap returns excluded";
            }
            if (report.sigma_zero_dropped > 0) {
                std::cerr << ", " << report.sigma_zero_dropped << " zero-sigma rows dropped";
            }
            std::cerr << "\n";
        } catch (const lst::Error& e) {
            if (e.kind() == lst::ErrorKind::kNumeric) {
                failures.push_back(named.token + ": " + e.what());
                std::cerr << "regress: " << named.token << " failed: " << e.what() << "\n";
            } else {
                throw;
            }
        }
    }
    if (results.empty()) {
        throw lst::numeric_error("regress: every token failed (" + std::to_string(failures.size()) +
                                 " failures)");
    }

    const std::string table_name = "table_" + model + ".tsv";
    emit(manifest, dir, table_name,
         [&](std::ostream& out) { lst::write_regression_table(results, out); });
    emit(manifest, dir, "vif.tsv", [&](std::ostream& out) { lst::write_vif_tsv(results, out); });
    if (model == "premium") {
        emit(manifest, dir, "pacf.tsv", [&](std::ostream& out) {
            for (const auto& [token, panel] : panels) {
                const auto& premium = panel.column(lst::kColPremium);
                auto result = lst::pacf(premium, pacf_lags);
                lst::write_pacf_tsv(token, result, lst::select_lags(result), out);
            }
        });
    }
    if (!failures.empty()) {
        emit(manifest, dir, "failures.txt", [&](std::ostream& out) {
            for (const auto& f : failures) out << f << '\n';
        });
    }
    finalize(manifest, dir);
    return 0;
}

int cmd_pacf(const std::string& input, int max_lag, const std::string& out_dir) {
    auto rows = lst::csv::read_file(input);
    if (rows.empty()) throw lst::data_error(input + ": empty series file");
    std::size_t start = 0;
    if (!rows[0].fields.empty() && lst::Date::parse(rows[0].fields[0]) == std::nullopt) {
        start = 1;  // header row
    }
    std::vector<double> values;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::string ctx = input + ":" + std::to_string(row.line_number);
        if (row.fields.empty()) continue;
        values.push_back(lst::csv::parse_double(row.fields.back(), ctx));
    }
    auto result = lst::pacf(values, max_lag);
    const int selected = lst::select_lags(result);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    lst::RunManifest manifest;
    manifest.command = "pacf";
    manifest.config_paths = {input};
    manifest.out_dir = out_dir;
    emit(manifest, dir, "pacf.tsv", [&](std::ostream& out) {
        lst::write_pacf_tsv(fs::path(input).stem().string(), result, selected, out);
    });
    finalize(manifest, dir);

    std::cout << "selected_lags " << selected << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lstlab — proof-of-stake liquid staking simulator and econometrics pipeline"};
    app.require_subcommand(1);

    std::string out_dir = default_out_dir();
    app.add_option("--out", out_dir, "Output directory (default: $LSTLAB_OUT or .)")
        ->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a scenario and emit trace files");
    std::string sim_config;
    std::uint64_t sim_seed = 0;
    sim->add_option("--config", sim_config, "Scenario config file")->required();
    auto* seed_opt = sim->add_option("--seed", sim_seed, "Override the config seed");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Descriptive statistics, ECDF, premium, peg series");
    std::vector<std::string> ana_inputs, ana_fairs;
    std::string ana_curve;
    double ana_flat = 0.0, ana_band = 0.001;
    bool ana_gaps = false;
    ana->add_option("--input", ana_inputs, "token=path.csv market price series (repeatable)");
    ana->add_option("--fair", ana_fairs, "token=path.csv fair-value series for peg analysis");
    ana->add_option("--baseline-curve", ana_curve, "Staking rate curve CSV");
    auto* ana_flat_opt = ana->add_option("--flat-rate", ana_flat, "Flat annual staking rate");
    ana->add_option("--band", ana_band, "At-peg classification band")->capture_default_str();
    ana->add_flag("--include-gap-returns", ana_gaps, "Keep returns spanning calendar gaps");

    // regress
    auto* reg = app.add_subcommand("regress", "Excess-return or premium regressions");
    std::string reg_model, reg_base, reg_curve, reg_delta = "base";
    std::vector<std::string> reg_inputs;
    double reg_flat = 0.0;
    int reg_lags = 6, reg_sigma = 30, reg_pacf_lags = 12;
    bool reg_raw = false;
    reg->add_option("--model", reg_model, "excess | premium")->required();
    reg->add_option("--input", reg_inputs, "token=path.csv market series (repeatable)");
    reg->add_option("--base", reg_base, "Base currency series (price_usd used)")->required();
    reg->add_option("--baseline-curve", reg_curve, "Staking rate curve CSV");
    auto* reg_flat_opt = reg->add_option("--flat-rate", reg_flat, "Flat annual staking rate");
    reg->add_option("--lags", reg_lags, "Premium model lag count")->capture_default_str();
    reg->add_option("--sigma-window", reg_sigma, "Rolling sigma window")->capture_default_str();
    reg->add_option("--pacf-lags", reg_pacf_lags, "Lags in the PACF diagnostic")
        ->capture_default_str();
    reg->add_flag("--raw-usd", reg_raw, "Skip z-scoring of market cap and volume");
    bool reg_gaps = false;
    reg->add_flag("--include-gap-returns", reg_gaps, "Keep returns spanning calendar gaps");
    reg->add_option("--delta-source", reg_delta, "delta_daily from: base | lst")
        ->capture_default_str();

    // pacf
    auto* pac = app.add_subcommand("pacf", "Partial autocorrelation of a series CSV");
    std::string pac_input;
    int pac_lags = 12;
    pac->add_option("--input", pac_input, "CSV whose last column is the series")->required();
    pac->add_option("--max-lag", pac_lags, "Maximum lag")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            std::optional<std::uint64_t> seed;
            if (seed_opt->count() > 0) seed = sim_seed;
            return cmd_simulate(sim_config, out_dir, seed);
        }
        if (ana->parsed()) {
            return cmd_analyze(ana_inputs, ana_fairs, ana_curve, ana_flat,
                               ana_flat_opt->count() > 0, ana_band, ana_gaps, out_dir);
        }
        if (reg->parsed()) {
            return cmd_regress(reg_model, reg_inputs, reg_base, reg_curve, reg_flat,
                               reg_flat_opt->count() > 0, reg_lags, reg_sigma, reg_raw, reg_delta,
                               reg_pacf_lags, reg_gaps, out_dir);
        }
        if (pac->parsed()) {
            return cmd_pacf(pac_input, pac_lags, out_dir);
        }
    } catch (const lst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case lst::ErrorKind::kConfig:
            case lst::ErrorKind::kValidation:
                return 2;
            case lst::ErrorKind::kData:
                return 3;
            case lst::ErrorKind::kNumeric:
                return 4;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
