#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "lst/manifest.hpp"
#include "synth.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LSTLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path write_scenario(const fs::path& dir, const std::string& extra = "") {
    const fs::path path = dir / "scenario.cfg";
    std::ofstream out(path);
    out << "seed = 42\n"
        << "horizon_days = 120\n"
        << "chain.name = eth\n"
        << "chain.reward_rate = 0.0482\n"
        << "chain.lockup_days = 0\n"
        << "lsp.model = reward\n"
        << "lsp.fee = 0.0\n"
        << "initial_deposit = 200000\n"
        << "pool.native = 100000\n"
        << "pool.lst = 100000\n"
        << "arbitrage.enabled = true\n"
        << "arbitrage.tolerance = 0.0001\n"
        << "shock.30 = -2600\n"
        << "marker.30 = shock\n"
        << extra;
    return path;
}

}  // namespace

TEST_CASE("simulate writes trace, markers, state and manifest deterministically") {
    const auto dir = synth::fresh_dir("lst_cli_sim");
    const auto cfg = write_scenario(dir);

    const auto out1 = dir / "run1";
    const auto out2 = dir / "run2";
    REQUIRE(run_cli("--out " + out1.string() + " simulate --config " + cfg.string()) == 0);
    REQUIRE(run_cli("--out " + out2.string() + " simulate --config " + cfg.string()) == 0);

    for (const char* name : {"trace.csv", "markers.csv", "lsp_state.csv"}) {
        CAPTURE(name);
        CHECK(synth::read_file(out1 / name) == synth::read_file(out2 / name));
        CHECK(!synth::read_file(out1 / name).empty());
    }

    auto m1 = lst::read_manifest((out1 / "manifest.txt").string());
    auto m2 = lst::read_manifest((out2 / "manifest.txt").string());
    m2.out_dir = m1.out_dir;  // runs differ only in directory and timestamp
    CHECK(lst::same_identity(m1, m2));
    CHECK(m1.artifacts.size() == 3);

    const std::string trace = synth::read_file(out1 / "trace.csv");
    CHECK(trace.rfind("day,fair_value,market_value,premium,", 0) == 0);
    CHECK(synth::read_file(out1 / "markers.csv") == "day,label\n30,shock\n");
}

TEST_CASE("simulate honors a seed override") {
    const auto dir = synth::fresh_dir("lst_cli_seed");
    const auto cfg = write_scenario(dir, "chain.slashing.probability = 0.05\n"
                                         "chain.slashing.penalty = 0.001\n");
    const auto out1 = dir / "a";
    const auto out2 = dir / "b";
    REQUIRE(run_cli("--out " + out1.string() + " simulate --config " + cfg.string()) == 0);
    REQUIRE(run_cli("--out " + out2.string() + " simulate --config " + cfg.string() +
                    " --seed 43") == 0);
    CHECK(synth::read_file(out1 / "trace.csv") != synth::read_file(out2 / "trace.csv"));
}

TEST_CASE("exit codes distinguish config, data and numerical failures") {
    const auto dir = synth::fresh_dir("lst_cli_exit");

    // config error: missing file
    CHECK(run_cli("--out " + (dir / "o").string() + " simulate --config " +
                  (dir / "nope.cfg").string()) == 2);

    // data error: malformed CSV
    {
        std::ofstream bad(dir / "bad.csv");
        bad << "date,price_native,price_usd,market_cap_usd,volume_usd\n2022-01-01,abc,,,\n";
    }
    CHECK(run_cli("--out " + (dir / "o").string() + " analyze --input tok=" +
                  (dir / "bad.csv").string() + " --flat-rate 0.05") == 3);

    // precondition violation: series too short for the pacf
    {
        std::ofstream tiny(dir / "tiny.csv");
        tiny << "value\n1\n2\n3\n";
    }
    CHECK(run_cli("--out " + (dir / "o").string() + " pacf --input " +
                  (dir / "tiny.csv").string() + " --max-lag 6") == 2);

    // numerical error: a constant series makes the lag design singular
    {
        std::ofstream flat(dir / "flat.csv");
        flat << "value\n";
        for (int i = 0; i < 30; ++i) flat << "2.5\n";
    }
    CHECK(run_cli("--out " + (dir / "o").string() + " pacf --input " +
                  (dir / "flat.csv").string() + " --max-lag 3") == 4);
}

TEST_CASE("analyze emits the descriptive table, ecdf, premium and peg files") {
    const auto dir = synth::fresh_dir("lst_cli_analyze");
    auto tok = synth::token_series("tokA", 0.05, 120, 9001);
    auto tok_path = synth::write_series(dir, "tokA", tok);

    // fair series: the exact staking index (a slight discount to market)
    lst::PriceSeries fair;
    fair.token = "fair";
    {
        const double daily = lst::daily_rate(0.05);
        double v = 1.0;
        for (std::size_t i = 0; i < 120; ++i) {
            lst::PriceRow row;
            row.date = *lst::Date::parse("2022-01-01") + static_cast<int>(i);
            if (i > 0) v *= 1.0 + daily;
            row.price_native = v;
            fair.rows.push_back(row);
        }
    }
    auto fair_path = synth::write_series(dir, "fairA", fair);

    const auto out = dir / "out";
    REQUIRE(run_cli("--out " + out.string() + " analyze --input tokA=" + tok_path.string() +
                    " --fair tokA=" + fair_path.string() + " --flat-rate 0.05") == 0);

    const std::string table = synth::read_file(out / "table5.tsv");
    CHECK(table.rfind("\ttokA\n", 0) == 0);
    CHECK(table.find("\nCount\t119\n") != std::string::npos);
    CHECK(table.find("\nStd.\t") != std::string::npos);
    CHECK(table.find("\n75%\t") != std::string::npos);

    CHECK(fs::exists(out / "tokA_ecdf.tsv"));
    CHECK(fs::exists(out / "tokA_premium.tsv"));
    CHECK(fs::exists(out / "tokA_peg.tsv"));
    const std::string peg = synth::read_file(out / "tokA_peg.tsv");
    CHECK(peg.rfind("date\tdeviation\tclassification\n", 0) == 0);
}

TEST_CASE("regress runs both models and reports per-token failures without aborting") {
    const auto dir = synth::fresh_dir("lst_cli_regress");
    const std::size_t days = 200;
    auto tokA = synth::token_series("tokA", 0.05, days, 42);
    auto tokB = synth::token_series("tokB", 0.05, days, 43);
    auto base = synth::base_series(days);
    auto a_path = synth::write_series(dir, "tokA", tokA);
    auto b_path = synth::write_series(dir, "tokB", tokB);
    auto base_path = synth::write_series(dir, "base", base);

    const auto out = dir / "excess";
    REQUIRE(run_cli("--out " + out.string() + " regress --model excess --input tokA=" +
                    a_path.string() + " --input tokB=" + b_path.string() + " --base " +
                    base_path.string() + " --flat-rate 0.05") == 0);
    const std::string table = synth::read_file(out / "table_excess.tsv");
    CHECK(table.rfind("\ttokA\ttokB\n", 0) == 0);
    CHECK(table.find("\nObservations\t") != std::string::npos);
    CHECK(synth::read_file(out / "vif.tsv").find("tokA\tdelta_daily") != std::string::npos);

    const auto out2 = dir / "premium";
    REQUIRE(run_cli("--out " + out2.string() + " regress --model premium --input tokA=" +
                    a_path.string() + " --base " + base_path.string() + " --flat-rate 0.05") == 0);
    const std::string ptable = synth::read_file(out2 / "table_premium.tsv");
    CHECK(ptable.find("\nshift1\t") != std::string::npos);
    CHECK(ptable.find("\nshift6\t") != std::string::npos);
    CHECK(fs::exists(out2 / "pacf.tsv"));

    // a token with no volume data fails alone, with a clear message
    auto broken = tokA;
    for (auto& row : broken.rows) row.volume_usd.reset();
    auto broken_path = synth::write_series(dir, "broken", broken);
    const std::string cmd = std::string(LSTLAB_CLI_PATH) + " --out " + (dir / "mix").string() +
                            " regress --model excess --input broken=" + broken_path.string() +
                            " --base " + base_path.string() + " --flat-rate 0.05 2> " +
                            (dir / "stderr.txt").string();
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 3);
    CHECK(synth::read_file(dir / "stderr.txt").find("volume_usd") != std::string::npos);
}

TEST_CASE("pacf subcommand reports the selected lags") {
    const auto dir = synth::fresh_dir("lst_cli_pacf");
    {
        std::ofstream out(dir / "series.csv");
        out << "value\n";
        lst::Rng rng(7);
        double prev1 = 0.0, prev2 = 0.0;
        for (int i = 0; i < 3000; ++i) {
            const double v = 0.5 * prev1 + 0.3 * prev2 + rng.normal();
            prev2 = prev1;
            prev1 = v;
            out << v << "\n";
        }
    }
    const std::string cmd = std::string(LSTLAB_CLI_PATH) + " --out " + (dir / "out").string() +
                            " pacf --input " + (dir / "series.csv").string() + " --max-lag 8 > " +
                            (dir / "stdout.txt").string() + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    const std::string note = synth::read_file(dir / "stdout.txt");
    CHECK(note.rfind("selected_lags ", 0) == 0);
    CHECK(fs::exists(dir / "out" / "pacf.tsv"));
}
