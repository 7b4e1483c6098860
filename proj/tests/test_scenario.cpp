#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lst/config.hpp"
#include "lst/errors.hpp"
#include "lst/scenario.hpp"

using namespace lst;

namespace {

ScenarioConfig base_scenario() {
    ScenarioConfig sc;
    sc.seed = 7;
    sc.horizon_days = 100;
    sc.chain.name = "chain";
    sc.chain.reward_rate = RateCurve::flat(0.0482);
    sc.chain.lockup_days = 0;
    sc.lsp.model = TokenModel::kReward;
    sc.lsp.fee = 0.0;
    sc.initial_deposit = 200000.0;
    sc.pool = Pool{100000.0, 100000.0, 0.0};
    sc.arbitrage.enabled = true;
    sc.arbitrage.tolerance = 1e-4;
    return sc;
}

}  // namespace

TEST_CASE("zero rewards, no shocks: everything stays at par") {
    auto sc = base_scenario();
    sc.chain.reward_rate = RateCurve::flat(0.0);
    auto trace = run_scenario(sc);
    REQUIRE(trace.rows.size() == 101);
    for (const auto& row : trace.rows) {
        CHECK(row.fair_value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row.market_value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row.premium == doctest::Approx(0.0));
    }
    CHECK(trace.arbitrage_trades == 0);
}

TEST_CASE("reward model at the flat annual rate reaches the annual figure") {
    auto sc = base_scenario();
    sc.horizon_days = 365;
    auto trace = run_scenario(sc);
    REQUIRE(trace.rows.size() == 366);
    CHECK(trace.rows.back().fair_value == doctest::Approx(1.0482).epsilon(1e-6));
    // with a deep pool and arbitrage on, the market tracks fair inside tolerance
    for (std::size_t i = 2; i < trace.rows.size(); ++i) {
        const auto& row = trace.rows[i];
        CHECK(std::fabs(row.market_value / row.fair_value - 1.0) <= sc.arbitrage.tolerance * 1.01);
    }
    CHECK(trace.max_audit_error < 1e-9);
}

TEST_CASE("a negative shock with the burn leg disabled leaves a persistent discount") {
    auto sc = base_scenario();
    sc.chain.lockup_days = kInfiniteLockup;  // unredeemable: no buy-and-burn
    sc.shocks.push_back({30, -2500.0});
    sc.event_markers.push_back({30, "shock"});
    auto trace = run_scenario(sc);
    for (int day = 31; day <= sc.horizon_days; ++day) {
        const auto& row = trace.rows[static_cast<std::size_t>(day)];
        CHECK(row.market_value / row.fair_value < 1.0);
        CHECK(row.premium < 0.0);
    }
}

TEST_CASE("arbitrage repairs a shock within tolerance when redemption works") {
    auto sc = base_scenario();
    sc.shocks.push_back({30, -2500.0});
    auto trace = run_scenario(sc);
    const auto& after = trace.rows[33];
    CHECK(std::fabs(after.market_value / after.fair_value - 1.0) < 1e-3);
    CHECK(trace.arbitrage_trades > 0);
    CHECK(trace.max_audit_error < 1e-9);
}

TEST_CASE("identical configs produce bit-identical traces") {
    auto sc = base_scenario();
    sc.chain.slashing = {0.02, 0.001};
    sc.mev_by_day.assign(101, 0.5);
    sc.mev_by_day[0] = 0.0;
    sc.shocks.push_back({40, 1500.0});
    sc.lsp.fee = 0.10;

    auto a = run_scenario(sc);
    auto b = run_scenario(sc);
    std::ostringstream sa, sb;
    write_trace_csv(a, sa);
    write_trace_csv(b, sb);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("day,fair_value,market_value,premium,lst_return,staking_return,"
                         "excess_return\n", 0) == 0);

    // a different seed moves the slashing draws
    sc.seed = 8;
    auto c = run_scenario(sc);
    std::ostringstream sc_out;
    write_trace_csv(c, sc_out);
    CHECK(sa.str() != sc_out.str());
}

TEST_CASE("value conservation audit under a busy scenario") {
    auto sc = base_scenario();
    sc.horizon_days = 200;
    sc.lsp.fee = 0.10;
    sc.lsp.model = TokenModel::kReward;
    sc.chain.lockup_days = 3;  // burn proceeds arrive with delay
    sc.chain.slashing = {0.05, 0.002};
    sc.mev_by_day.assign(201, 0.25);
    sc.mev_by_day[0] = 0.0;
    sc.shocks.push_back({20, -4000.0});
    sc.shocks.push_back({60, 3000.0});
    sc.pool.swap_fee = 0.003;

    auto trace = run_scenario(sc);
    CHECK(trace.slash_events > 0);
    CHECK(trace.arbitrage_trades > 0);
    CHECK(trace.max_audit_error < 1e-9);
}

TEST_CASE("audit holds for rebase and dual models in the pool") {
    for (auto model : {TokenModel::kRebase, TokenModel::kDual}) {
        auto sc = base_scenario();
        sc.lsp.model = model;
        sc.lsp.fee = 0.10;
        sc.horizon_days = 150;
        sc.shocks.push_back({50, -1000.0});
        auto trace = run_scenario(sc);
        CHECK(trace.max_audit_error < 1e-9);
        if (model == TokenModel::kRebase) {
            // the peg holds through rebases
            for (const auto& row : trace.rows) {
                CHECK(std::fabs(row.fair_value - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("exogenous price mode replays the series") {
    auto sc = base_scenario();
    sc.market_mode = MarketMode::kExogenous;
    sc.arbitrage.enabled = false;
    sc.horizon_days = 5;
    sc.exogenous_prices = {1.0, 1.01, 0.99, 1.02, 1.0, 1.03};
    auto trace = run_scenario(sc);
    REQUIRE(trace.rows.size() == 6);
    CHECK(trace.rows[2].market_value == 0.99);
    CHECK(trace.rows[5].market_value == 1.03);
    CHECK(trace.rows[1].lst_return == doctest::Approx(0.01));
    CHECK(trace.max_audit_error < 1e-9);  // the conservation audit runs here too
}

TEST_CASE("config validation catches bad scenarios") {
    auto sc = base_scenario();
    sc.horizon_days = 0;
    CHECK_THROWS_AS(run_scenario(sc), Error);

    sc = base_scenario();
    sc.pool.reserve_lst = sc.initial_deposit + 1.0;
    CHECK_THROWS_AS(run_scenario(sc), Error);

    sc = base_scenario();
    sc.market_mode = MarketMode::kExogenous;
    sc.exogenous_prices.assign(101, 1.0);
    CHECK_THROWS_AS(run_scenario(sc), Error);  // arbitrage against a fixed series

    sc = base_scenario();
    sc.shocks.push_back({500, 1.0});
    CHECK_THROWS_AS(run_scenario(sc), Error);
}

TEST_CASE("scenario config parses from key/value text") {
    auto cfg = KeyValueConfig::parse_string(
        "seed = 42\n"
        "horizon_days = 10\n"
        "chain.name = sol\n"
        "chain.reward_rate = 0.0651\n"
        "chain.lockup_days = 2\n"
        "lsp.model = reward\n"
        "lsp.fee = 0.10\n"
        "initial_deposit = 1000\n"
        "pool.native = 500\n"
        "pool.lst = 500\n"
        "arbitrage.enabled = true\n"
        "arbitrage.tolerance = 0.001\n"
        "shock.4 = -25\n"
        "marker.4 = Terra\n");
    auto sc = ScenarioConfig::from_config(cfg);
    CHECK(sc.seed == 42);
    CHECK(sc.horizon_days == 10);
    CHECK(sc.chain.name == "sol");
    CHECK(sc.chain.lockup_days == 2);
    CHECK(sc.lsp.fee == 0.10);
    REQUIRE(sc.shocks.size() == 1);
    CHECK(sc.shocks[0].day == 4);
    CHECK(sc.shocks[0].native_amount == -25.0);
    REQUIRE(sc.event_markers.size() == 1);
    CHECK(sc.event_markers[0].label == "Terra");

    auto trace = run_scenario(sc);
    std::ostringstream markers;
    write_markers_csv(trace, markers);
    CHECK(markers.str() == "day,label\n4,Terra\n");
}
