#include <doctest.h>

#include <cmath>

#include "lst/econometrics.hpp"
#include "lst/errors.hpp"
#include "lst/pipeline.hpp"
#include "lst/rng.hpp"

using namespace lst;

namespace {

// Token whose market price compounds exactly at the staking rate, with USD
// fields filled; `mcap_gap_days` rows get an empty market cap.
PriceSeries synthetic_token(const char* name, double annual_rate, std::size_t days,
                            std::uint64_t seed, int mcap_gap_days = 0, double wiggle = 0.0) {
    Rng rng(seed);
    PriceSeries s;
    s.token = name;
    Date d = *Date::parse("2022-01-01");
    double price = 1.0;
    const double daily = daily_rate(annual_rate);
    for (std::size_t i = 0; i < days; ++i) {
        PriceRow row;
        row.date = d + static_cast<int>(i);
        if (i > 0) price *= (1.0 + daily) * (1.0 + wiggle * rng.normal());
        row.price_native = price;
        row.price_usd = price * (100.0 + std::sin(static_cast<double>(i) / 5.0) * 5.0);
        // the gap sits at i = 40.. so it lands inside the aligned range
        if (static_cast<int>(i) < 40 || static_cast<int>(i) >= 40 + mcap_gap_days) {
            row.market_cap_usd = 1e9 + 1e6 * static_cast<double>(i);
        }
        row.volume_usd = 5e6 + 1e4 * static_cast<double>(i % 17);
        s.rows.push_back(row);
    }
    return s;
}

PriceSeries synthetic_base(std::size_t days) {
    PriceSeries s;
    s.token = "base";
    Date d = *Date::parse("2022-01-01");
    for (std::size_t i = 0; i < days; ++i) {
        PriceRow row;
        row.date = d + static_cast<int>(i);
        row.price_native = 1.0;
        row.price_usd = 100.0 * (1.0 + 0.1 * std::sin(static_cast<double>(i) / 7.0));
        s.rows.push_back(row);
    }
    return s;
}

}  // namespace

TEST_CASE("a token tracking the baseline exactly has zero excess and premium") {
    auto token = synthetic_token("exact", 0.05, 80, 1);
    auto curve = RateCurve::flat(0.05);
    auto analytics = analyze_token(token, curve);
    REQUIRE(analytics.excess.size() == 79);
    for (double v : analytics.excess) CHECK(std::fabs(v) < 1e-12);
    for (double v : analytics.premium) CHECK(std::fabs(v) < 1e-9);
}

TEST_CASE("build_token_panel produces the canonical columns") {
    const std::size_t days = 90;
    auto token = synthetic_token("tok", 0.05, days, 2, 0, 0.001);
    auto base = synthetic_base(days);
    auto curve = RateCurve::flat(0.05);

    auto [panel, report] = build_token_panel(token, base, curve);
    for (const char* name : {kColExcess, kColPremium, kColDelta, kColSigmaMonthly,
                             kColSigmaChange, kColMarketCap, kColVolume}) {
        CHECK(panel.has_column(name));
    }
    // 90 days -> 89 returns; the sigma change needs 31 returns, so the first
    // usable date is return index 30.
    CHECK(panel.rows() == 59);
    CHECK(report.align.rows == 59);
    CHECK(report.sigma_zero_dropped == 0);
    // standardized by default, with metadata recorded
    CHECK(panel.metadata.count("market_cap.standardized") == 1);
    const auto& mcap = panel.column(kColMarketCap);
    double sum = 0.0;
    for (double v : mcap) sum += v;
    CHECK(std::fabs(sum) < 1e-8);

    // raw mode keeps the magnitudes
    PipelineOptions raw;
    raw.standardize_usd = false;
    auto [panel_raw, report_raw] = build_token_panel(token, base, curve, raw);
    (void)report_raw;
    CHECK(panel_raw.column(kColMarketCap)[0] > 1e8);
}

TEST_CASE("missing market caps drop rows and are reported") {
    const std::size_t days = 90;
    auto token = synthetic_token("tok", 0.05, days, 3, 5, 0.001);
    auto base = synthetic_base(days);
    auto curve = RateCurve::flat(0.05);
    auto [panel, report] = build_token_panel(token, base, curve);
    CHECK(report.align.dropped_per_column.at(kColMarketCap) == 5);
    CHECK(panel.rows() == 54);
}

TEST_CASE("a panel built from tracking noise feeds the regressions") {
    const std::size_t days = 160;
    auto token = synthetic_token("tok", 0.05, days, 4, 0, 0.002);
    auto base = synthetic_base(days);
    auto curve = RateCurve::flat(0.05);
    auto [panel, report] = build_token_panel(token, base, curve);
    (void)report;

    auto excess = excess_regression(panel, "tok");
    CHECK(excess.observations == static_cast<int>(panel.rows()));
    auto premium = premium_regression(panel, "tok", 6);
    CHECK(premium.observations == static_cast<int>(panel.rows()) - 6);
}

TEST_CASE("pipeline errors name the missing column") {
    const std::size_t days = 60;
    auto token = synthetic_token("tok", 0.05, days, 5);
    for (auto& row : token.rows) row.volume_usd.reset();
    auto base = synthetic_base(days);
    CHECK_THROWS_WITH_AS(build_token_panel(token, base, RateCurve::flat(0.05)),
                         doctest::Contains("volume"), Error);

    auto no_usd = synthetic_base(days);
    for (auto& row : no_usd.rows) row.price_usd.reset();
    CHECK_THROWS_WITH_AS(build_token_panel(token, no_usd, RateCurve::flat(0.05)),
                         doctest::Contains("price_usd"), Error);
}

TEST_CASE("delta source switch uses the token's own usd prices") {
    const std::size_t days = 70;
    auto token = synthetic_token("tok", 0.05, days, 6, 0, 0.001);
    auto base = synthetic_base(days);
    auto curve = RateCurve::flat(0.05);

    PipelineOptions from_lst;
    from_lst.delta_source = PipelineOptions::DeltaSource::kLst;
    auto [panel_base, r1] = build_token_panel(token, base, curve);
    auto [panel_lst, r2] = build_token_panel(token, base, curve, from_lst);
    (void)r1;
    (void)r2;
    CHECK(panel_base.column(kColDelta) != panel_lst.column(kColDelta));
}
