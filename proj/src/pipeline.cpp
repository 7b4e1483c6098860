#include "lst/pipeline.hpp"

#include "lst/econometrics.hpp"
#include "lst/errors.hpp"

namespace lst {

namespace {

SeriesColumn dense_column(std::string name, const std::vector<Date>& dates,
                          const std::vector<double>& values, std::string source = "",
                          std::string unit = "") {
    SeriesColumn col;
    col.name = std::move(name);
    col.dates = dates;
    col.values.assign(values.begin(), values.end());
    col.source = std::move(source);
    col.unit = std::move(unit);
    return col;
}

// Dated USD prices present in a series; errors when the column is entirely absent.
std::pair<std::vector<Date>, std::vector<double>> usd_prices(const PriceSeries& series) {
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& row : series.rows) {
        if (row.price_usd) {
            dates.push_back(row.date);
            values.push_back(*row.price_usd);
        }
    }
    if (values.empty()) {
        throw data_error("series '" + series.token + "' has no price_usd data");
    }
    return {std::move(dates), std::move(values)};
}

SeriesColumn optional_usd_column(const char* name, const char* csv_column,
                                 const PriceSeries& series,
                                 std::optional<double> PriceRow::*field) {
    SeriesColumn col;
    col.name = name;
    col.unit = "usd";
    col.source = series.token;
    bool any = false;
    for (const auto& row : series.rows) {
        col.dates.push_back(row.date);
        col.values.push_back(row.*field);
        any = any || (row.*field).has_value();
    }
    if (!any) {
        throw data_error("series '" + series.token + "' has no " + std::string(csv_column) +
                         " data");
    }
    return col;
}

}  // namespace

TokenAnalytics analyze_token(const PriceSeries& token, const RateCurve& staking_curve,
                             bool include_gap_returns) {
    std::vector<Date> dates;
    std::vector<double> prices;
    for (const auto& row : token.rows) {
        dates.push_back(row.date);
        prices.push_back(row.price_native);
    }
    TokenAnalytics out;
    out.returns = daily_returns(dates, prices, include_gap_returns);
    out.returns.source = token.token;
    out.dates = out.returns.dates;

    const auto staking = staking_returns_on(staking_curve, out.returns.dates);
    out.excess = excess_returns(out.returns, staking);

    // Cumulative-return indices, both rebased to 1 at the first return date.
    std::vector<double> lst_index(out.returns.values.size() + 1, 1.0);
    std::vector<double> base_index(out.returns.values.size() + 1, 1.0);
    for (std::size_t i = 0; i < out.returns.values.size(); ++i) {
        lst_index[i + 1] = lst_index[i] * (1.0 + out.returns.values[i]);
        base_index[i + 1] = base_index[i] * (1.0 + staking.values[i]);
    }
    const auto premium = premium_series(lst_index, base_index);
    out.premium.assign(premium.begin() + 1, premium.end());
    return out;
}

std::pair<Panel, PanelReport> build_token_panel(const PriceSeries& token,
                                                const PriceSeries& base,
                                                const RateCurve& staking_curve,
                                                const PipelineOptions& options) {
    PanelReport report;

    auto analytics = analyze_token(token, staking_curve, options.include_gap_returns);
    report.token_gap_returns_dropped = analytics.returns.gap_excluded;

    const PriceSeries& delta_series =
        options.delta_source == PipelineOptions::DeltaSource::kBase ? base : token;
    auto [usd_dates, usd_values] = usd_prices(delta_series);
    auto delta = daily_returns(usd_dates, usd_values, options.include_gap_returns);
    report.delta_gap_returns_dropped = delta.gap_excluded;
    if (delta.values.size() < static_cast<std::size_t>(options.sigma_window)) {
        throw data_error("series '" + delta_series.token + "': fewer USD returns than the sigma window");
    }

    auto sigma = rolling_sigma(delta.values, options.sigma_window);
    std::vector<Date> sigma_dates(delta.dates.begin() + options.sigma_window - 1, delta.dates.end());

    // Daily relative change of the rolling sigma; zero-sigma denominators are
    // dropped and reported.
    std::vector<Date> change_dates;
    std::vector<double> change_values;
    for (std::size_t i = 1; i < sigma.size(); ++i) {
        if (sigma[i - 1] == 0.0) {
            ++report.sigma_zero_dropped;
            continue;
        }
        change_dates.push_back(sigma_dates[i]);
        change_values.push_back((sigma[i] - sigma[i - 1]) / sigma[i - 1]);
    }

    std::vector<SeriesColumn> columns;
    columns.push_back(dense_column(kColExcess, analytics.dates, analytics.excess, token.token));
    columns.push_back(dense_column(kColPremium, analytics.dates, analytics.premium, token.token,
                                   "percentage points"));
    columns.push_back(dense_column(kColDelta, delta.dates, delta.values, delta_series.token));
    columns.push_back(dense_column(kColSigmaMonthly, sigma_dates, sigma, delta_series.token));
    columns.push_back(dense_column(kColSigmaChange, change_dates, change_values, delta_series.token));
    columns.push_back(
        optional_usd_column(kColMarketCap, "market_cap_usd", token, &PriceRow::market_cap_usd));
    columns.push_back(optional_usd_column(kColVolume, "volume_usd", token, &PriceRow::volume_usd));

    auto [panel, align_report] = align(columns);
    report.align = align_report;

    if (options.standardize_usd) {
        panel = standardize(panel, {kColMarketCap, kColVolume});
    }
    return {std::move(panel), report};
}

}  // namespace lst
