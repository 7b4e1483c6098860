#include "lst/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "lst/errors.hpp"
#include "lst/stats.hpp"

namespace lst {

ReturnSeries daily_returns(const std::vector<Date>& dates, std::span<const double> prices,
                           bool include_gap_returns) {
    if (dates.size() != prices.size()) {
        throw validation_error("daily_returns: dates/prices length mismatch");
    }
    if (prices.size() < 2) throw validation_error("daily_returns: need at least 2 observations");
    for (double p : prices) {
        if (!(p > 0.0)) throw data_error("daily_returns: non-positive price");
    }
    ReturnSeries out;
    for (std::size_t i = 1; i < prices.size(); ++i) {
        const int gap = dates[i] - dates[i - 1];
        if (gap != 1 && !include_gap_returns) {
            ++out.gap_excluded;
            continue;
        }
        out.dates.push_back(dates[i]);
        out.values.push_back(prices[i] / prices[i - 1] - 1.0);
    }
    return out;
}

std::vector<double> staking_baseline(const RateCurve& curve, int horizon) {
    if (horizon < 0) throw validation_error("staking_baseline: negative horizon");
    std::vector<double> index(static_cast<std::size_t>(horizon) + 1);
    index[0] = 1.0;
    for (int t = 1; t <= horizon; ++t) {
        index[static_cast<std::size_t>(t)] =
            index[static_cast<std::size_t>(t) - 1] * (1.0 + daily_rate(curve.annual_rate_on_day(t)));
    }
    return index;
}

ReturnSeries staking_returns_on(const RateCurve& curve, const std::vector<Date>& dates) {
    ReturnSeries out;
    out.source = "staking";
    out.dates = dates;
    out.values.reserve(dates.size());
    for (Date d : dates) {
        out.values.push_back(daily_rate(curve.annual_rate_on(d)));
    }
    return out;
}

std::vector<double> excess_returns(const ReturnSeries& lst, const ReturnSeries& baseline) {
    if (lst.dates != baseline.dates) {
        throw validation_error("excess_returns: series are not date-aligned");
    }
    std::vector<double> out(lst.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = lst.values[i] - baseline.values[i];
    }
    return out;
}

std::vector<double> premium_series(std::span<const double> lst_index,
                                   std::span<const double> baseline_index) {
    if (lst_index.size() != baseline_index.size()) {
        throw validation_error("premium_series: index length mismatch");
    }
    if (lst_index.empty()) throw validation_error("premium_series: empty input");
    if (lst_index[0] != 1.0 || baseline_index[0] != 1.0) {
        throw validation_error("premium_series: both indices must start at 1");
    }
    std::vector<double> out(lst_index.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 100.0 * (lst_index[i] - baseline_index[i]);
    }
    return out;
}

DescriptiveStats descriptive_stats(std::span<const double> values) {
    if (values.empty()) throw validation_error("descriptive_stats: empty series");
    DescriptiveStats s;
    s.count = static_cast<int>(values.size());
    s.mean = mean(values);
    s.std = sample_std(values);
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.q25 = quantile_type7(values, 0.25);
    s.median = quantile_type7(values, 0.50);
    s.q75 = quantile_type7(values, 0.75);
    return s;
}

std::vector<EcdfPoint> ecdf(std::span<const double> values) {
    if (values.empty()) throw validation_error("ecdf: empty series");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<EcdfPoint> out;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        // collapse duplicates to the last (largest) cumulative fraction
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        out.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    return out;
}

const char* to_string(PegClass cls) {
    switch (cls) {
        case PegClass::kUnderpriced: return "underpriced";
        case PegClass::kAtPeg: return "at peg";
        case PegClass::kOverpriced: return "overpriced";
    }
    return "?";
}

std::vector<PegPoint> peg_deviation(std::span<const double> market, std::span<const double> fair,
                                    double band) {
    if (market.size() != fair.size()) throw validation_error("peg_deviation: length mismatch");
    if (!(band >= 0.0)) throw validation_error("peg_deviation: band must be >= 0");
    std::vector<PegPoint> out(market.size());
    for (std::size_t i = 0; i < market.size(); ++i) {
        if (!(fair[i] > 0.0)) throw data_error("peg_deviation: fair value must be > 0");
        const double dev = market[i] / fair[i] - 1.0;
        PegClass cls = PegClass::kAtPeg;
        if (dev < -band) cls = PegClass::kUnderpriced;
        if (dev > band) cls = PegClass::kOverpriced;
        out[i] = {dev, cls};
    }
    return out;
}

}  // namespace lst
