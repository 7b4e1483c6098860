#pragma once

#include <span>
#include <string>
#include <vector>

#include "lst/chain.hpp"
#include "lst/dates.hpp"

namespace lst {

struct ReturnSeries {
    std::vector<Date> dates;    // date of each return (the later observation)
    std::vector<double> values; // simple daily returns
    std::string source;
    int gap_excluded{0};  // returns dropped because the observations were not adjacent days
};

// Simple returns p_t/p_{t-1} - 1 on calendar-adjacent observations. Returns
// spanning a gap > 1 day are excluded (and counted) unless include_gap_returns.
ReturnSeries daily_returns(const std::vector<Date>& dates, std::span<const double> prices,
                           bool include_gap_returns = false);

// Compounded staking index: index_0 = 1, index_t = index_{t-1} * (1 + daily(rate_t)).
// Returns horizon+1 values (days 0..horizon).
std::vector<double> staking_baseline(const RateCurve& curve, int horizon);

// Per-date staking returns for a calendar date vector (used when aligning
// against market data): daily_rate of the curve's rate at each date.
ReturnSeries staking_returns_on(const RateCurve& curve, const std::vector<Date>& dates);

// Xs_t = r_lst,t - r_stake,t; the two series must be date-aligned.
std::vector<double> excess_returns(const ReturnSeries& lst, const ReturnSeries& baseline);

// Percentage-point gap between two cumulative-return indices that both start at 1.
std::vector<double> premium_series(std::span<const double> lst_index,
                                   std::span<const double> baseline_index);

struct DescriptiveStats {
    int count{0};
    double mean{0.0};
    double std{0.0};
    double min{0.0};
    double q25{0.0};
    double median{0.0};
    double q75{0.0};
    double max{0.0};
};

// Sample statistics: std with the n-1 denominator, quantiles by linear
// interpolation (type 7).
DescriptiveStats descriptive_stats(std::span<const double> values);

struct EcdfPoint {
    double value{0.0};
    double fraction{0.0};
};

// Right-continuous empirical CDF: one point per distinct value, last fraction 1.
std::vector<EcdfPoint> ecdf(std::span<const double> values);

enum class PegClass { kUnderpriced, kAtPeg, kOverpriced };

struct PegPoint {
    double deviation{0.0};  // market/fair - 1
    PegClass cls{PegClass::kAtPeg};
};

const char* to_string(PegClass cls);

std::vector<PegPoint> peg_deviation(std::span<const double> market, std::span<const double> fair,
                                    double band = 0.001);

}  // namespace lst
