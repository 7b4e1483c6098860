#pragma once

#include <string>
#include <vector>

#include "lst/analytics.hpp"
#include "lst/ingest.hpp"

namespace lst {

struct PipelineOptions {
    int sigma_window{30};
    bool standardize_usd{true};       // z-score market cap and volume
    bool include_gap_returns{false};  // keep returns spanning calendar gaps
    enum class DeltaSource { kBase, kLst } delta_source{DeltaSource::kBase};
};

struct PanelReport {
    AlignReport align;
    int token_gap_returns_dropped{0};
    int delta_gap_returns_dropped{0};
    int sigma_zero_dropped{0};
};

// Builds the per-token regression panel with the canonical columns
// (Xs, Premium, delta_daily, sigma_monthly, sigma_daily_change, market_cap,
// volume), aligned by date with listwise deletion.
//   Xs            LST daily return minus the staking-baseline daily return
//   Premium       percentage-point gap of the two cumulative-return indices
//   delta_daily   base currency's daily USD return
//   sigma_monthly trailing-window std of delta_daily
//   sigma_daily_change  daily relative change of sigma_monthly
std::pair<Panel, PanelReport> build_token_panel(const PriceSeries& token,
                                                const PriceSeries& base,
                                                const RateCurve& staking_curve,
                                                const PipelineOptions& options = {});

// Per-token series for the descriptive pipeline: excess returns, the premium
// series, both on the token's (gap-filtered) return dates.
struct TokenAnalytics {
    std::vector<Date> dates;
    std::vector<double> excess;
    std::vector<double> premium;
    ReturnSeries returns;
};

TokenAnalytics analyze_token(const PriceSeries& token, const RateCurve& staking_curve,
                             bool include_gap_returns = false);

}  // namespace lst
