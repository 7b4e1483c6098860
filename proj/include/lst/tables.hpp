#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lst/analytics.hpp"
#include "lst/econometrics.hpp"

namespace lst {

// Descriptive table, one column per token: rows Count / Mean / Std. / Min. /
// 25% / 50% / 75% / Max., values fixed to 5 decimals.
void write_descriptive_table(const std::vector<std::pair<std::string, DescriptiveStats>>& stats,
                             std::ostream& out);

// Regression table, one column per token: coefficient rows ("coef stars")
// each paired with an "(se)" row, in the order const, delta_daily,
// sigma_daily_change, market_cap, sigma_monthly, shift1..shift6, volume,
// then Observations, R2, Adjusted R2. Columns without a shift coefficient
// (the excess model) leave those cells empty. 3-decimal formatting.
void write_regression_table(const std::vector<RegressionResult>& results, std::ostream& out);

void write_ecdf_tsv(const std::vector<EcdfPoint>& points, std::ostream& out);

void write_vif_tsv(const std::vector<RegressionResult>& results, std::ostream& out);

void write_pacf_tsv(const std::string& label, const PacfResult& pacf_result, int selected,
                    std::ostream& out);

void write_dated_series_tsv(const char* value_header, const std::vector<Date>& dates,
                            const std::vector<double>& values, std::ostream& out);

void write_peg_tsv(const std::vector<Date>& dates, const std::vector<PegPoint>& points,
                   std::ostream& out);

}  // namespace lst
