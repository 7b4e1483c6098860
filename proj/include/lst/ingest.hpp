#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lst/chain.hpp"
#include "lst/dates.hpp"

namespace lst {

// One dated market observation. price_native is required; the USD magnitudes
// may be missing per row (empty CSV cells).
struct PriceRow {
    Date date;
    double price_native{0.0};
    std::optional<double> price_usd;
    std::optional<double> market_cap_usd;
    std::optional<double> volume_usd;
};

struct PriceSeries {
    std::string token;
    std::vector<PriceRow> rows;
};

// CSV schema (exact header): date,price_native,price_usd,market_cap_usd,volume_usd
// ISO-8601 dates, decimal point, UTF-8, no thousands separators.
PriceSeries load_price_series(const std::string& path);
void write_price_series(const PriceSeries& series, std::ostream& out);

// Step-interpolated dated curve from a CSV path, or a constant curve from the
// fallback rate. Supplying neither is a config error.
RateCurve load_staking_curve(const std::optional<std::string>& path,
                             std::optional<double> flat_fallback);

// A named, dated column that may have gaps; the unit of alignment.
struct SeriesColumn {
    std::string name;
    std::vector<Date> dates;
    std::vector<std::optional<double>> values;  // same length as dates
    std::string source;
    std::string unit;
};

struct Panel {
    std::vector<Date> dates;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::map<std::string, std::string> metadata;  // per-column source/unit notes

    const std::vector<double>& column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    std::size_t rows() const { return dates.size(); }
};

struct AlignReport {
    std::map<std::string, int> dropped_per_column;  // listwise deletions attributed per column
    int rows{0};
};

// Intersects the columns' dates, then drops any date where a column has a
// missing value (listwise deletion), reporting drops per column.
std::pair<Panel, AlignReport> align(const std::vector<SeriesColumn>& columns);

// Z-scores the given columns in place (returns the new panel); records the
// applied location/scale in the panel metadata so coefficients stay
// interpretable.
Panel standardize(Panel panel, const std::vector<std::string>& columns);

}  // namespace lst
