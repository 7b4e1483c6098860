#include "lst/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <set>

#include "lst/csv.hpp"
#include "lst/errors.hpp"
#include "lst/stats.hpp"

namespace lst {

namespace {

const char* kPriceHeader = "date,price_native,price_usd,market_cap_usd,volume_usd";

std::optional<double> parse_optional(const std::string& field, const std::string& ctx) {
    if (field.empty()) return std::nullopt;
    return csv::parse_double(field, ctx);
}

}  // namespace

PriceSeries load_price_series(const std::string& path) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw data_error(path + ": empty price file");

    std::string header;
    for (std::size_t i = 0; i < rows[0].fields.size(); ++i) {
        if (i) header += ',';
        header += rows[0].fields[i];
    }
    if (header != kPriceHeader) {
        throw data_error(path + ":1: header must be exactly '" + std::string(kPriceHeader) + "'");
    }

    PriceSeries series;
    series.token = std::filesystem::path(path).stem().string();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::string ctx = path + ":" + std::to_string(row.line_number);
        if (row.fields.size() != 5) throw data_error(ctx + ": expected 5 columns");
        PriceRow r;
        auto date = Date::parse(row.fields[0]);
        if (!date) throw data_error(ctx + ": bad date '" + row.fields[0] + "'");
        r.date = *date;
        r.price_native = csv::parse_double(row.fields[1], ctx);
        if (!(r.price_native > 0.0)) {
            throw data_error(ctx + ": price_native must be > 0");
        }
        r.price_usd = parse_optional(row.fields[2], ctx);
        r.market_cap_usd = parse_optional(row.fields[3], ctx);
        r.volume_usd = parse_optional(row.fields[4], ctx);
        if (!series.rows.empty()) {
            if (r.date == series.rows.back().date) {
                throw data_error(ctx + ": duplicate date " + r.date.to_string());
            }
            if (r.date < series.rows.back().date) {
                throw data_error(ctx + ": dates must be strictly increasing");
            }
        }
        series.rows.push_back(r);
    }
    if (series.rows.empty()) throw data_error(path + ": no data rows");
    return series;
}

void write_price_series(const PriceSeries& series, std::ostream& out) {
    out << kPriceHeader << '\n';
    for (const auto& r : series.rows) {
        out << r.date.to_string() << ',' << csv::format_double(r.price_native) << ',';
        if (r.price_usd) out << csv::format_double(*r.price_usd);
        out << ',';
        if (r.market_cap_usd) out << csv::format_double(*r.market_cap_usd);
        out << ',';
        if (r.volume_usd) out << csv::format_double(*r.volume_usd);
        out << '\n';
    }
}

RateCurve load_staking_curve(const std::optional<std::string>& path,
                             std::optional<double> flat_fallback) {
    if (path) return load_rate_curve_csv(*path);
    if (flat_fallback) return RateCurve::flat(*flat_fallback);
    throw config_error("staking curve: provide a curve file or a flat rate");
}

const std::vector<double>& Panel::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return columns[i];
    }
    throw data_error("panel has no column '" + name + "'");
}

bool Panel::has_column(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::pair<Panel, AlignReport> align(const std::vector<SeriesColumn>& columns) {
    if (columns.empty()) throw validation_error("align requires at least one column");
    for (const auto& c : columns) {
        if (c.dates.size() != c.values.size()) {
            throw validation_error("column '" + c.name + "': dates/values length mismatch");
        }
    }

    // Intersection of the columns' date sets.
    std::set<Date> common(columns[0].dates.begin(), columns[0].dates.end());
    for (std::size_t i = 1; i < columns.size(); ++i) {
        std::set<Date> next(columns[i].dates.begin(), columns[i].dates.end());
        std::set<Date> merged;
        std::set_intersection(common.begin(), common.end(), next.begin(), next.end(),
                              std::inserter(merged, merged.begin()));
        common.swap(merged);
    }
    if (common.empty()) throw data_error("align: empty date intersection");

    std::vector<std::map<Date, std::optional<double>>> lookup(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
        for (std::size_t j = 0; j < columns[i].dates.size(); ++j) {
            lookup[i][columns[i].dates[j]] = columns[i].values[j];
        }
    }

    Panel panel;
    AlignReport report;
    for (const auto& c : columns) {
        panel.names.push_back(c.name);
        panel.columns.emplace_back();
        report.dropped_per_column[c.name] = 0;
        if (!c.source.empty()) panel.metadata[c.name + ".source"] = c.source;
        if (!c.unit.empty()) panel.metadata[c.name + ".unit"] = c.unit;
    }

    for (Date d : common) {
        bool keep = true;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (!lookup[i][d].has_value()) {
                report.dropped_per_column[columns[i].name] += 1;
                keep = false;
            }
        }
        if (!keep) continue;
        panel.dates.push_back(d);
        for (std::size_t i = 0; i < columns.size(); ++i) {
            panel.columns[i].push_back(*lookup[i][d]);
        }
    }
    if (panel.dates.empty()) throw data_error("align: no complete rows after listwise deletion");
    report.rows = static_cast<int>(panel.dates.size());
    return {std::move(panel), report};
}

Panel standardize(Panel panel, const std::vector<std::string>& columns) {
    for (const auto& name : columns) {
        if (!panel.has_column(name)) continue;
        for (std::size_t i = 0; i < panel.names.size(); ++i) {
            if (panel.names[i] != name) continue;
            auto& col = panel.columns[i];
            const double m = mean(col);
            const double s = sample_std(col);
            if (!(s > 0.0)) {
                throw numeric_error("standardize: column '" + name + "' is constant");
            }
            for (double& v : col) v = (v - m) / s;
            panel.metadata[name + ".standardized"] =
                "zscore mean=" + csv::format_double(m) + " std=" + csv::format_double(s);
        }
    }
    return panel;
}

}  // namespace lst
