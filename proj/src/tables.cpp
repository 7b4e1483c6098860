#include "lst/tables.hpp"

#include <cstdio>
#include <ostream>

#include "lst/csv.hpp"

namespace lst {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

const Coefficient* find_coefficient(const RegressionResult& r, const std::string& name) {
    for (const auto& c : r.coefficients) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace

void write_descriptive_table(const std::vector<std::pair<std::string, DescriptiveStats>>& stats,
                             std::ostream& out) {
    for (const auto& [token, s] : stats) {
        (void)s;
        out << '\t' << token;
    }
    out << '\n';

    auto row = [&](const char* label, auto getter, bool integer = false) {
        out << label;
        for (const auto& [token, s] : stats) {
            (void)token;
            if (integer) {
                out << '\t' << static_cast<long>(getter(s));
            } else {
                out << '\t' << fixed(getter(s), 5);
            }
        }
        out << '\n';
    };
    row("Count", [](const DescriptiveStats& s) { return static_cast<double>(s.count); }, true);
    row("Mean", [](const DescriptiveStats& s) { return s.mean; });
    row("Std.", [](const DescriptiveStats& s) { return s.std; });
    row("Min.", [](const DescriptiveStats& s) { return s.min; });
    row("25%", [](const DescriptiveStats& s) { return s.q25; });
    row("50%", [](const DescriptiveStats& s) { return s.median; });
    row("75%", [](const DescriptiveStats& s) { return s.q75; });
    row("Max.", [](const DescriptiveStats& s) { return s.max; });
}

void write_regression_table(const std::vector<RegressionResult>& results, std::ostream& out) {
    static const char* kRowOrder[] = {"const",        "delta_daily", "sigma_daily_change",
                                      "market_cap",   "sigma_monthly", "shift1",
                                      "shift2",       "shift3",      "shift4",
                                      "shift5",       "shift6",      "volume"};

    for (const auto& r : results) out << '\t' << r.label;
    out << '\n';

    for (const char* name : kRowOrder) {
        out << name;
        for (const auto& r : results) {
            const auto* c = find_coefficient(r, name);
            out << '\t';
            if (c) out << fixed(c->coef, 3) << c->stars;
        }
        out << '\n';
        // the paired standard-error row has an empty label
        for (const auto& r : results) {
            const auto* c = find_coefficient(r, name);
            out << '\t';
            if (c) out << '(' << fixed(c->se, 3) << ')';
        }
        out << '\n';
    }

    out << "Observations";
    for (const auto& r : results) out << '\t' << r.observations;
    out << '\n';
    out << "R2";
    for (const auto& r : results) out << '\t' << fixed(r.r2, 3);
    out << '\n';
    out << "Adjusted R2";
    for (const auto& r : results) out << '\t' << fixed(r.adj_r2, 3);
    out << '\n';
}

void write_ecdf_tsv(const std::vector<EcdfPoint>& points, std::ostream& out) {
    out << "value\tcumulative_fraction\n";
    for (const auto& p : points) {
        out << csv::format_double(p.value) << '\t' << csv::format_double(p.fraction) << '\n';
    }
}

void write_vif_tsv(const std::vector<RegressionResult>& results, std::ostream& out) {
    out << "token\tregressor\tvif\tflagged\n";
    for (const auto& r : results) {
        for (const auto& v : r.vif) {
            out << r.label << '\t' << v.name << '\t' << csv::format_double(v.value) << '\t'
                << (v.flagged ? "yes" : "no") << '\n';
        }
    }
}

void write_pacf_tsv(const std::string& label, const PacfResult& pacf_result, int selected,
                    std::ostream& out) {
    out << "# token: " << label << ", band: " << csv::format_double(pacf_result.band)
        << ", selected_lags: " << selected << '\n';
    out << "lag\tpacf\tband\n";
    for (std::size_t k = 0; k < pacf_result.values.size(); ++k) {
        out << (k + 1) << '\t' << csv::format_double(pacf_result.values[k]) << '\t'
            << csv::format_double(pacf_result.band) << '\n';
    }
}

void write_dated_series_tsv(const char* value_header, const std::vector<Date>& dates,
                            const std::vector<double>& values, std::ostream& out) {
    out << "date\t" << value_header << '\n';
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out << dates[i].to_string() << '\t' << csv::format_double(values[i]) << '\n';
    }
}

void write_peg_tsv(const std::vector<Date>& dates, const std::vector<PegPoint>& points,
                   std::ostream& out) {
    out << "date\tdeviation\tclassification\n";
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out << dates[i].to_string() << '\t' << csv::format_double(points[i].deviation) << '\t'
            << to_string(points[i].cls) << '\n';
    }
}

}  // namespace lst
