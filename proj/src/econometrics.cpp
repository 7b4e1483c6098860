#include "lst/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lst/errors.hpp"
#include "lst/stats.hpp"

namespace lst {

std::vector<double> rolling_sigma(std::span<const double> values, int window) {
    if (window < 2) throw validation_error("rolling_sigma: window must be >= 2");
    if (values.size() < static_cast<std::size_t>(window)) {
        throw validation_error("rolling_sigma: series shorter than window");
    }
    std::vector<double> out;
    out.reserve(values.size() - static_cast<std::size_t>(window) + 1);
    for (std::size_t end = static_cast<std::size_t>(window); end <= values.size(); ++end) {
        out.push_back(sample_std(values.subspan(end - static_cast<std::size_t>(window),
                                                static_cast<std::size_t>(window))));
    }
    return out;
}

namespace {

constexpr double kRankEps = 1e-10;

std::string join_names(const std::vector<std::string>& names, const std::vector<int>& idx) {
    std::string out;
    for (int i : idx) {
        if (!out.empty()) out += ", ";
        out += names[static_cast<std::size_t>(i)];
    }
    return out;
}

// Rank check via column-pivoted QR; the trailing pivots past the numerical
// rank identify the dependent columns for the error message.
void require_full_rank(const Eigen::MatrixXd& X, const std::vector<std::string>& names) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(kRankEps);
    const auto rank = qr.rank();
    if (rank < X.cols()) {
        std::vector<int> offenders;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index i = rank; i < X.cols(); ++i) {
            offenders.push_back(static_cast<int>(perm[i]));
        }
        std::sort(offenders.begin(), offenders.end());
        throw numeric_error("singular design: dependent column(s): " + join_names(names, offenders));
    }
}

double t_statistic(double coef, double se) {
    if (se > 0.0) return coef / se;
    if (coef == 0.0) return 0.0;  // exact fit of an exactly-zero effect
    return coef > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
}

double p_of(double t, double dof) {
    if (std::isinf(t)) return 0.0;
    return student_t_two_sided_p(t, dof);
}

}  // namespace

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           const std::vector<std::string>& names, bool has_intercept) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (names.size() != static_cast<std::size_t>(k)) {
        throw validation_error("ols: one name per design column required");
    }
    if (y.size() != n) throw validation_error("ols: X/y row mismatch");
    if (n <= k) {
        throw numeric_error("insufficient observations: n=" + std::to_string(n) +
                            " <= k=" + std::to_string(k));
    }
    require_full_rank(X, names);

    // Solve with an unpivoted QR: deterministic column order, and exactly
    // equivariant under power-of-two rescaling of a column.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    OlsFit fit;
    fit.names = names;
    fit.beta = qr.solve(y);
    fit.residuals = y - X * fit.beta;
    fit.observations = static_cast<int>(n);

    const double ssr = fit.residuals.squaredNorm();
    double tss = 0.0;
    if (has_intercept) {
        const double ybar = y.mean();
        tss = (y.array() - ybar).matrix().squaredNorm();
    } else {
        tss = y.squaredNorm();
    }
    if (tss > 0.0) {
        fit.r2 = 1.0 - ssr / tss;
    } else {
        fit.r2 = ssr > 0.0 ? 0.0 : 1.0;  // degenerate constant dependent
    }
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / static_cast<double>(n - k);
    return fit;
}

Eigen::VectorXd hc3_se(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (residuals.size() != n) throw validation_error("hc3_se: residual length mismatch");

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    const Eigen::MatrixXd thin_q =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, k);

    Eigen::VectorXd weights(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double leverage = thin_q.row(i).squaredNorm();
        const double one_minus = 1.0 - leverage;
        if (one_minus <= 1e-12) {
            throw numeric_error("hc3: exact leverage (h=1) at observation " + std::to_string(i));
        }
        const double e = residuals[i];
        weights[i] = e * e / (one_minus * one_minus);
    }

    // (X'X)^-1 X' = R^-1 Q'; sandwich via that factor.
    const Eigen::MatrixXd r_mat =
        qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd bridge =
        r_mat.triangularView<Eigen::Upper>().solve(thin_q.transpose());
    const Eigen::MatrixXd cov = bridge * weights.asDiagonal() * bridge.transpose();
    return cov.diagonal().array().max(0.0).sqrt();
}

std::vector<VifEntry> vif(const Eigen::MatrixXd& X, const std::vector<std::string>& names) {
    const Eigen::Index k = X.cols();
    if (names.size() != static_cast<std::size_t>(k)) {
        throw validation_error("vif: one name per design column required");
    }
    if (k < 3) throw validation_error("vif requires at least 2 non-intercept regressors");

    std::vector<VifEntry> out;
    for (Eigen::Index j = 1; j < k; ++j) {
        Eigen::MatrixXd design(X.rows(), k - 1);
        std::vector<std::string> design_names;
        design.col(0) = X.col(0);
        design_names.push_back(names[0]);
        Eigen::Index col = 1;
        for (Eigen::Index m = 1; m < k; ++m) {
            if (m == j) continue;
            design.col(col++) = X.col(m);
            design_names.push_back(names[static_cast<std::size_t>(m)]);
        }
        auto fit = ols(design, X.col(j), design_names, /*has_intercept=*/true);
        const double remainder = 1.0 - fit.r2;
        if (remainder <= 1e-12) {
            throw numeric_error("singular design: column '" + names[static_cast<std::size_t>(j)] +
                                "' is collinear with the other regressors (infinite VIF)");
        }
        VifEntry entry;
        entry.name = names[static_cast<std::size_t>(j)];
        entry.value = 1.0 / remainder;
        entry.flagged = entry.value > 10.0;
        out.push_back(entry);
    }
    return out;
}

PacfResult pacf(std::span<const double> series, int max_lag) {
    const std::size_t n = series.size();
    if (max_lag < 1) throw validation_error("pacf: max_lag must be >= 1");
    if (n <= static_cast<std::size_t>(max_lag) + 1) {
        throw validation_error("pacf: series too short for max_lag");
    }
    PacfResult result;
    result.band = 1.96 / std::sqrt(static_cast<double>(n));
    for (int k = 1; k <= max_lag; ++k) {
        const std::size_t rows = n - static_cast<std::size_t>(k);
        Eigen::MatrixXd X(rows, k + 1);
        Eigen::VectorXd y(rows);
        std::vector<std::string> names{"const"};
        for (int j = 1; j <= k; ++j) names.push_back("lag" + std::to_string(j));
        for (std::size_t i = 0; i < rows; ++i) {
            y[static_cast<Eigen::Index>(i)] = series[i + static_cast<std::size_t>(k)];
            X(static_cast<Eigen::Index>(i), 0) = 1.0;
            for (int j = 1; j <= k; ++j) {
                X(static_cast<Eigen::Index>(i), j) =
                    series[i + static_cast<std::size_t>(k - j)];
            }
        }
        auto fit = ols(X, y, names, /*has_intercept=*/true);
        result.values.push_back(fit.beta[k]);
    }
    return result;
}

int select_lags(const PacfResult& pacf_result, int cap) {
    const int upto = std::min<int>(cap, static_cast<int>(pacf_result.values.size()));
    for (int k = upto; k >= 1; --k) {
        if (std::fabs(pacf_result.values[static_cast<std::size_t>(k - 1)]) > pacf_result.band) {
            return k;
        }
    }
    return 0;
}

std::string significance_stars(double p_value) {
    if (p_value < 0.0 || p_value > 1.0) throw validation_error("p-value outside [0,1]");
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.1) return "*";
    return "";
}

namespace {

struct Design {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    std::vector<std::string> names;
};

Design build_design(const Panel& panel, const RegressionSpec& spec) {
    if (spec.lags < 0 || spec.lags > 6) throw validation_error("regression lags outside 0..6");
    const auto& dependent = panel.column(spec.dependent);
    const std::size_t n = dependent.size();
    const std::size_t lags = static_cast<std::size_t>(spec.lags);
    const std::size_t k = (spec.include_intercept ? 1 : 0) + spec.regressors.size() + lags;
    if (n < lags + k + 2) {
        throw numeric_error("regression on '" + spec.dependent + "': too few rows after lagging");
    }
    const std::size_t m = n - lags;

    Design d;
    d.x.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
    d.y.resize(static_cast<Eigen::Index>(m));
    Eigen::Index col = 0;
    if (spec.include_intercept) {
        d.x.col(col++).setOnes();
        d.names.push_back("const");
    }
    for (const auto& name : spec.regressors) {
        const auto& values = panel.column(name);
        for (std::size_t i = 0; i < m; ++i) {
            d.x(static_cast<Eigen::Index>(i), col) = values[i + lags];
        }
        d.names.push_back(name);
        ++col;
    }
    for (std::size_t lag = 1; lag <= lags; ++lag) {
        for (std::size_t i = 0; i < m; ++i) {
            d.x(static_cast<Eigen::Index>(i), col) = dependent[i + lags - lag];
        }
        d.names.push_back("shift" + std::to_string(lag));
        ++col;
    }
    for (std::size_t i = 0; i < m; ++i) {
        d.y[static_cast<Eigen::Index>(i)] = dependent[i + lags];
    }
    return d;
}

void attach_metadata(RegressionResult& result, const Panel& panel) {
    for (const auto& [key, value] : panel.metadata) {
        if (key.find(".standardized") != std::string::npos) {
            result.metadata.push_back(key + ": " + value);
        }
    }
}

}  // namespace

const std::vector<std::string>& macro_regressors() {
    static const std::vector<std::string> cols{kColDelta, kColSigmaMonthly, kColSigmaChange,
                                               kColMarketCap, kColVolume};
    return cols;
}

RegressionResult run_regression(const Panel& panel, const RegressionSpec& spec,
                                const std::string& label) {
    auto design = build_design(panel, spec);
    auto fit = ols(design.x, design.y, design.names, spec.include_intercept);
    const Eigen::VectorXd se = hc3_se(design.x, fit.residuals);
    const double dof =
        static_cast<double>(fit.observations) - static_cast<double>(design.x.cols());

    RegressionResult result;
    result.label = label;
    result.r2 = fit.r2;
    result.adj_r2 = fit.adj_r2;
    result.observations = fit.observations;
    result.residuals.assign(fit.residuals.data(), fit.residuals.data() + fit.residuals.size());
    for (Eigen::Index i = 0; i < design.x.cols(); ++i) {
        Coefficient c;
        c.name = design.names[static_cast<std::size_t>(i)];
        c.coef = fit.beta[i];
        c.se = se[i];
        c.t = t_statistic(c.coef, c.se);
        c.p = c.se > 0.0 ? p_of(c.t, dof) : (c.coef == 0.0 ? 1.0 : 0.0);
        c.stars = significance_stars(c.p);
        result.coefficients.push_back(std::move(c));
    }
    // Multicollinearity diagnostic over the intercept + regressor block; lag
    // columns are autocorrelated by construction and stay out of the check.
    if (spec.include_intercept && spec.regressors.size() >= 2) {
        const Eigen::Index macro_cols = static_cast<Eigen::Index>(spec.regressors.size()) + 1;
        result.vif = vif(design.x.leftCols(macro_cols),
                         std::vector<std::string>(design.names.begin(),
                                                  design.names.begin() + macro_cols));
    }
    attach_metadata(result, panel);
    return result;
}

RegressionResult excess_regression(const Panel& panel, const std::string& token_label) {
    RegressionSpec spec;
    spec.dependent = kColExcess;
    spec.regressors = macro_regressors();
    return run_regression(panel, spec, token_label);
}

RegressionResult premium_regression(const Panel& panel, const std::string& token_label, int lags) {
    RegressionSpec spec;
    spec.dependent = kColPremium;
    spec.regressors = macro_regressors();
    spec.lags = lags;
    return run_regression(panel, spec, token_label);
}

}  // namespace lst
