#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "lst/ingest.hpp"

namespace lst {

// Rolling sample standard deviation (n-1) over a trailing window; the first
// window-1 positions are excluded from the output.
std::vector<double> rolling_sigma(std::span<const double> values, int window = 30);

struct OlsFit {
    std::vector<std::string> names;  // per design column
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    double r2{0.0};
    double adj_r2{0.0};
    int observations{0};
};

// Least-squares fit via (unpivoted) Householder QR; rank is checked first with
// a column-pivoted factorization so singular designs fail loudly, naming the
// offending columns. X includes the intercept column when the model has one.
OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           const std::vector<std::string>& names, bool has_intercept = true);

// HC3 standard errors: Var = (X'X)^-1 X' diag(e_i^2/(1-h_ii)^2) X (X'X)^-1.
// A leverage of exactly 1 is an error.
Eigen::VectorXd hc3_se(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals);

struct VifEntry {
    std::string name;
    double value{1.0};
    bool flagged{false};  // value > 10
};

// Variance inflation factors for the non-intercept columns of X (column 0 is
// the intercept). Perfect collinearity raises the singular-design error.
std::vector<VifEntry> vif(const Eigen::MatrixXd& X, const std::vector<std::string>& names);

struct PacfResult {
    std::vector<double> values;  // lag 1..max_lag
    double band{0.0};            // 1.96 / sqrt(n)
};

// Regression-method PACF: PACF(k) is the last coefficient of the OLS fit of
// y_t on an intercept and y_{t-1..t-k}.
PacfResult pacf(std::span<const double> series, int max_lag);

// Largest lag k <= cap with |PACF(k)| outside the band (0 when none). The
// premium model always uses 6 lags; this is reported as a diagnostic.
int select_lags(const PacfResult& pacf_result, int cap = 6);

// Strict thresholds: *** p<0.01, ** p<0.05, * p<0.1.
std::string significance_stars(double p_value);

struct Coefficient {
    std::string name;
    double coef{0.0};
    double se{0.0};
    double t{0.0};
    double p{1.0};
    std::string stars;
};

struct RegressionResult {
    std::string label;  // token identifier for table columns
    std::vector<Coefficient> coefficients;
    double r2{0.0};
    double adj_r2{0.0};
    int observations{0};
    std::vector<VifEntry> vif;
    std::vector<double> residuals;
    std::vector<std::string> metadata;
};

// Canonical panel column names consumed by the regressions below.
inline constexpr const char* kColExcess = "Xs";
inline constexpr const char* kColPremium = "Premium";
inline constexpr const char* kColDelta = "delta_daily";
inline constexpr const char* kColSigmaMonthly = "sigma_monthly";
inline constexpr const char* kColSigmaChange = "sigma_daily_change";
inline constexpr const char* kColMarketCap = "market_cap";
inline constexpr const char* kColVolume = "volume";

// Design description: a dependent panel column, ordered regressor columns,
// and 0..6 lagged copies of the dependent (named shift1..shiftN).
struct RegressionSpec {
    std::string dependent;
    std::vector<std::string> regressors;
    int lags{0};
    bool include_intercept{true};
};

RegressionResult run_regression(const Panel& panel, const RegressionSpec& spec,
                                const std::string& label);

// The five macro regressors of the daily models, in model order.
const std::vector<std::string>& macro_regressors();

// Excess-return model: Xs on the five macro regressors plus intercept, with
// HC3 standard errors and VIF diagnostics.
RegressionResult excess_regression(const Panel& panel, const std::string& token_label);

// Premium model: the same regressors plus `lags` lagged copies of the premium
// (named shift1..shiftN); observations = panel rows - lags.
RegressionResult premium_regression(const Panel& panel, const std::string& token_label,
                                    int lags = 6);

}  // namespace lst
