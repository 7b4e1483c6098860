#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lst/analytics.hpp"
#include "lst/errors.hpp"

using namespace lst;

namespace {

std::vector<Date> consecutive_dates(const char* start, std::size_t n) {
    std::vector<Date> out;
    Date d = *Date::parse(start);
    for (std::size_t i = 0; i < n; ++i) out.push_back(d + static_cast<int>(i));
    return out;
}

}  // namespace

TEST_CASE("daily returns on adjacent dates") {
    auto dates = consecutive_dates("2022-01-01", 2);
    auto r = daily_returns(dates, std::vector<double>{1.0, 1.01});
    REQUIRE(r.values.size() == 1);
    CHECK(r.values[0] == doctest::Approx(0.01).epsilon(1e-12));

    auto flat = daily_returns(consecutive_dates("2022-01-01", 5),
                              std::vector<double>{2, 2, 2, 2, 2});
    for (double v : flat.values) CHECK(v == 0.0);

    auto drop = daily_returns(consecutive_dates("2022-01-01", 2), std::vector<double>{2.0, 1.0});
    CHECK(drop.values[0] == doctest::Approx(-0.5));

    CHECK_THROWS_AS(daily_returns(consecutive_dates("2022-01-01", 2),
                                  std::vector<double>{1.0, 0.0}),
                    Error);
}

TEST_CASE("gap returns are excluded by default") {
    std::vector<Date> dates{*Date::parse("2022-01-01"), *Date::parse("2022-01-02"),
                            *Date::parse("2022-01-05")};
    auto strict = daily_returns(dates, std::vector<double>{1.0, 1.1, 1.3});
    CHECK(strict.values.size() == 1);
    CHECK(strict.gap_excluded == 1);

    auto loose = daily_returns(dates, std::vector<double>{1.0, 1.1, 1.3}, true);
    CHECK(loose.values.size() == 2);
    CHECK(loose.gap_excluded == 0);
}

TEST_CASE("staking baseline compounds the curve") {
    auto zero = staking_baseline(RateCurve::flat(0.0), 10);
    for (double v : zero) CHECK(v == 1.0);

    auto eth = staking_baseline(RateCurve::flat(0.0482), 365);
    REQUIRE(eth.size() == 366);
    CHECK(eth.back() == doctest::Approx(1.0482).epsilon(1e-9));

    auto d = [](const char* s) { return *Date::parse(s); };
    auto step = RateCurve::stepped({{d("2022-01-01"), 0.0}, {d("2022-01-06"), 0.10}});
    auto idx = staking_baseline(step, 10);
    CHECK(idx[4] == 1.0);   // day 4 = 2022-01-05, still in the zero-rate regime
    CHECK(idx[5] > 1.0);    // day 5 lands on the step date
    CHECK(idx[10] > idx[5]);
}

TEST_CASE("excess returns subtract the baseline") {
    ReturnSeries lst;
    lst.dates = consecutive_dates("2022-01-02", 3);
    lst.values = {0.002, 0.001, -0.003};
    ReturnSeries base;
    base.dates = lst.dates;
    base.values = {0.00013, 0.00013, 0.00013};

    auto xs = excess_returns(lst, base);
    CHECK(xs[0] == doctest::Approx(0.00187).epsilon(1e-12));

    auto zero = excess_returns(lst, lst);
    for (double v : zero) CHECK(v == 0.0);

    ReturnSeries misaligned = base;
    misaligned.dates[1] = misaligned.dates[1] + 100;
    CHECK_THROWS_AS(excess_returns(lst, misaligned), Error);
}

TEST_CASE("excess returns are antisymmetric") {
    ReturnSeries a, b;
    a.dates = b.dates = consecutive_dates("2022-01-01", 4);
    a.values = {0.01, -0.02, 0.004, 0.0};
    b.values = {0.005, 0.001, -0.001, 0.002};
    auto ab = excess_returns(a, b);
    auto ba = excess_returns(b, a);
    for (std::size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == doctest::Approx(-ba[i]));
}

TEST_CASE("premium in percentage points") {
    std::vector<double> lst{1.0, 1.02, 1.05};
    std::vector<double> base{1.0, 1.01, 1.03};
    auto p = premium_series(lst, base);
    CHECK(p[0] == 0.0);
    CHECK(p[2] == doctest::Approx(2.0).epsilon(1e-12));

    auto self = premium_series(base, base);
    for (double v : self) CHECK(v == 0.0);

    std::vector<double> not_rebased{1.01, 1.02};
    CHECK_THROWS_AS(premium_series(not_rebased, base), Error);
}

TEST_CASE("descriptive statistics") {
    auto s = descriptive_stats(std::vector<double>{1, 2, 3});
    CHECK(s.count == 3);
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.median == 2.0);
    CHECK(s.std == doctest::Approx(1.0));
    CHECK(s.min == 1.0);
    CHECK(s.max == 3.0);

    auto single = descriptive_stats(std::vector<double>{4.2});
    CHECK(single.std == 0.0);
    CHECK(single.q25 == 4.2);
    CHECK(single.q75 == 4.2);

    CHECK_THROWS_AS(descriptive_stats(std::vector<double>{}), Error);

    // permutation invariance
    std::vector<double> v{0.4, -1.2, 3.3, 0.0, 2.2, -0.7};
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    auto s1 = descriptive_stats(v);
    auto s2 = descriptive_stats(sorted);
    CHECK(s1.mean == doctest::Approx(s2.mean));
    CHECK(s1.std == doctest::Approx(s2.std));
    CHECK(s1.q25 == doctest::Approx(s2.q25));
    CHECK(s1.median == doctest::Approx(s2.median));
}

TEST_CASE("descriptive stats order: min <= q25 <= median <= q75 <= max") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(547);
    for (auto& x : v) x = u(gen);
    auto s = descriptive_stats(v);
    CHECK(s.count == 547);
    CHECK(s.min <= s.q25);
    CHECK(s.q25 <= s.median);
    CHECK(s.median <= s.q75);
    CHECK(s.q75 <= s.max);
    CHECK(s.std >= 0.0);
}

TEST_CASE("ecdf") {
    auto one = ecdf(std::vector<double>{0.0});
    REQUIRE(one.size() == 1);
    CHECK(one[0].value == 0.0);
    CHECK(one[0].fraction == 1.0);

    auto two = ecdf(std::vector<double>{2.0, 1.0});
    REQUIRE(two.size() == 2);
    CHECK(two[0].value == 1.0);
    CHECK(two[0].fraction == 0.5);
    CHECK(two[1].fraction == 1.0);

    auto dup = ecdf(std::vector<double>{1, 1, 2, 3});
    REQUIRE(dup.size() == 3);
    CHECK(dup[0].fraction == 0.5);

    // non-decreasing, ends at exactly 1
    std::mt19937_64 gen(5);
    std::normal_distribution<double> n(0, 1);
    std::vector<double> v(101);
    for (auto& x : v) x = n(gen);
    auto pts = ecdf(v);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        CHECK(pts[i].fraction > pts[i - 1].fraction);
        CHECK(pts[i].value > pts[i - 1].value);
    }
    CHECK(pts.back().fraction == 1.0);

    // internal consistency with the quantile convention at the median
    std::vector<double> odd{3, 1, 2};
    auto st = descriptive_stats(odd);
    auto ecdf_pts = ecdf(odd);
    auto median_it = std::find_if(ecdf_pts.begin(), ecdf_pts.end(),
                                  [](const EcdfPoint& p) { return p.fraction >= 0.5; });
    CHECK(median_it->value == st.median);
}

TEST_CASE("peg deviation classifies against the band") {
    std::vector<double> market{1.0, 0.98, 1.01};
    std::vector<double> fair{1.0, 1.0, 1.0};
    auto pts = peg_deviation(market, fair, 0.001);
    CHECK(pts[0].deviation == 0.0);
    CHECK(pts[0].cls == PegClass::kAtPeg);
    CHECK(pts[1].deviation == doctest::Approx(-0.02));
    CHECK(pts[1].cls == PegClass::kUnderpriced);
    CHECK(pts[2].deviation == doctest::Approx(0.01));
    CHECK(pts[2].cls == PegClass::kOverpriced);

    std::vector<double> bad_fair{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(peg_deviation(market, bad_fair, 0.001), Error);
}

TEST_CASE("compounding consistency: summed log returns rebuild the price ratio") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> n(0.0, 0.01);
    std::vector<double> prices{1.0};
    for (int i = 0; i < 400; ++i) prices.push_back(prices.back() * std::exp(n(gen)));
    auto r = daily_returns(consecutive_dates("2020-01-01", prices.size()), prices);
    double log_sum = 0.0;
    for (double v : r.values) log_sum += std::log1p(v);
    CHECK(std::exp(log_sum) == doctest::Approx(prices.back() / prices.front()).epsilon(1e-10));
}
