#include "lst/chain.hpp"

#include <algorithm>
#include <cmath>

#include "lst/config.hpp"
#include "lst/csv.hpp"
#include "lst/errors.hpp"

namespace lst {

RateCurve RateCurve::flat(double annual_rate) {
    RateCurve c;
    c.flat_ = annual_rate;
    return c;
}

RateCurve RateCurve::stepped(std::vector<std::pair<Date, double>> points) {
    if (points.empty()) throw data_error("rate curve has no points");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i - 1].first < points[i].first)) {
            throw data_error("rate curve dates must be strictly increasing (at " +
                             points[i].first.to_string() + ")");
        }
    }
    RateCurve c;
    c.anchor_ = points.front().first;
    c.points_ = std::move(points);
    return c;
}

double RateCurve::annual_rate_on(Date d) const {
    if (flat_) return *flat_;
    if (d < points_.front().first) {
        throw numeric_error("rate curve does not cover " + d.to_string() +
                            " (starts " + points_.front().first.to_string() + ")");
    }
    auto it = std::upper_bound(points_.begin(), points_.end(), d,
                               [](Date lhs, const auto& p) { return lhs < p.first; });
    return std::prev(it)->second;
}

double RateCurve::annual_rate_on_day(int day) const {
    if (flat_) return *flat_;
    return annual_rate_on(anchor_ + day);
}

void ChainProfile::validate() const {
    auto check_rate = [&](double r) {
        if (r < 0.0 || r >= 1.0) {
            throw validation_error("chain '" + name + "': reward rate outside [0,1)");
        }
    };
    if (reward_rate.is_flat()) {
        check_rate(reward_rate.annual_rate_on_day(0));
    } else {
        for (const auto& [date, rate] : reward_rate.points()) {
            (void)date;
            check_rate(rate);
        }
    }
    if (lockup_days < 0 && lockup_days != kInfiniteLockup) {
        throw validation_error("chain '" + name + "': lockup_days must be >= 0 or infinite");
    }
    if (slashing.probability < 0.0 || slashing.probability > 1.0) {
        throw validation_error("chain '" + name + "': slashing probability outside [0,1]");
    }
    if (slashing.penalty < 0.0 || slashing.penalty > 1.0) {
        throw validation_error("chain '" + name + "': slashing penalty outside [0,1]");
    }
}

double daily_rate(double annual_rate) {
    if (annual_rate < 0.0 || annual_rate >= 1.0) {
        throw validation_error("annual rate outside [0,1)");
    }
    return std::pow(1.0 + annual_rate, 1.0 / 365.0) - 1.0;
}

StakingPosition accrue(StakingPosition position, const ChainProfile& profile) {
    const double annual = profile.annual_rate_on_day(position.day);
    position.staked *= 1.0 + daily_rate(annual);
    position.day += 1;
    return position;
}

StakingPosition request_unstake(StakingPosition position, double amount, const ChainProfile& profile) {
    if (profile.lockup_infinite()) {
        throw validation_error("chain '" + profile.name + "': unstaking unsupported (infinite lockup)");
    }
    if (!(amount > 0.0)) throw validation_error("unstake amount must be > 0");
    if (amount > position.staked) {
        throw validation_error("unstake amount exceeds staked balance");
    }
    position.staked -= amount;
    position.pending.push_back({amount, position.day + profile.lockup_days});
    return position;
}

std::pair<StakingPosition, double> process_releases(StakingPosition position) {
    double released = 0.0;
    auto& pending = position.pending;
    for (auto it = pending.begin(); it != pending.end();) {
        if (it->release_day <= position.day) {
            released += it->amount;
            it = pending.erase(it);
        } else {
            ++it;
        }
    }
    return {std::move(position), released};
}

std::pair<StakingPosition, double> slash(StakingPosition position, double penalty) {
    if (penalty < 0.0 || penalty > 1.0) throw validation_error("slash penalty outside [0,1]");
    const double loss = position.staked * penalty;
    position.staked -= loss;
    return {std::move(position), loss};
}

RateCurve load_rate_curve_csv(const std::string& path) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw data_error(path + ": empty rate-curve file");
    std::size_t start = 0;
    if (!rows[0].fields.empty() && rows[0].fields[0] == "date") start = 1;  // optional header
    std::vector<std::pair<Date, double>> points;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::string ctx = path + ":" + std::to_string(row.line_number);
        if (row.fields.size() != 2) throw data_error(ctx + ": expected 'date,annual_rate'");
        auto date = Date::parse(row.fields[0]);
        if (!date) throw data_error(ctx + ": bad date '" + row.fields[0] + "'");
        points.emplace_back(*date, csv::parse_double(row.fields[1], ctx));
    }
    if (points.empty()) throw data_error(path + ": rate-curve file has no data rows");
    return RateCurve::stepped(std::move(points));
}

ChainProfile ChainProfile::from_config(const KeyValueConfig& cfg, const std::string& prefix) {
    ChainProfile p;
    p.name = cfg.require_string(prefix + "name");

    const bool has_flat = cfg.has(prefix + "reward_rate");
    const bool has_curve = cfg.has(prefix + "rate_curve");
    if (has_flat == has_curve) {
        throw config_error(cfg.origin() + ": exactly one of " + prefix + "reward_rate / " +
                           prefix + "rate_curve required");
    }
    if (has_flat) {
        p.reward_rate = RateCurve::flat(cfg.require_double(prefix + "reward_rate"));
    } else {
        p.reward_rate = load_rate_curve_csv(cfg.require_string(prefix + "rate_curve"));
    }
    if (auto start = cfg.get_string(prefix + "start_date")) {
        auto d = Date::parse(*start);
        if (!d) throw config_error(cfg.origin() + ": bad " + prefix + "start_date '" + *start + "'");
        p.reward_rate.set_anchor(*d);
    }

    const std::string lockup = cfg.require_string(prefix + "lockup_days");
    if (lockup == "infinite") {
        p.lockup_days = kInfiniteLockup;
    } else {
        p.lockup_days = static_cast<int>(cfg.require_long(prefix + "lockup_days"));
    }

    if (auto v = cfg.get_double(prefix + "slashing.probability")) p.slashing.probability = *v;
    if (auto v = cfg.get_double(prefix + "slashing.penalty")) p.slashing.penalty = *v;
    if (auto v = cfg.get_double(prefix + "adj_reward")) p.adj_reward = *v;

    p.validate();
    return p;
}

ChainProfile ChainProfile::load(const std::string& path) {
    return from_config(KeyValueConfig::parse_file(path));
}

}  // namespace lst
