#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lst/dates.hpp"

namespace lst {

// Annual reward rate source: either a flat rate or a dated step curve
// (each rate holds until the next dated point; querying before the first
// point is a coverage error). Stepped curves carry an anchor date mapping
// simulation day 0 onto the calendar; by default the anchor is the first
// curve date.
class RateCurve {
public:
    static RateCurve flat(double annual_rate);
    static RateCurve stepped(std::vector<std::pair<Date, double>> points);

    bool is_flat() const { return flat_.has_value(); }
    double annual_rate_on(Date d) const;
    double annual_rate_on_day(int day) const;

    Date anchor() const { return anchor_; }
    void set_anchor(Date d) { anchor_ = d; }

    const std::vector<std::pair<Date, double>>& points() const { return points_; }

private:
    std::optional<double> flat_;
    std::vector<std::pair<Date, double>> points_;
    Date anchor_;
};

inline constexpr int kInfiniteLockup = -1;

struct SlashingModel {
    double probability{0.0};  // per validator-day
    double penalty{0.0};      // fraction of stake lost per event
};

struct ChainProfile {
    std::string name;
    RateCurve reward_rate{RateCurve::flat(0.0)};
    int lockup_days{0};  // kInfiniteLockup = unstaking unsupported
    SlashingModel slashing;
    std::optional<double> adj_reward;  // informational only, never used in computation

    bool lockup_infinite() const { return lockup_days == kInfiniteLockup; }
    double annual_rate_on_day(int day) const { return reward_rate.annual_rate_on_day(day); }

    void validate() const;

    // Plain-text key/value schema: name, reward_rate or rate_curve (CSV path),
    // lockup_days (integer or "infinite"), slashing.probability, slashing.penalty,
    // optional adj_reward and start_date (curve anchor).
    static ChainProfile load(const std::string& path);
    static ChainProfile from_config(const class KeyValueConfig& cfg, const std::string& prefix = "");
};

struct PendingUnstake {
    double amount{0.0};
    int release_day{0};
};

struct StakingPosition {
    double staked{0.0};
    std::vector<PendingUnstake> pending;
    int day{0};
};

// Geometric daily rate: compounding it over 365 days reproduces the annual
// rate exactly.
double daily_rate(double annual_rate);

// One day of reward accrual followed by the day advancing.
StakingPosition accrue(StakingPosition position, const ChainProfile& profile);

// Moves `amount` out of the staked balance into the pending queue, releasing
// after the chain's lockup. Pending amounts no longer accrue.
StakingPosition request_unstake(StakingPosition position, double amount, const ChainProfile& profile);

// Releases every pending entry due at the current day; returns the sum released.
std::pair<StakingPosition, double> process_releases(StakingPosition position);

// Applies a slashing penalty to the staked balance; returns the loss.
std::pair<StakingPosition, double> slash(StakingPosition position, double penalty);

// Two-column CSV `date,annual_rate`, ISO dates, strictly increasing.
RateCurve load_rate_curve_csv(const std::string& path);

}  // namespace lst
