#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "lst/market.hpp"

namespace lst {

struct DemandShock {
    int day{0};
    double native_amount{0.0};  // >0 buys LSTs with that much native, <0 sells that much worth
};

struct EventMarker {
    int day{0};
    std::string label;
};

enum class MarketMode { kPool, kExogenous };

struct ArbitrageConfig {
    bool enabled{true};
    double max_trade{std::numeric_limits<double>::infinity()};
    double tolerance{1e-3};
    // The arbitrageur only warehouses redemption-delay risk up to this many
    // days of lockup; beyond it the burn leg is off and discounts persist.
    int lockup_threshold_days{7};
};

struct ScenarioConfig {
    std::uint64_t seed{0};
    int horizon_days{0};
    ChainProfile chain;
    LspConfig lsp;
    double initial_deposit{0.0};
    Pool pool;
    ArbitrageConfig arbitrage;
    std::vector<double> mev_by_day;  // indexed by day (0..horizon); empty = no MEV
    std::vector<DemandShock> shocks;
    std::vector<EventMarker> event_markers;
    MarketMode market_mode{MarketMode::kPool};
    std::vector<double> exogenous_prices;  // day 0..horizon when exogenous

    void validate() const;
    static ScenarioConfig load(const std::string& path);
    static ScenarioConfig from_config(const KeyValueConfig& cfg);
};

struct TraceRow {
    int day{0};
    double fair_value{0.0};
    double market_value{0.0};
    double premium{0.0};  // percentage points, cumulative-index difference
    double lst_return{0.0};
    double staking_return{0.0};
    double excess_return{0.0};
};

struct LspSnapshot {
    int day{0};
    LspState state;
};

struct ScenarioTrace {
    std::vector<TraceRow> rows;  // day 0..horizon
    std::vector<EventMarker> markers;
    std::vector<LspSnapshot> lsp_rows;
    double max_audit_error{0.0};  // worst relative error of the daily value-conservation check
    int slash_events{0};
    int arbitrage_trades{0};
};

// Deterministic day loop: accrue staking on reserves, distribute through the
// protocol, apply scheduled shocks as market orders, run the arbitrageur,
// record the day's row. Identical configs (seed included) produce identical
// traces.
ScenarioTrace run_scenario(const ScenarioConfig& config);

void write_trace_csv(const ScenarioTrace& trace, std::ostream& out);
void write_markers_csv(const ScenarioTrace& trace, std::ostream& out);
void write_lsp_csv(const ScenarioTrace& trace, std::ostream& out);

}  // namespace lst
