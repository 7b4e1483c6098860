#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lst/lsp.hpp"

namespace lst {

// Constant-product pool quoting LSTs against the native token. The whole
// input amount enters the reserve; the swap fee is taken on the input when
// computing the output, so fees accrue to the pool.
struct Pool {
    double reserve_native{0.0};
    double reserve_lst{0.0};
    double swap_fee{0.0};  // in [0, 0.1]

    void validate() const;
};

// Marginal price, native per LST.
double pool_price(const Pool& pool);

enum class SwapSide { kBuyLst, kSellLst };

struct SwapResult {
    double amount_out{0.0};
    Pool pool;
};

SwapResult swap(Pool pool, SwapSide side, double amount_in);

struct ArbitrageLimits {
    double max_trade{std::numeric_limits<double>::infinity()};  // native-equivalent cap per step
    double tolerance{1e-3};  // no-trade band around parity, as |market/fair - 1|
    bool burn_leg_enabled{true};  // false models unredeemable LSTs (infinite/long lockup)
};

enum class TradeSide {
    kBuyAndBurn,   // market below fair: buy LSTs in the pool, burn at the protocol
    kMintAndSell,  // market above fair: mint at the protocol, sell into the pool
};

struct ArbitrageTrade {
    TradeSide side{TradeSide::kBuyAndBurn};
    double amount_in{0.0};   // native spent (buy) or LST sold (sell)
    double amount_out{0.0};  // LST bought (buy) or native received (sell)
};

struct ArbitrageStep {
    std::optional<ArbitrageTrade> trade;
    Pool pool;
};

// One parity-seeking step: trades toward market == fair, sized to close the
// gap fully when within max_trade (never overshooting parity), else trades
// max_trade. Whenever a trade executes, |log(market/fair)| strictly shrinks.
ArbitrageStep arbitrage_step(const Pool& pool, double fair, const ArbitrageLimits& limits);

// Exact input that restores marginal price to `fair`, accounting for the swap
// fee. Positive return = native to spend buying LST; for the sell side the
// return is the LST amount to sell. Zero when already at/over parity.
double parity_buy_native(const Pool& pool, double fair);
double parity_sell_lst(const Pool& pool, double fair);

// LP position produced by the compounding strategy: mint LSTs, zap them into
// the pool (split by a swap first, since the deposit is single-sided), and
// stake the LP share at a flat incentive rate.
struct ZapTrade {
    double lst_swapped{0.0};
    double native_received{0.0};
};

struct StrategyPosition {
    double lp_share{0.0};             // fraction of the pool owned
    double incentive_multiplier{1.0}; // grows at the LP incentive rate
    double lp_incentive_rate{0.0};    // annual
    ZapTrade zap;                     // trade log for the split
};

struct StrategyResult {
    StrategyPosition position;
    LspState lsp;
    Pool pool;
};

StrategyResult compounding_strategy(LspState lsp, Pool pool, double native_in,
                                    double lp_incentive_rate = 0.0);

// Position value in native units: LP share of pool value at the marginal
// price, scaled by accrued incentives.
double position_value(const StrategyPosition& position, const Pool& pool);

// Advances the incentive accrual by `days` at the position's flat rate.
StrategyPosition accrue_incentives(StrategyPosition position, int days = 1);

}  // namespace lst
