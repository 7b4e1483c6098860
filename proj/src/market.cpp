#include "lst/market.hpp"

#include <cmath>

#include "lst/errors.hpp"

namespace lst {

void Pool::validate() const {
    if (!(reserve_native > 0.0) || !(reserve_lst > 0.0)) {
        throw validation_error("pool reserves must be positive");
    }
    if (swap_fee < 0.0 || swap_fee > 0.1) {
        throw validation_error("pool swap fee outside [0, 0.1]");
    }
}

double pool_price(const Pool& pool) {
    pool.validate();
    return pool.reserve_native / pool.reserve_lst;
}

SwapResult swap(Pool pool, SwapSide side, double amount_in) {
    pool.validate();
    if (!(amount_in > 0.0) || !std::isfinite(amount_in)) {
        throw validation_error("swap amount must be positive and finite");
    }
    double& in_reserve = side == SwapSide::kBuyLst ? pool.reserve_native : pool.reserve_lst;
    double& out_reserve = side == SwapSide::kBuyLst ? pool.reserve_lst : pool.reserve_native;

    const double effective_in = amount_in * (1.0 - pool.swap_fee);
    const double amount_out = out_reserve * effective_in / (in_reserve + effective_in);
    if (!(amount_out < out_reserve)) {
        throw validation_error("swap would drain the pool reserve");
    }
    in_reserve += amount_in;  // the fee stays in the pool
    out_reserve -= amount_out;
    return {amount_out, pool};
}

namespace {

// Smaller-magnitude positive root of A*z^2 + B*z + C = 0 with A > 0, B > 0.
// Returns 0 when the root is non-positive (already at/over parity).
double positive_root(double quad, double lin, double constant) {
    const double disc = lin * lin - 4.0 * quad * constant;
    if (disc <= 0.0) return 0.0;
    const double z = (-lin + std::sqrt(disc)) / (2.0 * quad);
    return z > 0.0 ? z : 0.0;
}

}  // namespace

double parity_buy_native(const Pool& pool, double fair) {
    pool.validate();
    if (!(fair > 0.0)) throw validation_error("fair value must be positive");
    const double rn = pool.reserve_native;
    const double k = pool.reserve_native * pool.reserve_lst;
    const double inv = 1.0 / (1.0 - pool.swap_fee);
    // Post-trade marginal price equals fair when
    //   inv*a^2 + rn*(1+inv)*a + rn^2 - fair*k = 0,  a = x*(1-fee).
    const double a = positive_root(inv, rn * (1.0 + inv), rn * rn - fair * k);
    return a * inv;
}

double parity_sell_lst(const Pool& pool, double fair) {
    pool.validate();
    if (!(fair > 0.0)) throw validation_error("fair value must be positive");
    const double rl = pool.reserve_lst;
    const double k = pool.reserve_native * pool.reserve_lst;
    const double inv = 1.0 / (1.0 - pool.swap_fee);
    const double b = positive_root(inv, rl * (1.0 + inv), rl * rl - k / fair);
    return b * inv;
}

ArbitrageStep arbitrage_step(const Pool& pool, double fair, const ArbitrageLimits& limits) {
    if (!(fair > 0.0)) throw validation_error("fair value must be positive");
    if (!(limits.tolerance > 0.0)) throw validation_error("arbitrage tolerance must be positive");

    const double market = pool_price(pool);
    ArbitrageStep step{std::nullopt, pool};

    if (market < fair * (1.0 - limits.tolerance)) {
        // Underpriced: buy LSTs at the market, redeem at the peg. Without a
        // usable burn leg the discount cannot be traded away.
        if (!limits.burn_leg_enabled) return step;
        const double x = std::min(parity_buy_native(pool, fair), limits.max_trade);
        if (!(x > 0.0)) return step;
        auto res = swap(pool, SwapSide::kBuyLst, x);
        step.trade = ArbitrageTrade{TradeSide::kBuyAndBurn, x, res.amount_out};
        step.pool = res.pool;
    } else if (market > fair * (1.0 + limits.tolerance)) {
        // Overpriced: mint at the peg, sell at the market. The native-equivalent
        // cap limits the mint cost (lst * fair).
        const double y = std::min(parity_sell_lst(pool, fair), limits.max_trade / fair);
        if (!(y > 0.0)) return step;
        auto res = swap(pool, SwapSide::kSellLst, y);
        step.trade = ArbitrageTrade{TradeSide::kMintAndSell, y, res.amount_out};
        step.pool = res.pool;
    }
    return step;
}

StrategyResult compounding_strategy(LspState lsp, Pool pool, double native_in,
                                    double lp_incentive_rate) {
    pool.validate();
    if (!(native_in > 0.0)) throw validation_error("strategy requires a positive deposit");

    auto minted = mint(lsp, native_in);
    const double lst_amount = minted.lst_out;

    // Split the single-sided LST deposit: swap s so that the proceeds and the
    // remaining LSTs match the post-swap reserve ratio exactly.
    //   (1-fee)*s^2 + rl*(2-fee)*s - rl*L = 0
    const double rl = pool.reserve_lst;
    const double fee = pool.swap_fee;
    const double disc = rl * rl * (2.0 - fee) * (2.0 - fee) + 4.0 * (1.0 - fee) * rl * lst_amount;
    const double s = (-rl * (2.0 - fee) + std::sqrt(disc)) / (2.0 * (1.0 - fee));

    auto swapped = swap(pool, SwapSide::kSellLst, s);
    const double native_side = swapped.amount_out;
    const double lst_side = lst_amount - s;

    Pool mid = swapped.pool;
    const double fraction_added = lst_side / mid.reserve_lst;
    mid.reserve_native += native_side;
    mid.reserve_lst += lst_side;

    StrategyResult result;
    result.position.lp_share = fraction_added / (1.0 + fraction_added);
    result.position.lp_incentive_rate = lp_incentive_rate;
    result.position.zap = {s, native_side};
    result.lsp = minted.state;
    result.pool = mid;
    return result;
}

double position_value(const StrategyPosition& position, const Pool& pool) {
    const double pool_value = pool.reserve_native + pool.reserve_lst * pool_price(pool);
    return position.lp_share * pool_value * position.incentive_multiplier;
}

StrategyPosition accrue_incentives(StrategyPosition position, int days) {
    if (days < 0) throw validation_error("cannot accrue a negative number of days");
    const double daily = daily_rate(position.lp_incentive_rate);
    position.incentive_multiplier *= std::pow(1.0 + daily, days);
    return position;
}

}  // namespace lst
