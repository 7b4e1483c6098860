#include "lst/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lst/config.hpp"
#include "lst/csv.hpp"
#include "lst/errors.hpp"
#include "lst/rng.hpp"

namespace lst {

void ScenarioConfig::validate() const {
    if (horizon_days <= 0) throw config_error("horizon_days must be > 0");
    if (!(arbitrage.tolerance > 0.0)) throw config_error("arbitrage.tolerance must be > 0");
    if (!(initial_deposit > 0.0)) throw config_error("initial_deposit must be > 0");
    chain.validate();
    lsp.validate();
    if (!mev_by_day.empty() && mev_by_day.size() != static_cast<std::size_t>(horizon_days) + 1) {
        throw config_error("mev stream must cover days 0.." + std::to_string(horizon_days));
    }
    for (const auto& s : shocks) {
        if (s.day < 1 || s.day > horizon_days) {
            throw config_error("shock day " + std::to_string(s.day) + " outside 1..horizon");
        }
        if (s.native_amount == 0.0) throw config_error("shock amount must be nonzero");
    }
    if (market_mode == MarketMode::kPool) {
        pool.validate();
        // The pool's LST side is provided out of the initial deposit; anything
        // else would leave tokens in circulation the protocol never minted.
        if (pool.reserve_lst > initial_deposit) {
            throw config_error("pool.lst exceeds initial_deposit (unminted LSTs)");
        }
    } else {
        if (exogenous_prices.size() != static_cast<std::size_t>(horizon_days) + 1) {
            throw config_error("exogenous prices must cover days 0.." + std::to_string(horizon_days));
        }
        for (double p : exogenous_prices) {
            if (!(p > 0.0)) throw config_error("exogenous prices must be positive");
        }
        if (arbitrage.enabled) {
            throw config_error("arbitrage cannot run against an exogenous price series");
        }
        if (!shocks.empty()) {
            throw config_error("demand shocks require the pool market mode");
        }
    }
}

namespace {

std::vector<double> load_day_value_csv(const std::string& path, int horizon,
                                       const char* what) {
    std::vector<double> out(static_cast<std::size_t>(horizon) + 1, 0.0);
    auto rows = csv::read_file(path);
    std::size_t start = 0;
    if (!rows.empty() && !rows[0].fields.empty() && rows[0].fields[0] == "day") start = 1;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::string ctx = path + ":" + std::to_string(row.line_number);
        if (row.fields.size() != 2) throw data_error(ctx + ": expected 'day,value'");
        const long day = csv::parse_long(row.fields[0], ctx);
        if (day < 0 || day > horizon) {
            throw data_error(ctx + ": " + std::string(what) + " day outside 0..horizon");
        }
        out[static_cast<std::size_t>(day)] = csv::parse_double(row.fields[1], ctx);
    }
    return out;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_config(const KeyValueConfig& cfg) {
    ScenarioConfig sc;
    if (auto v = cfg.get_long("seed")) sc.seed = static_cast<std::uint64_t>(*v);
    sc.horizon_days = static_cast<int>(cfg.require_long("horizon_days"));

    if (auto path = cfg.get_string("chain.config")) {
        sc.chain = ChainProfile::load(*path);
    } else {
        sc.chain = ChainProfile::from_config(cfg, "chain.");
    }
    if (auto path = cfg.get_string("lsp.config")) {
        sc.lsp = LspConfig::load(*path);
    } else {
        sc.lsp = LspConfig::from_config(cfg, "lsp.");
    }

    sc.initial_deposit = cfg.require_double("initial_deposit");

    const std::string mode = cfg.get_string("market.mode").value_or("pool");
    if (mode == "pool") {
        sc.market_mode = MarketMode::kPool;
        sc.pool.reserve_native = cfg.require_double("pool.native");
        sc.pool.reserve_lst = cfg.require_double("pool.lst");
        sc.pool.swap_fee = cfg.get_double("pool.swap_fee").value_or(0.0);
    } else if (mode == "exogenous") {
        sc.market_mode = MarketMode::kExogenous;
        sc.exogenous_prices = load_day_value_csv(cfg.require_string("market.prices_file"),
                                                 sc.horizon_days, "price");
    } else {
        throw config_error(cfg.origin() + ": market.mode must be pool or exogenous");
    }

    sc.arbitrage.enabled = cfg.get_bool("arbitrage.enabled").value_or(sc.market_mode == MarketMode::kPool);
    if (auto v = cfg.get_double("arbitrage.max_trade")) sc.arbitrage.max_trade = *v;
    if (auto v = cfg.get_double("arbitrage.tolerance")) sc.arbitrage.tolerance = *v;
    if (auto v = cfg.get_long("arbitrage.lockup_threshold_days")) {
        sc.arbitrage.lockup_threshold_days = static_cast<int>(*v);
    }

    if (auto v = cfg.get_string("mev.stream_file")) {
        sc.mev_by_day = load_day_value_csv(*v, sc.horizon_days, "mev");
    } else if (auto amount = cfg.get_double("mev.amount_per_day")) {
        sc.mev_by_day.assign(static_cast<std::size_t>(sc.horizon_days) + 1, *amount);
        sc.mev_by_day[0] = 0.0;
    }

    for (const auto& [day_text, value] : cfg.entries_with_prefix("shock.")) {
        DemandShock s;
        s.day = static_cast<int>(csv::parse_long(day_text, cfg.origin() + ": shock day"));
        s.native_amount = csv::parse_double(value, cfg.origin() + ": shock amount");
        sc.shocks.push_back(s);
    }
    for (const auto& [day_text, label] : cfg.entries_with_prefix("marker.")) {
        EventMarker m;
        m.day = static_cast<int>(csv::parse_long(day_text, cfg.origin() + ": marker day"));
        m.label = label;
        sc.event_markers.push_back(m);
    }

    sc.validate();
    return sc;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    return from_config(KeyValueConfig::parse_file(path));
}

namespace {

// Balance sheet of everyone outside the protocol, valued at fair. The daily
// conservation check: this total only moves by rewards in, included MEV in,
// and slashing losses out.
struct Accounts {
    double depositor_lst{0.0};
    double depositor_reward_tokens{0.0};
    double pool_reward_tokens{0.0};
    double arb_cash{0.0};
    double arb_lst{0.0};
    double arb_reward_tokens{0.0};
    std::vector<PendingUnstake> arb_pending;
    double shock_cash{0.0};
    double shock_lst{0.0};
    double shock_reward_tokens{0.0};
};

double total_wealth(const Accounts& a, const Pool& pool, const LspState& lsp, bool pool_mode) {
    const double fair = fair_value(lsp);
    double w = a.depositor_lst * fair + a.depositor_reward_tokens + a.pool_reward_tokens +
               a.arb_cash + a.arb_lst * fair + a.arb_reward_tokens + a.shock_cash +
               a.shock_lst * fair + a.shock_reward_tokens + lsp.treasury + lsp.collateral;
    for (const auto& p : a.arb_pending) w += p.amount;
    if (pool_mode) w += pool.reserve_native + pool.reserve_lst * fair;
    return w;
}

}  // namespace

ScenarioTrace run_scenario(const ScenarioConfig& config) {
    config.validate();
    const bool pool_mode = config.market_mode == MarketMode::kPool;

    Rng rng(config.seed);
    ScenarioTrace trace;
    trace.markers = config.event_markers;

    // Bootstrap: the depositor mints the whole initial deposit and seeds the
    // pool's LST side from it.
    LspState lsp = mint(LspState{}, config.initial_deposit).state;
    if (config.lsp.validator_selection == ValidatorSelection::kCollateral) {
        lsp.collateral = config.lsp.collateral_ratio * lsp.reserves;
    }
    Pool pool = config.pool;

    Accounts acc;
    acc.depositor_lst = config.initial_deposit - (pool_mode ? pool.reserve_lst : 0.0);

    const double market0 = pool_mode ? pool_price(pool) : config.exogenous_prices[0];
    double baseline_index = 1.0;
    double prev_market = market0;

    trace.rows.push_back(TraceRow{0, fair_value(lsp), market0, 0.0, 0.0, 0.0, 0.0});
    trace.lsp_rows.push_back(LspSnapshot{0, lsp});

    double expected_wealth = total_wealth(acc, pool, lsp, pool_mode);

    for (int day = 1; day <= config.horizon_days; ++day) {
        // Staking rewards on start-of-day reserves, claimed and re-staked.
        const double annual = config.chain.annual_rate_on_day(day);
        const double day_rate = daily_rate(annual);
        const double gross = lsp.reserves * day_rate;
        const double mev = config.mev_by_day.empty() ? 0.0
                                                     : config.mev_by_day[static_cast<std::size_t>(day)];

        const double supply_before = lsp.supply;
        const double reward_supply_before = lsp.reward_supply;
        lsp = distribute_rewards(lsp, config.lsp, gross, mev);

        if (config.lsp.model == TokenModel::kRebase && supply_before > 0.0) {
            // Rebase scales every holder balance, pool reserves included.
            const double growth = lsp.supply / supply_before;
            if (pool_mode) pool.reserve_lst *= growth;
            acc.depositor_lst *= growth;
            acc.arb_lst *= growth;
            acc.shock_lst *= growth;
        } else if (config.lsp.model == TokenModel::kDual) {
            // Reward tokens are credited pro-rata to principal holders.
            const double minted = lsp.reward_supply - reward_supply_before;
            if (minted > 0.0 && supply_before > 0.0) {
                acc.pool_reward_tokens += minted * (pool_mode ? pool.reserve_lst : 0.0) / supply_before;
                acc.depositor_reward_tokens += minted * acc.depositor_lst / supply_before;
                acc.arb_reward_tokens += minted * acc.arb_lst / supply_before;
                acc.shock_reward_tokens += minted * acc.shock_lst / supply_before;
            }
        }

        // Seeded slashing: one Bernoulli draw per day when the chain models it.
        double slash_removed = 0.0;
        if (config.chain.slashing.probability > 0.0 &&
            rng.bernoulli(config.chain.slashing.probability)) {
            const double loss = lsp.reserves * config.chain.slashing.penalty;
            const double before = lsp.reserves + lsp.collateral;
            lsp = apply_slashing_loss(lsp, config.lsp, loss);
            slash_removed = before - (lsp.reserves + lsp.collateral);
            ++trace.slash_events;
        }

        if (pool_mode) {
            for (const auto& shock : config.shocks) {
                if (shock.day != day) continue;
                if (shock.native_amount > 0.0) {
                    auto res = swap(pool, SwapSide::kBuyLst, shock.native_amount);
                    acc.shock_cash -= shock.native_amount;
                    acc.shock_lst += res.amount_out;
                    pool = res.pool;
                } else {
                    const double lst_in = -shock.native_amount / pool_price(pool);
                    auto res = swap(pool, SwapSide::kSellLst, lst_in);
                    acc.shock_lst -= lst_in;
                    acc.shock_cash += res.amount_out;
                    pool = res.pool;
                }
            }

            if (config.arbitrage.enabled) {
                ArbitrageLimits limits;
                limits.max_trade = config.arbitrage.max_trade;
                limits.tolerance = config.arbitrage.tolerance;
                limits.burn_leg_enabled =
                    !config.chain.lockup_infinite() &&
                    config.chain.lockup_days <= config.arbitrage.lockup_threshold_days;

                const double fair = fair_value(lsp);
                auto step = arbitrage_step(pool, fair, limits);
                if (step.trade) {
                    pool = step.pool;
                    const auto& trade = *step.trade;
                    if (trade.side == TradeSide::kBuyAndBurn) {
                        acc.arb_cash -= trade.amount_in;
                        auto burned = burn(lsp, trade.amount_out, config.chain);
                        lsp = burned.state;
                        if (config.chain.lockup_days == 0) {
                            acc.arb_cash += burned.native_out;
                        } else {
                            acc.arb_pending.push_back(
                                {burned.native_out, day + config.chain.lockup_days});
                        }
                    } else {
                        const double mint_cost = trade.amount_in * fair;
                        auto minted = mint(lsp, mint_cost);
                        lsp = minted.state;
                        acc.arb_cash -= mint_cost;
                        acc.arb_lst += minted.lst_out - trade.amount_in;  // rounding residue
                        acc.arb_cash += trade.amount_out;
                    }
                    ++trace.arbitrage_trades;
                }
            }
        }

        // Release matured unstakes to the arbitrageur.
        for (auto it = acc.arb_pending.begin(); it != acc.arb_pending.end();) {
            if (it->release_day <= day) {
                acc.arb_cash += it->amount;
                it = acc.arb_pending.erase(it);
            } else {
                ++it;
            }
        }

        const double market = pool_mode ? pool_price(pool)
                                        : config.exogenous_prices[static_cast<std::size_t>(day)];
        baseline_index *= 1.0 + day_rate;
        const double lst_index = market / market0;

        TraceRow row;
        row.day = day;
        row.fair_value = fair_value(lsp);
        row.market_value = market;
        row.premium = 100.0 * (lst_index - baseline_index);
        row.lst_return = market / prev_market - 1.0;
        row.staking_return = day_rate;
        row.excess_return = row.lst_return - row.staking_return;
        trace.rows.push_back(row);
        trace.lsp_rows.push_back(LspSnapshot{day, lsp});
        prev_market = market;

        const double mev_included = config.lsp.include_mev ? mev : 0.0;
        expected_wealth += gross + mev_included - slash_removed;
        const double actual = total_wealth(acc, pool, lsp, pool_mode);
        const double err = std::fabs(actual - expected_wealth) /
                           std::max(1.0, std::fabs(expected_wealth));
        trace.max_audit_error = std::max(trace.max_audit_error, err);
    }

    return trace;
}

void write_trace_csv(const ScenarioTrace& trace, std::ostream& out) {
    out << "day,fair_value,market_value,premium,lst_return,staking_return,excess_return\n";
    for (const auto& r : trace.rows) {
        out << r.day << ',' << csv::format_double(r.fair_value) << ','
            << csv::format_double(r.market_value) << ',' << csv::format_double(r.premium) << ','
            << csv::format_double(r.lst_return) << ',' << csv::format_double(r.staking_return)
            << ',' << csv::format_double(r.excess_return) << '\n';
    }
}

void write_markers_csv(const ScenarioTrace& trace, std::ostream& out) {
    out << "day,label\n";
    for (const auto& m : trace.markers) out << m.day << ',' << m.label << '\n';
}

void write_lsp_csv(const ScenarioTrace& trace, std::ostream& out) {
    write_state_csv_header(out);
    for (const auto& s : trace.lsp_rows) write_state_csv_row(out, s.day, s.state);
}

}  // namespace lst
