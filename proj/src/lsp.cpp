#include "lst/lsp.hpp"

#include <ostream>

#include "lst/config.hpp"
#include "lst/csv.hpp"
#include "lst/errors.hpp"

namespace lst {

TokenModel parse_token_model(const std::string& s) {
    if (s == "rebase") return TokenModel::kRebase;
    if (s == "reward") return TokenModel::kReward;
    if (s == "dual") return TokenModel::kDual;
    throw config_error("unknown token model '" + s + "' (rebase | reward | dual)");
}

ValidatorSelection parse_validator_selection(const std::string& s) {
    if (s == "whitelist") return ValidatorSelection::kWhitelist;
    if (s == "credential") return ValidatorSelection::kCredential;
    if (s == "collateral") return ValidatorSelection::kCollateral;
    throw config_error("unknown validator selection '" + s + "' (whitelist | credential | collateral)");
}

std::string to_string(TokenModel m) {
    switch (m) {
        case TokenModel::kRebase: return "rebase";
        case TokenModel::kReward: return "reward";
        case TokenModel::kDual: return "dual";
    }
    return "?";
}

std::string to_string(ValidatorSelection s) {
    switch (s) {
        case ValidatorSelection::kWhitelist: return "whitelist";
        case ValidatorSelection::kCredential: return "credential";
        case ValidatorSelection::kCollateral: return "collateral";
    }
    return "?";
}

void LspConfig::validate() const {
    if (fee < 0.0 || fee > 1.0) throw validation_error("lsp fee outside [0,1]");
    if (collateral_ratio < 0.0 || collateral_ratio > 1.0) {
        throw validation_error("collateral_ratio outside [0,1]");
    }
    if (validator_selection == ValidatorSelection::kCollateral && !(collateral_ratio > 0.0)) {
        throw validation_error("collateral selection requires collateral_ratio > 0");
    }
}

LspConfig LspConfig::from_config(const KeyValueConfig& cfg, const std::string& prefix) {
    LspConfig c;
    if (auto v = cfg.get_string(prefix + "model")) c.model = parse_token_model(*v);
    if (auto v = cfg.get_double(prefix + "fee")) c.fee = *v;
    if (auto v = cfg.get_bool(prefix + "include_mev")) c.include_mev = *v;
    if (auto v = cfg.get_bool(prefix + "fee_on_mev")) c.fee_on_mev = *v;
    if (auto v = cfg.get_string(prefix + "validator_selection")) {
        c.validator_selection = parse_validator_selection(*v);
    }
    if (auto v = cfg.get_double(prefix + "collateral_ratio")) c.collateral_ratio = *v;
    c.validate();
    return c;
}

LspConfig LspConfig::load(const std::string& path) {
    return from_config(KeyValueConfig::parse_file(path));
}

double fair_value(const LspState& state) {
    if (!(state.supply > 0.0)) throw numeric_error("fair value undefined: supply is zero");
    return (state.reserves - state.reward_supply) / state.supply;
}

MintResult mint(LspState state, double native_in) {
    if (!(native_in > 0.0)) throw validation_error("mint requires a positive deposit");
    const double fv = state.supply > 0.0 ? fair_value(state) : 1.0;
    if (!(fv > 0.0)) {
        throw numeric_error("mint into an insolvent protocol (fair value is zero)");
    }
    MintResult r;
    r.lst_out = native_in / fv;
    state.reserves += native_in;
    state.supply += r.lst_out;
    r.state = state;
    return r;
}

BurnResult burn(LspState state, double lst_in, const ChainProfile& chain) {
    if (chain.lockup_infinite()) {
        throw validation_error("redemption unsupported: chain '" + chain.name + "' has infinite lockup");
    }
    if (!(lst_in > 0.0)) throw validation_error("burn requires a positive amount");
    if (lst_in > state.supply) throw validation_error("burn amount exceeds supply");
    const double fv = fair_value(state);
    BurnResult r;
    r.native_out = lst_in * fv;
    state.supply -= lst_in;
    state.reserves -= r.native_out;
    r.state = state;
    return r;
}

double fee_amount(const LspConfig& config, double gross_reward, double mev_reward) {
    const double mev = config.include_mev ? mev_reward : 0.0;
    if (config.fee_on_mev) return (gross_reward + mev) * config.fee;
    return gross_reward * config.fee;
}

LspState distribute_rewards(LspState state, const LspConfig& config, double gross_reward,
                            double mev_reward) {
    if (gross_reward < 0.0 || mev_reward < 0.0) {
        throw validation_error("rewards must be non-negative");
    }
    const double mev = config.include_mev ? mev_reward : 0.0;
    const double fee = fee_amount(config, gross_reward, mev_reward);
    const double net = gross_reward + mev - fee;
    state.treasury += fee;
    switch (config.model) {
        case TokenModel::kRebase:
            state.reserves += net;
            state.supply += net;
            break;
        case TokenModel::kReward:
            state.reserves += net;
            break;
        case TokenModel::kDual:
            state.reserves += net;
            state.reward_supply += net;
            break;
    }
    return state;
}

LspState apply_slashing_loss(LspState state, const LspConfig& config, double loss) {
    if (loss < 0.0) throw validation_error("slashing loss must be non-negative");
    double remaining = loss;
    if (config.validator_selection == ValidatorSelection::kCollateral) {
        const double absorbed = std::min(state.collateral, remaining);
        state.collateral -= absorbed;
        remaining -= absorbed;
    }
    if (remaining > state.reserves) {
        state.reserves = 0.0;
        state.shortfall = true;
    } else {
        state.reserves -= remaining;
    }
    return state;
}

std::pair<double, LspState> redeem_reward_tokens(LspState state, double reward_in) {
    if (!(reward_in > 0.0)) throw validation_error("redeem requires a positive amount");
    if (reward_in > state.reward_supply) {
        throw validation_error("redeem amount exceeds reward token supply");
    }
    state.reward_supply -= reward_in;
    state.reserves -= reward_in;
    return {reward_in, state};
}

void write_state_csv_header(std::ostream& out) {
    out << "day,reserves,supply,reward_supply,collateral,treasury,fair_value\n";
}

void write_state_csv_row(std::ostream& out, int day, const LspState& state) {
    out << day << ',' << csv::format_double(state.reserves) << ','
        << csv::format_double(state.supply) << ',' << csv::format_double(state.reward_supply)
        << ',' << csv::format_double(state.collateral) << ','
        << csv::format_double(state.treasury) << ','
        << csv::format_double(state.supply > 0.0 ? fair_value(state) : 0.0) << '\n';
}

}  // namespace lst
