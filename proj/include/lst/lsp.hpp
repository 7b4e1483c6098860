#pragma once

#include <iosfwd>
#include <string>

#include "lst/chain.hpp"

namespace lst {

// Reward distribution models.
//   Rebase: supply inflates with rewards, per-token value pinned at 1.
//   Reward: supply fixed under accrual, per-token value grows.
//   Dual:   principal token keeps the 1:1 peg, a second token accrues rewards.
enum class TokenModel { kRebase, kReward, kDual };

enum class ValidatorSelection { kWhitelist, kCredential, kCollateral };

TokenModel parse_token_model(const std::string& s);
ValidatorSelection parse_validator_selection(const std::string& s);
std::string to_string(TokenModel m);
std::string to_string(ValidatorSelection s);

struct LspConfig {
    TokenModel model{TokenModel::kReward};
    double fee{0.10};  // fraction of staking rewards
    bool include_mev{true};
    bool fee_on_mev{true};  // whether the fee also applies to included MEV rewards
    ValidatorSelection validator_selection{ValidatorSelection::kWhitelist};
    double collateral_ratio{0.0};  // required only under Collateral selection

    void validate() const;
    static LspConfig load(const std::string& path);
    static LspConfig from_config(const class KeyValueConfig& cfg, const std::string& prefix = "");
};

struct LspState {
    double reserves{0.0};       // staked principal plus accrued net rewards
    double supply{0.0};         // LSTs in circulation
    double reward_supply{0.0};  // Dual model's reward token, 1 unit = 1 native of reward
    double collateral{0.0};     // validator collateral (Collateral selection)
    double treasury{0.0};       // collected fees
    bool shortfall{false};      // set once a slashing loss exceeded collateral + reserves
};

struct MintResult {
    double lst_out{0.0};
    LspState state;
};

struct BurnResult {
    double native_out{0.0};
    LspState state;
};

// Redemption value of one LST in native tokens. The reward token's backing is
// excluded so the Dual model's principal token keeps its 1:1 peg; with
// reward_supply == 0 this is exactly reserves / supply.
double fair_value(const LspState& state);

// Mints LSTs against a native deposit at fair value (1.0 when bootstrapping
// an empty protocol). Fair value is unchanged.
MintResult mint(LspState state, double native_in);

// Burns LSTs for native at fair value; the released native is subject to the
// chain's unstaking lockup, which the caller routes through request_unstake.
BurnResult burn(LspState state, double lst_in, const ChainProfile& chain);

// Distributes one period's rewards: the fee share goes to the treasury, the
// net share to holders according to the token model.
LspState distribute_rewards(LspState state, const LspConfig& config, double gross_reward,
                            double mev_reward);

// Fee actually charged on a (gross, mev) reward pair under `config`.
double fee_amount(const LspConfig& config, double gross_reward, double mev_reward);

// Slashing loss: collateral absorbs first under Collateral selection, the
// remainder reduces reserves (floored at zero, flagging a shortfall).
LspState apply_slashing_loss(LspState state, const LspConfig& config, double loss);

// Dual model: converts reward tokens back to native at face value.
std::pair<double, LspState> redeem_reward_tokens(LspState state, double reward_in);

// Snapshot CSV: day,reserves,supply,reward_supply,collateral,treasury,fair_value
void write_state_csv_header(std::ostream& out);
void write_state_csv_row(std::ostream& out, int day, const LspState& state);

}  // namespace lst
