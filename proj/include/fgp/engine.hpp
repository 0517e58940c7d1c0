#ifndef FGP_ENGINE_HPP
#define FGP_ENGINE_HPP

#include <span>
#include <vector>

#include "fgp/genfn.hpp"
#include "fgp/market_data.hpp"
#include "fgp/mode.hpp"
#include "fgp/ranking.hpp"

namespace fgp {

/// Everything the strategy knows at the close of a day, after rebalancing
/// onto that day's list. Wealth is produced by share accounting (shares held
/// into the day, valued at today's caps, re-based to today's sub-market); the
/// drift and leakage fields are the running decomposition of that wealth.
struct StrategyState {
    ConstituentList list;               // today's top-k list, rank order
    std::vector<double> shares;         // shares held after rebalance, aligned with list
    std::vector<double> universe_caps;  // today's caps for all d names
    SubMarketWeights mu;                // today's sub-market weights
    GenFnEval eval;                     // generating function at mu
    std::vector<double> target_weights; // portfolio weights the shares implement
    double wealth = 0.0;
    double gamma = 0.0;   // cumulative drift-process increments
    double leakage = 0.0; // cumulative accrued leakage (renewal days only)
    Mode mode = Mode::multiplicative;
    Date date;
};

/// Per-day audit record emitted by step().
struct RebalanceRecord {
    Date date;
    double wealth = 0.0;                // V at today's close, before costs of any kind
    std::vector<double> target_weights; // aligned with the new list
    double gamma_increment = 0.0;
    double leakage_increment = 0.0;     // raw renewal increment; accrued only if list_changed
    bool list_changed = false;
    double turnover = 0.0;              // half L1 distance between consecutive target weights
};

struct StepResult {
    StrategyState state;
    RebalanceRecord record;
};

/// initial_state() hands back the day-0 state together with the calibrated
/// generating function spec that every subsequent step must be fed.
struct BacktestStart {
    StrategyState state;
    GenFnSpec genfn;
};

/// Mark-to-market of the held shares: sum over the old list of
/// shares * prev_cap * (1 + today's return). This is the cash the strategy
/// brings to today's rebalance.
double wealth_numerator(const StrategyState& prev, const MarketDay& day);

/// Wealth relative to today's sub-market: the numerator above divided by the
/// total cap of `new_list` at today's prices.
double wealth_update(const StrategyState& prev, const MarketDay& day, const ConstituentList& new_list);

/// Portfolio weights of the multiplicative construction at (eval, mu):
/// pi_i = (mu_i / G) * (grad_i + G - sum_j grad_j mu_j). Sums to 1; invariant
/// under shifting every grad component by a constant.
std::vector<double> target_weights_multiplicative(const GenFnEval& eval, const SubMarketWeights& mu);

/// Additive counterpart; divides by current wealth instead of G, which must
/// be positive.
std::vector<double> target_weights_additive(const GenFnEval& eval, const SubMarketWeights& mu, double wealth);

/// Convert target weights into share counts at today's prices:
/// shares_i = pi_i * numerair / cap_i, where `numerator` is the wealth
/// numerator (cash) being deployed and `caps` are today's caps of the list.
std::vector<double> weights_to_shares(std::span<const double> pi, double numerator, std::span<const double> caps);

/// One day's increment of the finite-variation drift process:
/// G(mu_prev) - G(mu_hat) + sum grad_prev . (mu_hat - mu_prev), evaluated
/// with the gradient taken at the start of the step. Non-negative for
/// concave G; both weight vectors must live on the same list.
double gamma_increment(const GenFnEval& eval_prev, const SubMarketWeights& mu_prev, const GenFnEval& eval_hat,
                       const SubMarketWeights& mu_hat);

/// Build the day-0 state: rank day0, calibrate the generating function at the
/// initial weights (unless `calibrate` is false), set wealth to G(mu0), and
/// buy the mode's target weights. With calibration on, wealth starts at
/// exactly 1.
BacktestStart initial_state(const MarketDay& day0, int k, const GenFnSpec& spec, Mode mode, bool calibrate = true);

/// Advance one day: value the held shares at today's prices, re-rank,
/// re-base wealth onto the new list, account the drift and (set-change-gated)
/// leakage increments, and rebalance onto the new target weights.
/// `spec` must be the calibrated spec returned by initial_state().
StepResult step(const StrategyState& prev, const MarketDay& day, int k, const GenFnSpec& spec);

} // namespace fgp

#endif
