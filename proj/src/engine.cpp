#include "fgp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fgp/errors.hpp"
#include "fgp/leakage.hpp"

namespace fgp {

namespace {

double grad_dot(const GenFnEval& eval, const SubMarketWeights& mu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.weights.size(); ++i) acc += eval.grad[i] * mu.weights[i];
    return acc;
}

void require_aligned(const GenFnEval& eval, const SubMarketWeights& mu, const char* who) {
    if (eval.grad.size() != mu.weights.size())
        throw NumericError(std::string(who) + ": gradient size " + std::to_string(eval.grad.size()) +
                           " does not match weight vector size " + std::to_string(mu.weights.size()));
}

/// Half L1 distance between two weight vectors living on (possibly)
/// different lists, taken over the union of their names. Union iteration is
/// in ascending name index so the sum is reproducible.
double half_l1_turnover(const ConstituentList& list_a, std::span<const double> w_a, const ConstituentList& list_b,
                        std::span<const double> w_b) {
    std::vector<std::pair<int, double>> a(list_a.names.size()), b(list_b.names.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = {list_a.names[i], w_a[i]};
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = {list_b.names[i], w_b[i]};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    double l1 = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            l1 += std::abs(a[i].second);
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            l1 += std::abs(b[j].second);
            ++j;
        } else {
            l1 += std::abs(a[i].second - b[j].second);
            ++i, ++j;
        }
    }
    return 0.5 * l1;
}

std::vector<double> target_weights_for(Mode mode, const GenFnEval& eval, const SubMarketWeights& mu, double wealth,
                                       Date date) {
    if (mode == Mode::multiplicative) return target_weights_multiplicative(eval, mu);
    if (!(wealth > 0.0))
        throw NumericError("additive wealth is non-positive (" + std::to_string(wealth) + ") at " +
                           format_date(date) + "; the additive construction cannot continue");
    return target_weights_additive(eval, mu, wealth);
}

} // namespace

double wealth_numerator(const StrategyState& prev, const MarketDay& day) {
    if (day.caps.size() != prev.universe_caps.size())
        throw DataError(format_date(day.date) + ": cross-section size " + std::to_string(day.caps.size()) +
                        " does not match universe size " + std::to_string(prev.universe_caps.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < prev.list.names.size(); ++i) {
        const auto j = static_cast<std::size_t>(prev.list.names[i]);
        acc += prev.shares[i] * prev.universe_caps[j] * (1.0 + day.returns[j]);
    }
    return acc;
}

double wealth_update(const StrategyState& prev, const MarketDay& day, const ConstituentList& new_list) {
    const double numerator = wealth_numerator(prev, day);
    double denom = 0.0;
    for (const int name : new_list.names) denom += day.caps[static_cast<std::size_t>(name)];
    if (!(denom > 0.0)) throw NumericError(format_date(day.date) + ": new list has non-positive total cap");
    return numerator / denom;
}

std::vector<double> target_weights_multiplicative(const GenFnEval& eval, const SubMarketWeights& mu) {
    require_aligned(eval, mu, "target_weights_multiplicative");
    if (!(eval.value > 0.0))
        throw NumericError("multiplicative weights need a positive generating function value, got " +
                           std::to_string(eval.value));
    const double dot = grad_dot(eval, mu);
    std::vector<double> pi(mu.weights.size());
    for (std::size_t i = 0; i < pi.size(); ++i)
        pi[i] = mu.weights[i] / eval.value * (eval.grad[i] + eval.value - dot);
    return pi;
}

std::vector<double> target_weights_additive(const GenFnEval& eval, const SubMarketWeights& mu, double wealth) {
    require_aligned(eval, mu, "target_weights_additive");
    if (!(wealth > 0.0) || !std::isfinite(wealth))
        throw NumericError("additive weights need positive wealth, got " + std::to_string(wealth));
    const double dot = grad_dot(eval, mu);
    std::vector<double> pi(mu.weights.size());
    for (std::size_t i = 0; i < pi.size(); ++i)
        pi[i] = mu.weights[i] / wealth * (eval.grad[i] + wealth - dot);
    return pi;
}

std::vector<double> weights_to_shares(std::span<const double> pi, double numerator, std::span<const double> caps) {
    if (pi.size() != caps.size())
        throw NumericError("weights_to_shares: " + std::to_string(pi.size()) + " weights vs " +
                           std::to_string(caps.size()) + " caps");
    if (!(numerator > 0.0) || !std::isfinite(numerator))
        throw NumericError("weights_to_shares: wealth numerator must be finite and > 0, got " +
                           std::to_string(numerator));
    std::vector<double> shares(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (!(caps[i] > 0.0)) throw NumericError("weights_to_shares: cap " + std::to_string(i) + " not positive");
        shares[i] = pi[i] * numerator / caps[i];
    }
    return shares;
}

double gamma_increment(const GenFnEval& eval_prev, const SubMarketWeights& mu_prev, const GenFnEval& eval_hat,
                       const SubMarketWeights& mu_hat) {
    require_aligned(eval_prev, mu_prev, "gamma_increment");
    require_aligned(eval_prev, mu_hat, "gamma_increment");
    if (!same_name_set(mu_prev.list, mu_hat.list))
        throw NumericError("gamma_increment: weight vectors live on different constituent lists");
    double delta = eval_prev.value - eval_hat.value;
    for (std::size_t i = 0; i < mu_prev.weights.size(); ++i)
        delta += eval_prev.grad[i] * (mu_hat.weights[i] - mu_prev.weights[i]);
    return delta;
}

BacktestStart initial_state(const MarketDay& day0, int k, const GenFnSpec& spec, Mode mode, bool calibrate) {
    SubMarketWeights mu = top_k_weights(day0.caps, k, day0.date);
    const GenFnSpec cal = calibrate ? calibrate_normalization(spec, mu.weights) : spec;
    GenFnEval eval = evaluate(cal, mu.weights);

    StrategyState s;
    s.mode = mode;
    s.date = day0.date;
    s.wealth = eval.value; // == 1 exactly when calibrated
    s.gamma = 0.0;
    s.leakage = 0.0;
    s.target_weights = target_weights_for(mode, eval, mu, s.wealth, day0.date);

    double list_cap = 0.0;
    for (const int name : mu.list.names) list_cap += day0.caps[static_cast<std::size_t>(name)];
    std::vector<double> list_caps(mu.list.names.size());
    for (std::size_t i = 0; i < list_caps.size(); ++i)
        list_caps[i] = day0.caps[static_cast<std::size_t>(mu.list.names[i])];
    s.shares = weights_to_shares(s.target_weights, s.wealth * list_cap, list_caps);

    s.universe_caps = day0.caps;
    s.list = mu.list;
    s.mu = std::move(mu);
    s.eval = std::move(eval);
    return BacktestStart{std::move(s), cal};
}

StepResult step(const StrategyState& prev, const MarketDay& day, int k, const GenFnSpec& spec) {
    if (!(prev.date < day.date))
        throw DataError("step: day " + format_date(day.date) + " does not follow state date " +
                        format_date(prev.date));

    // 1. Today's list and the wealth the old shares carry into it.
    ConstituentList new_list = top_k_list(day.caps, k, day.date);
    const double numerator = wealth_numerator(prev, day);
    double new_list_cap = 0.0;
    for (const int name : new_list.names) new_list_cap += day.caps[static_cast<std::size_t>(name)];
    if (!(numerator > 0.0) || !std::isfinite(numerator))
        throw NumericError(format_date(day.date) + ": portfolio value is not positive (" +
                           std::to_string(numerator) + "); cannot re-base onto the new list");
    const double wealth = numerator / new_list_cap;

    // 2. Carried (pre-renewal) weights of yesterday's list, and today's fresh
    //    weights; the strategy holds the former when the latter is announced.
    const SubMarketWeights mu_hat = old_list_weights(prev.list, prev.universe_caps, day);
    const GenFnEval eval_hat = evaluate(spec, mu_hat.weights);
    SubMarketWeights mu = top_k_weights(day.caps, k, day.date);
    GenFnEval eval = evaluate(spec, mu.weights);

    // 3. Decomposition increments. The drift term compares yesterday's close
    //    against today's carried weights (same list); the leakage term
    //    compares carried against fresh and accrues only on set changes.
    const double d_gamma = gamma_increment(prev.eval, prev.mu, eval_hat, mu_hat);
    const bool changed = !same_name_set(prev.list, new_list);
    const double d_leak = leakage_increment(prev.mode, eval_hat, eval);

    // 4. Rebalance onto today's targets.
    std::vector<double> pi = target_weights_for(prev.mode, eval, mu, wealth, day.date);
    std::vector<double> list_caps(new_list.names.size());
    for (std::size_t i = 0; i < list_caps.size(); ++i)
        list_caps[i] = day.caps[static_cast<std::size_t>(new_list.names[i])];
    std::vector<double> shares = weights_to_shares(pi, numerator, list_caps);

    RebalanceRecord rec;
    rec.date = day.date;
    rec.wealth = wealth;
    rec.target_weights = pi;
    rec.gamma_increment = d_gamma;
    rec.leakage_increment = d_leak;
    rec.list_changed = changed;
    rec.turnover = half_l1_turnover(prev.list, prev.target_weights, new_list, pi);

    StrategyState s;
    s.mode = prev.mode;
    s.date = day.date;
    s.wealth = wealth;
    s.gamma = prev.gamma + d_gamma;
    s.leakage = prev.leakage + effective_leakage(changed, d_leak);
    s.target_weights = std::move(pi);
    s.shares = std::move(shares);
    s.universe_caps = day.caps;
    s.list = std::move(new_list);
    s.mu = std::move(mu);
    s.eval = std::move(eval);
    return StepResult{std::move(s), std::move(rec)};
}

} // namespace fgp
