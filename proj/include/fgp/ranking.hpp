#ifndef FGP_RANKING_HPP
#define FGP_RANKING_HPP

#include <span>
#include <vector>

#include "fgp/dates.hpp"
#include "fgp/market_data.hpp"

namespace fgp {

/// The top-k constituents on a given day, in rank order:
/// names[0] is the largest cap, names[k-1] the smallest admitted one.
struct ConstituentList {
    std::vector<int> names; // name indices into MarketPanel::names
    Date as_of;
};

/// Normalized weights of a k-name sub-market, aligned with `list`.
/// `multiplier` is the factor that maps whole-market exposure onto the
/// sub-market: total cap of the pricing universe divided by the cap held in
/// the list (>= 1, == 1 when the list is the whole universe).
struct SubMarketWeights {
    std::vector<double> weights;
    double multiplier = 1.0;
    ConstituentList list;
};

/// Rank the whole cross-section by descending cap. Ties break by ascending
/// name index, so the result is a deterministic permutation: perm[r] is the
/// name holding rank r. Non-positive or non-finite caps are a domain error.
std::vector<int> rank_names(std::span<const double> caps);

/// The day's top-k list, by the same ordering. Requires 2 <= k <= d.
ConstituentList top_k_list(std::span<const double> caps, int k, Date as_of);

/// Ranked top-k caps normalized to a weight vector, plus the sub-market
/// multiplier. When k == d the multiplier is exactly 1 (numerator and
/// denominator are the same rank-ordered sum).
SubMarketWeights top_k_weights(std::span<const double> caps, int k, Date as_of);

/// Carry yesterday's list through today's returns without re-ranking: the
/// weight of list member i is its carried value prev_cap * (1 + ret) divided
/// by the carried value of the whole list. This is the pre-renewal weight
/// vector the strategy actually holds when the new list is announced.
/// `prev_universe_caps` are yesterday's caps for all d names; `day` supplies
/// today's returns. A list entry outside [0, d) is a delisting error.
SubMarketWeights old_list_weights(const ConstituentList& prev_list, std::span<const double> prev_universe_caps,
                                  const MarketDay& day);

/// True when the two lists hold the same name set (order ignored).
bool same_name_set(const ConstituentList& a, const ConstituentList& b);

} // namespace fgp

#endif
