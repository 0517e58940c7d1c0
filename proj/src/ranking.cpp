#include "fgp/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fgp/errors.hpp"

namespace fgp {

namespace {

void require_valid_caps(std::span<const double> caps) {
    if (caps.size() < 2) throw NumericError("ranking needs at least 2 caps, got " + std::to_string(caps.size()));
    for (std::size_t i = 0; i < caps.size(); ++i)
        if (!(caps[i] > 0.0) || !std::isfinite(caps[i]))
            throw NumericError("cap " + std::to_string(i) + " must be finite and > 0 for ranking");
}

void require_valid_k(int k, std::size_t d) {
    if (k < 2 || static_cast<std::size_t>(k) > d)
        throw ConfigError("k must satisfy 2 <= k <= d; got k = " + std::to_string(k) + ", d = " + std::to_string(d));
}

} // namespace

std::vector<int> rank_names(std::span<const double> caps) {
    require_valid_caps(caps);
    std::vector<int> perm(caps.size());
    std::iota(perm.begin(), perm.end(), 0);
    // (-cap, name index) is a strict total order, so the sorted result is
    // unique and any correct sort yields it; no stability requirement needed.
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        const double ca = caps[static_cast<std::size_t>(a)];
        const double cb = caps[static_cast<std::size_t>(b)];
        if (ca != cb) return ca > cb;
        return a < b;
    });
    return perm;
}

ConstituentList top_k_list(std::span<const double> caps, int k, Date as_of) {
    require_valid_k(k, caps.size());
    std::vector<int> perm = rank_names(caps);
    perm.resize(static_cast<std::size_t>(k));
    return ConstituentList{std::move(perm), as_of};
}

SubMarketWeights top_k_weights(std::span<const double> caps, int k, Date as_of) {
    require_valid_k(k, caps.size());
    const std::vector<int> perm = rank_names(caps);

    // Both sums run in rank order over the same array, so for k == d they are
    // the same floating-point value and the multiplier is exactly 1.
    std::vector<double> ranked(static_cast<std::size_t>(k));
    double top_sum = 0.0;
    for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r) {
        ranked[r] = caps[static_cast<std::size_t>(perm[r])];
        top_sum += ranked[r];
    }
    double total = top_sum;
    for (std::size_t r = static_cast<std::size_t>(k); r < caps.size(); ++r)
        total += caps[static_cast<std::size_t>(perm[r])];

    SubMarketWeights w;
    w.list.names.assign(perm.begin(), perm.begin() + k);
    w.list.as_of = as_of;
    w.weights.resize(static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r) w.weights[r] = ranked[r] / top_sum;
    w.multiplier = total / top_sum;
    return w;
}

SubMarketWeights old_list_weights(const ConstituentList& prev_list, std::span<const double> prev_universe_caps,
                                  const MarketDay& day) {
    const std::size_t d = prev_universe_caps.size();
    if (day.caps.size() != d || day.returns.size() != d)
        throw DataError(format_date(day.date) + ": cross-section size " + std::to_string(day.returns.size()) +
                        " does not match universe size " + std::to_string(d));
    if (prev_list.names.empty()) throw NumericError("old_list_weights: empty constituent list");

    std::vector<double> carried(prev_list.names.size());
    double list_sum = 0.0;
    for (std::size_t i = 0; i < prev_list.names.size(); ++i) {
        const int name = prev_list.names[i];
        if (name < 0 || static_cast<std::size_t>(name) >= d)
            throw DataError(format_date(day.date) + ": constituent " + std::to_string(name) +
                            " has no quote on this day (universe size " + std::to_string(d) + ")");
        const auto j = static_cast<std::size_t>(name);
        carried[i] = prev_universe_caps[j] * (1.0 + day.returns[j]);
        if (!(carried[i] > 0.0) || !std::isfinite(carried[i]))
            throw NumericError(format_date(day.date) + ": carried value of constituent " + std::to_string(name) +
                               " is not positive");
        list_sum += carried[i];
    }

    double total = list_sum;
    {
        // Complement of the list, for the multiplier only.
        std::vector<bool> in_list(d, false);
        for (const int name : prev_list.names) in_list[static_cast<std::size_t>(name)] = true;
        for (std::size_t j = 0; j < d; ++j)
            if (!in_list[j]) total += prev_universe_caps[j] * (1.0 + day.returns[j]);
    }

    SubMarketWeights w;
    w.list = prev_list;
    w.list.as_of = day.date;
    w.weights.resize(carried.size());
    for (std::size_t i = 0; i < carried.size(); ++i) w.weights[i] = carried[i] / list_sum;
    w.multiplier = total / list_sum;
    return w;
}

bool same_name_set(const ConstituentList& a, const ConstituentList& b) {
    if (a.names.size() != b.names.size()) return false;
    std::vector<int> sa = a.names, sb = b.names;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
}

} // namespace fgp
