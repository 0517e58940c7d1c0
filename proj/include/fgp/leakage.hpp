#ifndef FGP_LEAKAGE_HPP
#define FGP_LEAKAGE_HPP

#include <vector>

#include "fgp/dates.hpp"
#include "fgp/genfn.hpp"
#include "fgp/mode.hpp"

namespace fgp {

/// One day's leakage bookkeeping. `delta` is the increment actually accrued:
/// zero whenever the constituent set did not change, regardless of how the
/// generating function moved.
struct LeakageEntry {
    Date date;
    double delta = 0.0;
    bool list_changed = false;
};

/// Chronological record of leakage. `cumulative` is the running sum of the
/// accrued deltas, in log-wealth units for the multiplicative construction
/// and wealth units for the additive one.
struct LeakageLedger {
    Mode mode = Mode::multiplicative;
    std::vector<LeakageEntry> entries;
    double cumulative = 0.0;
};

/// Renewal-day increments: the generating function evaluated on the carried
/// old-list weights versus the freshly ranked new-list weights. Negative when
/// the renewal hands the strategy a less favorable (less balanced) holding.
double leakage_increment_multiplicative(const GenFnEval& old_eval, const GenFnEval& new_eval);
double leakage_increment_additive(const GenFnEval& old_eval, const GenFnEval& new_eval);
double leakage_increment(Mode mode, const GenFnEval& old_eval, const GenFnEval& new_eval);

/// The delta that actually accrues on a day: `delta` on set changes, exactly
/// 0.0 otherwise. Engine state and ledger both go through this one gate so
/// they cannot drift apart.
inline double effective_leakage(bool list_changed, double delta) { return list_changed ? delta : 0.0; }

/// Append one day. Dates must be strictly increasing; the stored delta is
/// effective_leakage(list_changed, delta).
void apply_leakage(LeakageLedger& ledger, Date date, bool list_changed, double delta);

} // namespace fgp

#endif
