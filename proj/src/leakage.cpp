#include "fgp/leakage.hpp"

#include <cmath>

#include "fgp/errors.hpp"

namespace fgp {

double leakage_increment_multiplicative(const GenFnEval& old_eval, const GenFnEval& new_eval) {
    if (!(old_eval.value > 0.0) || !(new_eval.value > 0.0))
        throw NumericError("multiplicative leakage needs positive generating function values");
    return std::log(old_eval.value) - std::log(new_eval.value);
}

double leakage_increment_additive(const GenFnEval& old_eval, const GenFnEval& new_eval) {
    return old_eval.value - new_eval.value;
}

double leakage_increment(Mode mode, const GenFnEval& old_eval, const GenFnEval& new_eval) {
    return mode == Mode::multiplicative ? leakage_increment_multiplicative(old_eval, new_eval)
                                        : leakage_increment_additive(old_eval, new_eval);
}

void apply_leakage(LeakageLedger& ledger, Date date, bool list_changed, double delta) {
    if (!ledger.entries.empty() && !(ledger.entries.back().date < date))
        throw DataError("leakage ledger dates must be strictly increasing; got " + format_date(date) +
                        " after " + format_date(ledger.entries.back().date));
    if (!std::isfinite(delta)) throw NumericError("leakage increment at " + format_date(date) + " is not finite");
    const double applied = effective_leakage(list_changed, delta);
    ledger.entries.push_back(LeakageEntry{date, applied, list_changed});
    ledger.cumulative += applied;
}

} // namespace fgp
