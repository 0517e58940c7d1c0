#ifndef FGP_MARKET_DATA_HPP
#define FGP_MARKET_DATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgp/dates.hpp"

namespace fgp {

/// One trading day of the cross-section. caps[i] and returns[i] are aligned
/// with MarketPanel::names; returns are simple (arithmetic) returns from the
/// previous panel day, zero on the first day.
struct MarketDay {
    Date date;
    std::vector<double> caps;    // market capitalizations, all > 0
    std::vector<double> returns; // simple returns, all > -1
};

/// A rectangular panel: the same d names on every day, days strictly
/// increasing. This is the closed universe the backtests run on; names that
/// do not survive the whole window never make it into a panel.
struct MarketPanel {
    std::vector<std::string> names; // size d, lexicographically sorted for CSV input
    std::vector<MarketDay> days;
    /// True when caps[l][i] == caps[l-1][i] * (1 + returns[l][i]) holds within
    /// 1e-6 relative everywhere. Synthetic panels satisfy it by construction;
    /// for CSV input a false value is reported as a warning, not an error.
    bool returns_consistent = true;
};

/// Parameters of the rank-driven synthetic market. Each name follows a
/// geometric random walk whose per-day log drift and volatility are looked up
/// by the rank the name held on the previous day, so rank crossings are a
/// routine event rather than a corner case.
struct SynthConfig {
    std::uint64_t seed = 0;
    int d = 0;                         // number of names, >= 2
    int n_days = 0;                    // panel length, >= 1
    std::vector<double> initial_caps;  // size d, all > 0
    std::vector<double> drift_by_rank; // size d, log drift per day
    std::vector<double> vol_by_rank;   // size d, log vol per sqrt(day), >= 0
    Date start_date = make_date(2000, 1, 3);
};

/// Inclusive calendar window used to restrict a panel.
struct DateWindow {
    Date start;
    Date end;
};

/// Load a long-format CSV with header `date,id,cap,ret` into a validated
/// panel. Rows are validated as they are read (caps > 0, returns > -1,
/// well-formed dates; errors cite file:line and the offending name/date).
/// If a window is given, only days inside it are kept; the universe is then
/// restricted to names present on every remaining day. Fewer than two
/// survivors is an error.
MarketPanel load_panel(const std::string& path, const std::optional<DateWindow>& window = std::nullopt);

/// Generate a synthetic panel. Deterministic in the config, including the
/// seed: identical configs produce bitwise-identical panels. Returns satisfy
/// the cap/return consistency identity exactly because they are computed as
/// cap ratios.
MarketPanel synthesize_panel(const SynthConfig& cfg);

/// Re-check the structural invariants of an assembled panel (rectangular
/// shape, increasing dates, positive caps, returns > -1). Throws DataError
/// on violation; recomputes and returns the consistency flag.
bool validate_panel(MarketPanel& panel);

/// Keep only days inside the window. Throws ConfigError if the window is
/// inverted or does not overlap [first day, last day] of the panel.
/// Returns of the first retained day are reset to zero, keeping the
/// "first day has no look-back" convention intact after slicing.
void restrict_to_window(MarketPanel& panel, const DateWindow& window);

} // namespace fgp

#endif
