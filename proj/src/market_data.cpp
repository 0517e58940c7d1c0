#include "fgp/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fgp/errors.hpp"
#include "fgp/ranking.hpp"

namespace fgp {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

[[noreturn]] void fail_row(const std::string& path, std::size_t line, const std::string& what) {
    throw DataError(path + ":" + std::to_string(line) + ": " + what);
}

struct RawRow {
    double cap = 0.0;
    double ret = 0.0;
};

} // namespace

MarketPanel load_panel(const std::string& path, const std::optional<DateWindow>& window) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open data file: " + path);

    std::string line;
    std::size_t lineno = 0;

    // Header. Tolerate a UTF-8 BOM but insist on the exact column set so a
    // file with swapped columns fails loudly instead of loading garbage.
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    ++lineno;
    std::string_view header{line};
    if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
    if (strip(header) != "date,id,cap,ret")
        throw DataError(path + ":1: expected header 'date,id,cap,ret', got '" + std::string(strip(header)) + "'");

    // date -> (name -> row). std::map keeps dates sorted as we go.
    std::map<Date, std::unordered_map<std::string, RawRow>> by_date;
    std::optional<Date> file_min, file_max;

    while (std::getline(in, line)) {
        ++lineno;
        std::string_view row = strip(line);
        if (row.empty()) continue;

        std::string_view fields[4];
        std::size_t nfields = 0;
        std::size_t pos = 0;
        while (nfields < 4) {
            const std::size_t comma = row.find(',', pos);
            if (comma == std::string_view::npos) {
                fields[nfields++] = strip(row.substr(pos));
                pos = row.size();
                break;
            }
            fields[nfields++] = strip(row.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (nfields != 4 || pos != row.size())
            fail_row(path, lineno, "expected 4 comma-separated fields (date,id,cap,ret)");

        const auto date = try_parse_date(fields[0]);
        if (!date) fail_row(path, lineno, "bad date '" + std::string(fields[0]) + "' (want YYYY-MM-DD)");
        if (fields[1].empty()) fail_row(path, lineno, "empty id");

        RawRow r;
        if (!parse_double(fields[2], r.cap)) fail_row(path, lineno, "bad cap '" + std::string(fields[2]) + "'");
        if (!parse_double(fields[3], r.ret)) fail_row(path, lineno, "bad ret '" + std::string(fields[3]) + "'");

        const std::string name(fields[1]);
        if (!(r.cap > 0.0) || !std::isfinite(r.cap))
            fail_row(path, lineno, format_date(*date) + " " + name + ": cap must be finite and > 0, got " + std::string(fields[2]));
        if (!(r.ret > -1.0) || !std::isfinite(r.ret))
            fail_row(path, lineno, format_date(*date) + " " + name + ": return must be finite and > -1, got " + std::string(fields[3]));

        if (!file_min || *date < *file_min) file_min = *date;
        if (!file_max || *file_max < *date) file_max = *date;
        if (window && (*date < window->start || window->end < *date)) continue;

        auto& day_rows = by_date[*date];
        if (!day_rows.emplace(name, r).second)
            fail_row(path, lineno, "duplicate row for " + format_date(*date) + " " + name);
    }

    if (by_date.empty()) {
        if (window && file_min)
            throw ConfigError("window " + format_date(window->start) + ".." + format_date(window->end) +
                              " excludes every row of " + path + " (file range " + format_date(*file_min) +
                              ".." + format_date(*file_max) + ")");
        throw DataError(path + ": no data rows");
    }

    // Closed universe: keep only names quoted on every retained day.
    std::map<std::string, std::size_t> presence;
    for (const auto& [date, rows] : by_date)
        for (const auto& [name, row] : rows) ++presence[name];

    std::vector<std::string> names;
    for (const auto& [name, count] : presence)
        if (count == by_date.size()) names.push_back(name);

    if (names.size() < 2)
        throw DataError(path + ": universe too small: " + std::to_string(names.size()) +
                        " name(s) present on all " + std::to_string(by_date.size()) + " day(s); need at least 2");

    MarketPanel panel;
    panel.names = names; // std::map iteration is already sorted
    panel.days.reserve(by_date.size());
    for (const auto& [date, rows] : by_date) {
        MarketDay day;
        day.date = date;
        day.caps.reserve(names.size());
        day.returns.reserve(names.size());
        for (const auto& name : names) {
            const auto& r = rows.at(name);
            day.caps.push_back(r.cap);
            day.returns.push_back(r.ret);
        }
        panel.days.push_back(std::move(day));
    }

    // First-day returns look back before the panel starts; zero them by
    // convention so the panel is self-contained.
    std::fill(panel.days.front().returns.begin(), panel.days.front().returns.end(), 0.0);

    validate_panel(panel);
    return panel;
}

namespace {

// Gaussian draws via Box-Muller on top of mt19937_64. std::normal_distribution
// is implementation-defined, which would make panels differ across standard
// libraries for the same seed; this keeps the stream pinned down.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1): 53-bit mantissas from the raw 64-bit draws.
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace

MarketPanel synthesize_panel(const SynthConfig& cfg) {
    if (cfg.d < 2) throw ConfigError("synthetic universe needs d >= 2, got " + std::to_string(cfg.d));
    if (cfg.n_days < 1) throw ConfigError("synthetic panel needs n_days >= 1, got " + std::to_string(cfg.n_days));
    const auto d = static_cast<std::size_t>(cfg.d);
    if (cfg.initial_caps.size() != d || cfg.drift_by_rank.size() != d || cfg.vol_by_rank.size() != d)
        throw ConfigError("synthetic config vectors must all have length d = " + std::to_string(cfg.d));
    for (std::size_t i = 0; i < d; ++i) {
        if (!(cfg.initial_caps[i] > 0.0) || !std::isfinite(cfg.initial_caps[i]))
            throw ConfigError("initial cap " + std::to_string(i) + " must be finite and > 0");
        if (!(cfg.vol_by_rank[i] >= 0.0) || !std::isfinite(cfg.vol_by_rank[i]))
            throw ConfigError("vol_by_rank " + std::to_string(i) + " must be finite and >= 0");
        if (!std::isfinite(cfg.drift_by_rank[i]))
            throw ConfigError("drift_by_rank " + std::to_string(i) + " must be finite");
    }

    MarketPanel panel;
    panel.names.reserve(d);
    // N0000, N0001, ... sorts the same lexicographically and numerically.
    for (std::size_t i = 0; i < d; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "N%04zu", i);
        panel.names.emplace_back(buf);
    }

    NormalSampler gauss(cfg.seed);
    std::vector<int> rank_of(d); // name index -> current rank (0 = largest)

    panel.days.reserve(static_cast<std::size_t>(cfg.n_days));
    MarketDay day0;
    day0.date = cfg.start_date;
    day0.caps = cfg.initial_caps;
    day0.returns.assign(d, 0.0);
    panel.days.push_back(std::move(day0));

    for (int l = 1; l < cfg.n_days; ++l) {
        const auto& prev = panel.days.back();
        const std::vector<int> perm = rank_names(prev.caps);
        for (std::size_t r = 0; r < d; ++r) rank_of[static_cast<std::size_t>(perm[r])] = static_cast<int>(r);

        MarketDay day;
        day.date = advance_days(prev.date, 1);
        day.caps.resize(d);
        day.returns.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            const auto r = static_cast<std::size_t>(rank_of[i]);
            const double z = gauss.next();
            const double cap = prev.caps[i] * std::exp(cfg.drift_by_rank[r] + cfg.vol_by_rank[r] * z);
            if (!(cap > 0.0) || !std::isfinite(cap))
                throw NumericError("synthetic cap overflow for " + panel.names[i] + " at " + format_date(day.date));
            day.caps[i] = cap;
            // Exact ratio so the cap/return consistency identity holds bitwise.
            day.returns[i] = cap / prev.caps[i] - 1.0;
        }
        panel.days.push_back(std::move(day));
    }

    panel.returns_consistent = true;
    return panel;
}

bool validate_panel(MarketPanel& panel) {
    const std::size_t d = panel.names.size();
    if (d < 2) throw DataError("panel universe too small: " + std::to_string(d) + " name(s)");
    if (panel.days.empty()) throw DataError("panel has no days");

    {
        std::set<std::string> unique(panel.names.begin(), panel.names.end());
        if (unique.size() != d) throw DataError("panel has duplicate names");
    }

    for (std::size_t l = 0; l < panel.days.size(); ++l) {
        const auto& day = panel.days[l];
        if (day.caps.size() != d || day.returns.size() != d)
            throw DataError(format_date(day.date) + ": cross-section has " + std::to_string(day.caps.size()) +
                            " caps / " + std::to_string(day.returns.size()) + " returns, expected " + std::to_string(d));
        if (l > 0 && !(panel.days[l - 1].date < day.date))
            throw DataError("panel dates not strictly increasing at " + format_date(day.date));
        for (std::size_t i = 0; i < d; ++i) {
            if (!(day.caps[i] > 0.0) || !std::isfinite(day.caps[i]))
                throw DataError(format_date(day.date) + " " + panel.names[i] + ": cap must be finite and > 0");
            if (!(day.returns[i] > -1.0) || !std::isfinite(day.returns[i]))
                throw DataError(format_date(day.date) + " " + panel.names[i] + ": return must be finite and > -1");
        }
    }

    // Cross-check the quoted returns against cap ratios. Mismatches are worth
    // a warning (the backtest trusts the caps), not a hard failure.
    bool consistent = true;
    for (std::size_t l = 1; l + 0 < panel.days.size() && consistent; ++l) {
        const auto& prev = panel.days[l - 1];
        const auto& day = panel.days[l];
        for (std::size_t i = 0; i < d; ++i) {
            const double implied = prev.caps[i] * (1.0 + day.returns[i]);
            if (std::abs(day.caps[i] - implied) > 1e-6 * day.caps[i]) {
                consistent = false;
                break;
            }
        }
    }
    panel.returns_consistent = consistent;
    return consistent;
}

void restrict_to_window(MarketPanel& panel, const DateWindow& window) {
    if (window.end < window.start)
        throw ConfigError("window start " + format_date(window.start) + " is after end " + format_date(window.end));
    if (panel.days.empty()) return;
    const Date first = panel.days.front().date;
    const Date last = panel.days.back().date;
    if (window.end < first || last < window.start)
        throw ConfigError("window " + format_date(window.start) + ".." + format_date(window.end) +
                          " lies outside the panel range " + format_date(first) + ".." + format_date(last));

    std::vector<MarketDay> kept;
    for (auto& day : panel.days)
        if (!(day.date < window.start) && !(window.end < day.date)) kept.push_back(std::move(day));
    panel.days = std::move(kept);
    if (!panel.days.empty())
        std::fill(panel.days.front().returns.begin(), panel.days.front().returns.end(), 0.0);
}

} // namespace fgp
