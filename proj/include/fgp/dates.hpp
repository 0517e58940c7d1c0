#ifndef FGP_DATES_HPP
#define FGP_DATES_HPP

#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace fgp {

/// Calendar date stored as days since 1970-01-01. Cheap to compare and hash;
/// formatting goes through std::chrono so month lengths and leap years are
/// handled correctly.
struct Date {
    int serial = 0;

    auto operator<=>(const Date&) const = default;
};

inline Date make_date(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    const sys_days sd{year_month_day{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}}};
    return Date{static_cast<int>(sd.time_since_epoch().count())};
}

inline Date advance_days(Date d, int n) { return Date{d.serial + n}; }

/// Parse "YYYY-MM-DD". Returns nullopt on malformed or impossible dates
/// (2023-02-29, month 13, trailing junk); callers attach their own context.
inline std::optional<Date> try_parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    for (int i = 0; i < 4; ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        y = y * 10 + (s[i] - '0');
    }
    for (int i = 5; i < 7; ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        m = m * 10 + (s[i] - '0');
    }
    for (int i = 8; i < 10; ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        d = d * 10 + (s[i] - '0');
    }
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                             std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{static_cast<int>(sys_days{ymd}.time_since_epoch().count())};
}

inline std::string format_date(Date d) {
    using namespace std::chrono;
    const year_month_day ymd{sys_days{days{d.serial}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

} // namespace fgp

#endif
