#ifndef FGP_MODE_HPP
#define FGP_MODE_HPP

#include <optional>
#include <string_view>

namespace fgp {

/// How the generating function is turned into a portfolio: the
/// multiplicative construction compounds G's log-change into wealth, the
/// additive one accrues it in wealth units.
enum class Mode {
    multiplicative,
    additive,
};

inline std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "mult") return Mode::multiplicative;
    if (s == "add") return Mode::additive;
    return std::nullopt;
}

inline std::string_view to_string(Mode mode) {
    return mode == Mode::multiplicative ? "mult" : "add";
}

} // namespace fgp

#endif
