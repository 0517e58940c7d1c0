// Shared helpers for the test binaries: reproducible random simplex points,
// quick panel builders, and long-double reference implementations used as
// independent oracles.
#ifndef FGP_TESTS_SUPPORT_HPP
#define FGP_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fgp/market_data.hpp"

namespace testsupport {

/// A point of the open simplex drawn as normalized exponentials.
inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t k, double floor = 0.0) {
    std::vector<double> x(k);
    double sum = 0.0;
    for (auto& xi : x) {
        const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; // (0,1]
        xi = -std::log(u) + floor;
        sum += xi;
    }
    for (auto& xi : x) xi /= sum;
    return x;
}

/// Long-double entropy and quadratic values, for cross-checking the double
/// pipeline against an independent higher-precision route.
inline long double entropy_ld(const std::vector<double>& x) {
    long double acc = 0.0L;
    for (const double xi : x) acc -= static_cast<long double>(xi) * std::log(static_cast<long double>(xi));
    return acc;
}

inline long double quadratic_ld(const std::vector<double>& x) {
    long double acc = 0.0L;
    for (const double xi : x) acc += static_cast<long double>(xi) * static_cast<long double>(xi);
    return 1.0L - 0.5L * acc;
}

/// Build a panel directly from a cap matrix (days x names); returns are the
/// exact cap ratios, so the panel is consistent by construction.
inline fgp::MarketPanel panel_from_caps(const std::vector<std::vector<double>>& caps,
                                        fgp::Date start = fgp::make_date(2010, 1, 4)) {
    fgp::MarketPanel p;
    const std::size_t d = caps.front().size();
    for (std::size_t i = 0; i < d; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "N%04zu", i);
        p.names.emplace_back(buf);
    }
    for (std::size_t l = 0; l < caps.size(); ++l) {
        fgp::MarketDay day;
        day.date = fgp::advance_days(start, static_cast<int>(l));
        day.caps = caps[l];
        day.returns.resize(d, 0.0);
        if (l > 0)
            for (std::size_t i = 0; i < d; ++i) day.returns[i] = caps[l][i] / caps[l - 1][i] - 1.0;
        p.days.push_back(std::move(day));
    }
    p.returns_consistent = true;
    return p;
}

/// A fresh scratch directory under the system temp dir, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("fgp_" + tag + "_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline std::string write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
    return p.string();
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

/// Rank-volatile synthetic config used by several tests: initial caps follow
/// rank^(-decay), per-rank vol ramps linearly from vol_min (rank 1) to
/// vol_max (last rank), drift likewise.
inline fgp::SynthConfig synth_config(std::uint64_t seed, int d, int n_days, double decay, double vol_min,
                                     double vol_max, double drift_min = 0.0, double drift_max = 0.0) {
    fgp::SynthConfig cfg;
    cfg.seed = seed;
    cfg.d = d;
    cfg.n_days = n_days;
    const auto dd = static_cast<std::size_t>(d);
    cfg.initial_caps.resize(dd);
    cfg.drift_by_rank.resize(dd);
    cfg.vol_by_rank.resize(dd);
    for (std::size_t r = 0; r < dd; ++r) {
        const double frac = dd > 1 ? static_cast<double>(r) / static_cast<double>(dd - 1) : 0.0;
        cfg.initial_caps[r] = std::pow(static_cast<double>(r + 1), -decay);
        cfg.vol_by_rank[r] = vol_min + (vol_max - vol_min) * frac;
        cfg.drift_by_rank[r] = drift_min + (drift_max - drift_min) * frac;
    }
    return cfg;
}

} // namespace testsupport

#endif
