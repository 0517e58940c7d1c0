#include "fgp/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string_view>

#include "json.hpp"

#include "fgp/errors.hpp"

namespace fgp {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Shortest-exact decimal for a double: %.17g always round-trips, and for
/// whole numbers stays compact ("1", "0", "-0.10056410771285630").
std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename ErrT>
[[noreturn]] void rethrow_tagged(const ErrT& e, int k, Mode mode) {
    throw ErrT("k=" + std::to_string(k) + " mode=" + std::string(to_string(mode)) + ": " + e.what());
}

} // namespace

RunSeries run_single(const MarketPanel& panel, int k, Mode mode, GenFnKind genfn) {
    const auto t0 = std::chrono::steady_clock::now();
    RunSeries out;
    out.k = k;
    out.mode = mode;
    out.genfn = genfn;
    out.ledger.mode = mode;
    if (panel.days.empty()) return out;

    try {
        const BacktestStart start = initial_state(panel.days.front(), k, GenFnSpec{genfn, 1.0}, mode);
        StrategyState state = start.state;

        out.rows.reserve(panel.days.size());
        out.rows.push_back(SeriesRow{state.date, state.wealth, std::log(state.wealth), state.eval.value,
                                     state.gamma, state.leakage, false, 0.0});
        apply_leakage(out.ledger, state.date, false, 0.0);

        for (std::size_t l = 1; l < panel.days.size(); ++l) {
            StepResult res = step(state, panel.days[l], k, start.genfn);
            state = std::move(res.state);
            const RebalanceRecord& rec = res.record;

            apply_leakage(out.ledger, rec.date, rec.list_changed, rec.leakage_increment);
            if (rec.list_changed) ++out.change_days;
            out.rows.push_back(SeriesRow{rec.date, state.wealth, std::log(state.wealth), state.eval.value,
                                         state.gamma, state.leakage, rec.list_changed, rec.turnover});
        }
    } catch (const ConfigError& e) {
        rethrow_tagged(e, k, mode);
    } catch (const DataError& e) {
        rethrow_tagged(e, k, mode);
    } catch (const NumericError& e) {
        rethrow_tagged(e, k, mode);
    }

    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

RunOutput run_backtest(const RunConfig& config) {
    RunOutput out;
    out.config = config;

    if (config.csv_path.has_value() == config.synth.has_value())
        throw ConfigError("exactly one data source required: either a CSV path or a synthetic market config");
    if (config.k_values.empty()) throw ConfigError("at least one k value is required");
    if (config.output_dir.empty()) throw ConfigError("output directory must not be empty");

    MarketPanel panel;
    if (config.csv_path) {
        panel = load_panel(*config.csv_path, config.window);
    } else {
        panel = synthesize_panel(*config.synth);
        if (config.window) restrict_to_window(panel, *config.window);
    }

    out.panel_d = panel.names.size();
    out.panel_days = panel.days.size();
    if (!panel.days.empty()) {
        out.first_date = panel.days.front().date;
        out.last_date = panel.days.back().date;
    }
    out.returns_consistent = panel.returns_consistent;

    std::vector<int> ks = config.k_values;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    out.config.k_values = ks;
    for (const int k : ks)
        if (k < 2 || static_cast<std::size_t>(k) > panel.names.size())
            throw ConfigError("k = " + std::to_string(k) + " outside valid range [2, " +
                              std::to_string(panel.names.size()) + "] for this universe");

    for (const int k : ks) out.series.push_back(run_single(panel, k, config.mode, config.genfn));

    emit_series(out);
    return out;
}

std::string csv_filename(int k, Mode mode) {
    return "series_k" + std::to_string(k) + "_" + std::string(to_string(mode)) + ".csv";
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string render_csv(const RunSeries& s) {
    std::string csv = "date,V,logV,G,Gamma,L,absL,list_changed,turnover\n";
    for (const SeriesRow& r : s.rows) {
        csv += format_date(r.date);
        csv += ',';
        csv += fmt_double(r.V);
        csv += ',';
        csv += fmt_double(r.logV);
        csv += ',';
        csv += fmt_double(r.G);
        csv += ',';
        csv += fmt_double(r.Gamma);
        csv += ',';
        csv += fmt_double(r.L);
        csv += ',';
        csv += fmt_double(std::abs(r.L));
        csv += ',';
        csv += r.list_changed ? '1' : '0';
        csv += ',';
        csv += fmt_double(r.turnover);
        csv += '\n';
    }
    return csv;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw DataError("cannot open " + tmp.string() + " for writing");
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!f) throw DataError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    if (cfg.csv_path) {
        j["source"] = {{"type", "csv"}, {"path", *cfg.csv_path}};
    } else if (cfg.synth) {
        const SynthConfig& s = *cfg.synth;
        j["source"] = {{"type", "synthetic"},
                       {"seed", s.seed},
                       {"d", s.d},
                       {"n_days", s.n_days},
                       {"start_date", format_date(s.start_date)},
                       {"initial_caps", s.initial_caps},
                       {"drift_by_rank", s.drift_by_rank},
                       {"vol_by_rank", s.vol_by_rank}};
    }
    j["k_values"] = cfg.k_values;
    j["mode"] = to_string(cfg.mode);
    j["genfn"] = to_string(cfg.genfn);
    if (cfg.window) j["window"] = {{"start", format_date(cfg.window->start)}, {"end", format_date(cfg.window->end)}};
    j["output_dir"] = cfg.output_dir;
    return j;
}

} // namespace

void emit_series(RunOutput& output) {
    namespace fs = std::filesystem;
    const fs::path dir = output.config.output_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());

    output.written_files.clear();
    std::vector<fs::path> written;
    try {
        ordered_json summary;
        summary["config"] = config_json(output.config);
        summary["panel"] = {{"d", output.panel_d},
                            {"days", output.panel_days},
                            {"first_date", output.first_date ? format_date(*output.first_date) : ""},
                            {"last_date", output.last_date ? format_date(*output.last_date) : ""},
                            {"returns_consistent", output.returns_consistent}};
        summary["runs"] = ordered_json::array();

        for (const RunSeries& s : output.series) {
            const std::string name = csv_filename(s.k, s.mode);
            const std::string csv = render_csv(s);
            write_file_atomic(dir / name, csv);
            written.push_back(dir / name);
            output.written_files.push_back(name);

            ordered_json run;
            run["k"] = s.k;
            run["mode"] = to_string(s.mode);
            run["genfn"] = to_string(s.genfn);
            run["csv"] = name;
            run["csv_hash"] = hash_hex(fnv1a64(csv));
            run["days"] = s.rows.size();
            run["list_change_days"] = s.change_days;
            if (!s.rows.empty()) {
                const SeriesRow& last = s.rows.back();
                run["final"] = {{"date", format_date(last.date)}, {"V", last.V},       {"logV", last.logV},
                                {"G", last.G},                    {"Gamma", last.Gamma}, {"L", last.L},
                                {"absL", std::abs(last.L)}};
            }
            run["wall_ms"] = s.wall_ms;
            summary["runs"].push_back(std::move(run));
        }

        write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
        written.push_back(dir / "summary.json");
        output.written_files.emplace_back("summary.json");
    } catch (...) {
        // Leave no partial output behind: a rerun must start from a clean slate.
        for (const fs::path& p : written) fs::remove(p, ec);
        fs::remove(dir / "summary.json.tmp", ec);
        for (const RunSeries& s : output.series) fs::remove(dir / (csv_filename(s.k, s.mode) + ".tmp"), ec);
        output.written_files.clear();
        throw;
    }
}

} // namespace fgp
