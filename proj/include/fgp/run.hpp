#ifndef FGP_RUN_HPP
#define FGP_RUN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgp/engine.hpp"
#include "fgp/genfn.hpp"
#include "fgp/leakage.hpp"
#include "fgp/market_data.hpp"
#include "fgp/mode.hpp"

namespace fgp {

/// A full backtest request: one data source, one strategy flavor, a sweep of
/// sub-market sizes. Exactly one of csv_path / synth must be set.
struct RunConfig {
    std::optional<std::string> csv_path;
    std::optional<SynthConfig> synth;
    std::vector<int> k_values; // normalized to ascending unique before running
    Mode mode = Mode::multiplicative;
    GenFnKind genfn = GenFnKind::entropy;
    std::optional<DateWindow> window;
    std::string output_dir = ".";
};

/// One emitted row of the per-day series.
struct SeriesRow {
    Date date;
    double V = 0.0;
    double logV = 0.0;
    double G = 0.0;
    double Gamma = 0.0;
    double L = 0.0;
    bool list_changed = false;
    double turnover = 0.0;
};

/// The result of one (k, mode, genfn) backtest over a panel.
struct RunSeries {
    int k = 0;
    Mode mode = Mode::multiplicative;
    GenFnKind genfn = GenFnKind::entropy;
    std::vector<SeriesRow> rows;
    LeakageLedger ledger;
    std::size_t change_days = 0;
    double wall_ms = 0.0;
};

struct RunOutput {
    RunConfig config;
    std::size_t panel_d = 0;
    std::size_t panel_days = 0;
    std::optional<Date> first_date, last_date;
    bool returns_consistent = true;
    std::vector<RunSeries> series;
    std::vector<std::string> written_files; // filled by emission, relative to output_dir
};

/// Drive the engine over the whole panel for one k. Does not touch the
/// filesystem. Errors out of the engine are rethrown with "k=..., mode=..."
/// prepended so sweep failures identify the offending run.
RunSeries run_single(const MarketPanel& panel, int k, Mode mode, GenFnKind genfn);

/// Execute the full request: load or synthesize the panel, apply the window,
/// run every k, then emit one CSV per k plus summary.json into
/// config.output_dir. Deterministic given identical inputs: rerunning the
/// same config yields byte-identical CSVs.
RunOutput run_backtest(const RunConfig& config);

/// Write the CSVs and summary for an assembled output. Files are staged with
/// a .tmp suffix and renamed into place; on failure anything already written
/// is removed. Fills output.written_files.
void emit_series(RunOutput& output);

/// FNV-1a 64-bit over a byte string; the summary records this for every CSV
/// so reruns can be compared without keeping the files around.
std::uint64_t fnv1a64(std::string_view bytes);

std::string csv_filename(int k, Mode mode);

} // namespace fgp

#endif
