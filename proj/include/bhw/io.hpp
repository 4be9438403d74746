#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bhw/analysis.hpp"
#include "bhw/controls.hpp"
#include "bhw/gradient.hpp"
#include "bhw/optimizer.hpp"

namespace bhw {

/// Solution files: two header lines `duration=<T>` and `dt=<dt>`, then
/// one `position amplitude` row per step at full round-trip precision.
void write_solution(std::ostream& os, const ControlSequence& controls);
void write_solution_file(const std::filesystem::path& path,
                         const ControlSequence& controls);

/// Strict reader: itemizes bad rows (column count, non-finite values,
/// out-of-bounds samples) and checks the row count against
/// round(duration/dt).
ControlSequence read_solution(std::istream& is, const TweezerParams& bounds,
                              const std::string& origin = "<stream>");
ControlSequence read_solution_file(const std::filesystem::path& path,
                                   const TweezerParams& bounds);

void write_gradcheck_report(std::ostream& os, const GradcheckReport& report);

void write_run_record(std::ostream& os, const RunRecord& record);

/// Sweep persistence: a per-sweep directory with summary.tsv plus one
/// record and one final-controls file per duration.
void write_sweep(const std::filesystem::path& directory, const SweepResult& sweep);

/// Reads back what write_sweep stored (summary and final controls; the
/// per-iteration traces are not needed by the analysis reports).
SweepResult read_sweep(const std::filesystem::path& directory,
                       const TweezerParams& bounds);

/// All sweep_* directories under a results root, in index order.
std::vector<std::filesystem::path> list_sweep_dirs(const std::filesystem::path& root);

void write_fidelity_table(std::ostream& os, const FidelityDurationTable& table);

void write_heatmap(const std::filesystem::path& directory, const Heatmap& map);

std::string format_full(double v);

}  // namespace bhw
