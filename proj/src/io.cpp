#include "bhw/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bhw/errors.hpp"

namespace bhw {

namespace fs = std::filesystem;

std::string format_full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_solution(std::ostream& os, const ControlSequence& c) {
  os << "duration=" << format_full(c.duration) << "\n";
  os << "dt=" << format_full(c.dt) << "\n";
  for (std::size_t j = 0; j < c.n_steps(); ++j)
    os << format_full(c.positions[j]) << " " << format_full(c.amplitudes[j]) << "\n";
}

void write_solution_file(const fs::path& path, const ControlSequence& c) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path.string());
  write_solution(os, c);
}

namespace {

double parse_header_value(const std::string& line, const std::string& key,
                          const std::string& origin, int line_no) {
  if (line.rfind(key + "=", 0) != 0)
    throw ParseError(origin + ":" + std::to_string(line_no) + ": expected '" +
                     key + "=<value>', got '" + line + "'");
  try {
    std::size_t pos = 0;
    const std::string v = line.substr(key.size() + 1);
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": bad " + key +
                     " value in '" + line + "'");
  }
}

}  // namespace

ControlSequence read_solution(std::istream& is, const TweezerParams& bounds,
                              const std::string& origin) {
  std::string line;
  int line_no = 0;

  auto next_content_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto e = line.find_last_not_of(" \t\r");
      line = line.substr(b, e - b + 1);
      return true;
    }
    return false;
  };

  if (!next_content_line())
    throw ParseError(origin + ": empty solution file");
  ControlSequence c;
  c.duration = parse_header_value(line, "duration", origin, line_no);
  if (!next_content_line())
    throw ParseError(origin + ": missing dt header");
  c.dt = parse_header_value(line, "dt", origin, line_no);
  if (!(c.dt > 0)) throw ParseError(origin + ": dt must be positive");

  std::vector<std::string> problems;
  while (next_content_line()) {
    std::istringstream row(line);
    double p = 0, a = 0;
    std::string extra;
    if (!(row >> p >> a) || (row >> extra)) {
      problems.push_back("row " + std::to_string(line_no) +
                         ": expected two columns, got '" + line + "'");
      continue;
    }
    if (!std::isfinite(p) || !std::isfinite(a)) {
      problems.push_back("row " + std::to_string(line_no) + ": non-finite value");
      continue;
    }
    if (p < bounds.position_min || p > bounds.position_max)
      problems.push_back("row " + std::to_string(line_no) + ": position " +
                         format_full(p) + " out of bounds");
    if (a < bounds.amplitude_min || a > bounds.amplitude_max)
      problems.push_back("row " + std::to_string(line_no) + ": amplitude " +
                         format_full(a) + " out of bounds");
    c.positions.push_back(p);
    c.amplitudes.push_back(a);
  }

  const std::size_t expected = steps_for(c.duration, c.dt);
  if (c.positions.size() != expected)
    problems.push_back("row count " + std::to_string(c.positions.size()) +
                       " does not match duration/dt = " + std::to_string(expected));

  if (!problems.empty()) {
    std::ostringstream os;
    os << origin << ": " << problems.size() << " problem(s):";
    for (const auto& p : problems) os << "\n  " << p;
    throw ParseError(os.str());
  }
  return c;
}

ControlSequence read_solution_file(const fs::path& path, const TweezerParams& bounds) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open solution file: " + path.string());
  return read_solution(is, bounds, path.string());
}

void write_gradcheck_report(std::ostream& os, const GradcheckReport& report) {
  os << "# gradcheck mode=" << to_string(report.mode)
     << " step_position=" << format_full(report.tolerances.step_position)
     << " step_amplitude=" << format_full(report.tolerances.step_amplitude) << "\n";
  os << "channel\tindex\tanalytic\tfinite_difference\trel_error\tsign_disagree\n";
  for (const auto& r : report.rows) {
    os << r.channel << "\t" << r.index << "\t" << format_full(r.analytic) << "\t"
       << format_full(r.finite_difference) << "\t" << format_full(r.rel_error)
       << "\t" << (r.negligible ? "-" : (r.sign_disagree ? "yes" : "no")) << "\n";
  }
  os << "# positions: " << report.sign_disagreements('p') << "/" << report.checked('p')
     << " sign disagreements\n";
  os << "# amplitudes: " << report.sign_disagreements('A') << "/"
     << report.checked('A') << " sign disagreements\n";
}

void write_run_record(std::ostream& os, const RunRecord& record) {
  os << "# iterations=" << record.iterations
     << " termination=" << to_string(record.termination);
  if (!record.diagnostic.empty()) os << " diagnostic=" << record.diagnostic;
  os << "\n";
  os << "iteration\tfidelity\tmean_amplitude\n";
  for (std::size_t i = 0; i < record.fidelity_trace.size(); ++i)
    os << i << "\t" << format_full(record.fidelity_trace[i]) << "\t"
       << format_full(record.mean_amplitude_trace[i]) << "\n";
}

namespace {

std::string duration_tag(double duration) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << duration;
  return os.str();
}

}  // namespace

void write_sweep(const fs::path& directory, const SweepResult& sweep) {
  fs::create_directories(directory);
  std::ofstream summary(directory / "summary.tsv");
  if (!summary) throw Error("cannot write sweep summary in " + directory.string());
  summary << "duration\tbest_fidelity\tfinal_fidelity\titerations\ttermination\t"
             "final_mean_amplitude\n";
  for (const auto& e : sweep.entries) {
    summary << format_full(e.duration) << "\t" << format_full(e.best_fidelity) << "\t"
            << format_full(e.record.final_fidelity()) << "\t" << e.record.iterations
            << "\t" << to_string(e.record.termination) << "\t"
            << format_full(mean_amplitude(e.final_controls)) << "\n";

    const std::string tag = duration_tag(e.duration);
    std::ofstream rec(directory / ("record_" + tag + ".tsv"));
    write_run_record(rec, e.record);
    write_solution_file(directory / ("controls_" + tag + ".sol"), e.final_controls);
  }
  std::ofstream status(directory / "status.tsv");
  status << "termination_duration\taborted\n";
  status << format_full(sweep.termination_duration) << "\t"
         << (sweep.aborted ? "true" : "false") << "\n";
}

SweepResult read_sweep(const fs::path& directory, const TweezerParams& bounds) {
  std::ifstream summary(directory / "summary.tsv");
  if (!summary)
    throw ParseError("no summary.tsv in sweep directory " + directory.string());

  SweepResult sweep;
  std::string line;
  std::getline(summary, line);  // header
  int line_no = 1;
  while (std::getline(summary, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    SweepEntry e;
    double final_fid = 0, final_mean_amp = 0;
    std::string termination;
    if (!(row >> e.duration >> e.best_fidelity >> final_fid >>
          e.record.iterations >> termination >> final_mean_amp))
      throw ParseError(directory.string() + "/summary.tsv:" +
                       std::to_string(line_no) + ": malformed row");
    if (termination == "target_reached")
      e.record.termination = Termination::kTargetReached;
    else if (termination == "budget_exhausted")
      e.record.termination = Termination::kBudgetExhausted;
    else
      e.record.termination = Termination::kNumericalFailure;
    e.final_controls = read_solution_file(
        directory / ("controls_" + duration_tag(e.duration) + ".sol"), bounds);
    e.record.final_controls = e.final_controls;
    // enough of the traces for downstream reports
    e.record.fidelity_trace = {final_fid};
    e.record.mean_amplitude_trace = {final_mean_amp};
    sweep.entries.push_back(std::move(e));
  }

  std::ifstream status(directory / "status.tsv");
  if (status) {
    std::getline(status, line);
    std::string aborted;
    if (status >> sweep.termination_duration >> aborted)
      sweep.aborted = (aborted == "true");
  }
  return sweep;
}

std::vector<fs::path> list_sweep_dirs(const fs::path& root) {
  std::vector<fs::path> dirs;
  if (!fs::is_directory(root)) return dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() &&
        entry.path().filename().string().rfind("sweep_", 0) == 0)
      dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

void write_fidelity_table(std::ostream& os, const FidelityDurationTable& table) {
  os << "duration";
  for (std::size_t s = 0; s < (table.fidelities.empty() ? 0 : table.fidelities[0].size()); ++s)
    os << "\tseed_" << s;
  os << "\tbest\n";
  for (std::size_t r = 0; r < table.durations.size(); ++r) {
    os << format_full(table.durations[r]);
    for (double v : table.fidelities[r]) {
      if (std::isnan(v))
        os << "\tmissing";
      else
        os << "\t" << format_full(v);
    }
    if (std::isnan(table.best[r]))
      os << "\tmissing\n";
    else
      os << "\t" << format_full(table.best[r]) << "\n";
  }
}

void write_heatmap(const fs::path& directory, const Heatmap& map) {
  fs::create_directories(directory);
  auto write_channel = [&](const std::string& name,
                           const std::vector<std::vector<std::uint64_t>>& counts) {
    std::ofstream os(directory / ("heatmap_" + name + ".tsv"));
    for (const auto& row : counts) {
      for (std::size_t b = 0; b < row.size(); ++b)
        os << (b ? "\t" : "") << row[b];
      os << "\n";
    }
  };
  write_channel("position", map.position_counts);
  write_channel("amplitude", map.amplitude_counts);

  std::ofstream meta(directory / "heatmap_meta.tsv");
  meta << "duration\tn_steps\tn_bins\tn_solutions\tposition_min\tposition_max\t"
          "amplitude_min\tamplitude_max\n";
  meta << format_full(map.duration) << "\t" << map.n_steps << "\t" << map.n_bins
       << "\t" << map.n_solutions << "\t" << format_full(map.position_min) << "\t"
       << format_full(map.position_max) << "\t" << format_full(map.amplitude_min)
       << "\t" << format_full(map.amplitude_max) << "\n";
}

}  // namespace bhw
