#include "bhw/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bhw/errors.hpp"

namespace bhw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << what;
  throw ParseError(os.str());
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    if (!std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "': expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  long long v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    fail(origin, line, "key '" + key + "': expected an integer, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(origin, line, "key '" + key + "': expected true/false, got '" + value + "'");
}

// wells are written center:depth:waist, comma-separated
PotentialAssembly parse_wells(const std::string& origin, int line,
                              const std::string& key, const std::string& value) {
  PotentialAssembly assembly;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    GaussianWell w;
    std::stringstream is(item);
    std::string part;
    double* fields[3] = {&w.center, &w.depth, &w.waist};
    int i = 0;
    while (std::getline(is, part, ':')) {
      if (i >= 3) fail(origin, line, "key '" + key + "': too many fields in '" + item + "'");
      *fields[i++] = parse_double(origin, line, key, trim(part));
    }
    if (i != 3)
      fail(origin, line, "key '" + key + "': well '" + item +
                             "' needs center:depth:waist");
    assembly.wells.push_back(w);
  }
  if (assembly.wells.empty())
    fail(origin, line, "key '" + key + "': no wells given");
  return assembly;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_wells(const PotentialAssembly& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.wells.size(); ++i) {
    if (i) os << ", ";
    os << format_double(a.wells[i].center) << ":" << format_double(a.wells[i].depth)
       << ":" << format_double(a.wells[i].waist);
  }
  return os.str();
}

}  // namespace

DerivativeMode parse_mode(const std::string& text) {
  if (text == "correct") return DerivativeMode::kCorrect;
  if (text == "sign_flipped_amplitude" || text == "sign_flipped")
    return DerivativeMode::kSignFlippedAmplitude;
  throw ParseError("unknown derivative mode '" + text +
                   "' (expected correct | sign_flipped_amplitude)");
}

SeedKind parse_seed_kind(const std::string& text) {
  if (text == "sinusoidal") return SeedKind::kSinusoidal;
  if (text == "hilo") return SeedKind::kHiloHeuristic;
  if (text == "player_yellow") return SeedKind::kPlayerYellow;
  if (text == "player_blue") return SeedKind::kPlayerBlueTagged;
  throw ParseError("unknown seed kind '" + text +
                   "' (expected sinusoidal | hilo | player_yellow | player_blue)");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;

  // Grid fields arrive separately; rebuild the Grid at the end.
  int n_points = cfg.problem.physics.grid.n_points();
  double x_min = cfg.problem.physics.grid.x_min();
  double x_max = cfg.problem.physics.grid.x_max();
  std::string initial_wells_text = "static";
  std::string target_wells_text = "tweezer_home";
  PotentialAssembly initial_assembly, target_assembly;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "problem" && section != "optimizer" && section != "sweep" &&
          section != "seeding" && section != "output")
        fail(origin, line, "unknown section '" + section + "'");
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(origin, line, "empty key");
    if (value.empty()) fail(origin, line, "key '" + key + "': empty value");
    if (section.empty()) fail(origin, line, "key '" + key + "' before any [section]");

    auto num = [&] { return parse_double(origin, line, key, value); };
    auto integer = [&] { return parse_int(origin, line, key, value); };

    if (section == "problem") {
      if (key == "n_points") n_points = static_cast<int>(integer());
      else if (key == "x_min") x_min = num();
      else if (key == "x_max") x_max = num();
      else if (key == "mass") cfg.problem.physics.mass = num();
      else if (key == "dt") cfg.problem.physics.dt = num();
      else if (key == "waist") cfg.problem.tweezer.waist = num();
      else if (key == "amplitude_min") cfg.problem.tweezer.amplitude_min = num();
      else if (key == "amplitude_max") cfg.problem.tweezer.amplitude_max = num();
      else if (key == "position_min") cfg.problem.tweezer.position_min = num();
      else if (key == "position_max") cfg.problem.tweezer.position_max = num();
      else if (key == "home_position") cfg.problem.home_position = num();
      else if (key == "atom_position") cfg.problem.atom_position = num();
      else if (key == "static_wells")
        cfg.problem.physics.static_assembly = parse_wells(origin, line, key, value);
      else if (key == "initial_wells") {
        initial_wells_text = value;
        if (value != "static") initial_assembly = parse_wells(origin, line, key, value);
      } else if (key == "target_wells") {
        target_wells_text = value;
        if (value != "tweezer_home") target_assembly = parse_wells(origin, line, key, value);
      } else
        fail(origin, line, "unknown key '" + key + "' in [problem]");
    } else if (section == "optimizer") {
      if (key == "lr_position") cfg.optimizer.lr_position = num();
      else if (key == "lr_amplitude") cfg.optimizer.lr_amplitude = num();
      else if (key == "cap_position") cfg.optimizer.cap_position = num();
      else if (key == "cap_amplitude") cfg.optimizer.cap_amplitude = num();
      else if (key == "max_iterations") cfg.optimizer.max_iterations = static_cast<int>(integer());
      else if (key == "fidelity_target") cfg.optimizer.fidelity_target = num();
      else if (key == "mode") {
        try {
          cfg.optimizer.mode = parse_mode(value);
        } catch (const ParseError& e) {
          fail(origin, line, e.what());
        }
      } else if (key == "amplitude_frozen")
        cfg.optimizer.amplitude_frozen = parse_bool(origin, line, key, value);
      else
        fail(origin, line, "unknown key '" + key + "' in [optimizer]");
    } else if (section == "sweep") {
      if (key == "t_start") cfg.sweep.t_start = num();
      else if (key == "t_end") cfg.sweep.t_end = num();
      else if (key == "t_decrement") cfg.sweep.t_decrement = num();
      else if (key == "abort_fidelity") cfg.sweep.abort_fidelity = num();
      else if (key == "iteration_budget")
        cfg.sweep.iteration_budget_per_duration = static_cast<int>(integer());
      else
        fail(origin, line, "unknown key '" + key + "' in [sweep]");
    } else if (section == "seeding") {
      if (key == "rng_seed") cfg.seeding.rng_seed = static_cast<std::uint64_t>(integer());
      else if (key == "n_harmonics") cfg.seeding.n_harmonics = static_cast<int>(integer());
      else if (key == "sigma_position") cfg.seeding.sigma_position = num();
      else if (key == "sigma_amplitude") cfg.seeding.sigma_amplitude = num();
      else if (key == "kind") {
        try {
          cfg.seeding.kind = parse_seed_kind(value);
        } catch (const ParseError& e) {
          fail(origin, line, e.what());
        }
      } else
        fail(origin, line, "unknown key '" + key + "' in [seeding]");
    } else if (section == "output") {
      if (key == "directory") cfg.output_directory = value;
      else
        fail(origin, line, "unknown key '" + key + "' in [output]");
    }
  }

  try {
    cfg.problem.physics.grid = Grid(n_points, x_min, x_max);
  } catch (const Error& e) {
    throw ParseError(origin + ": invalid grid: " + e.what());
  }
  if (initial_wells_text != "static") cfg.problem.initial_state = StateSpec{initial_assembly};
  if (target_wells_text != "tweezer_home") cfg.problem.target_state = StateSpec{target_assembly};
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void write_config(std::ostream& os, const RunConfig& cfg) {
  const auto& grid = cfg.problem.physics.grid;
  os << "[problem]\n";
  os << "n_points = " << grid.n_points() << "\n";
  os << "x_min = " << format_double(grid.x_min()) << "\n";
  os << "x_max = " << format_double(grid.x_max()) << "\n";
  os << "mass = " << format_double(cfg.problem.physics.mass) << "\n";
  os << "dt = " << format_double(cfg.problem.physics.dt) << "\n";
  os << "waist = " << format_double(cfg.problem.tweezer.waist) << "\n";
  os << "amplitude_min = " << format_double(cfg.problem.tweezer.amplitude_min) << "\n";
  os << "amplitude_max = " << format_double(cfg.problem.tweezer.amplitude_max) << "\n";
  os << "position_min = " << format_double(cfg.problem.tweezer.position_min) << "\n";
  os << "position_max = " << format_double(cfg.problem.tweezer.position_max) << "\n";
  os << "home_position = " << format_double(cfg.problem.home_position) << "\n";
  os << "atom_position = " << format_double(cfg.problem.atom_position) << "\n";
  os << "static_wells = " << format_wells(cfg.problem.physics.static_assembly) << "\n";
  os << "initial_wells = "
     << (cfg.problem.initial_state ? format_wells(cfg.problem.initial_state->assembly)
                                   : std::string("static"))
     << "\n";
  os << "target_wells = "
     << (cfg.problem.target_state ? format_wells(cfg.problem.target_state->assembly)
                                  : std::string("tweezer_home"))
     << "\n";
  os << "\n[optimizer]\n";
  os << "lr_position = " << format_double(cfg.optimizer.lr_position) << "\n";
  os << "lr_amplitude = " << format_double(cfg.optimizer.lr_amplitude) << "\n";
  os << "cap_position = " << format_double(cfg.optimizer.cap_position) << "\n";
  os << "cap_amplitude = " << format_double(cfg.optimizer.cap_amplitude) << "\n";
  os << "max_iterations = " << cfg.optimizer.max_iterations << "\n";
  os << "fidelity_target = " << format_double(cfg.optimizer.fidelity_target) << "\n";
  os << "mode = " << to_string(cfg.optimizer.mode) << "\n";
  os << "amplitude_frozen = " << (cfg.optimizer.amplitude_frozen ? "true" : "false") << "\n";
  os << "\n[sweep]\n";
  os << "t_start = " << format_double(cfg.sweep.t_start) << "\n";
  os << "t_end = " << format_double(cfg.sweep.t_end) << "\n";
  os << "t_decrement = " << format_double(cfg.sweep.t_decrement) << "\n";
  os << "abort_fidelity = " << format_double(cfg.sweep.abort_fidelity) << "\n";
  os << "iteration_budget = " << cfg.sweep.iteration_budget_per_duration << "\n";
  os << "\n[seeding]\n";
  os << "rng_seed = " << cfg.seeding.rng_seed << "\n";
  os << "n_harmonics = " << cfg.seeding.n_harmonics << "\n";
  os << "sigma_position = " << format_double(cfg.seeding.sigma_position) << "\n";
  os << "sigma_amplitude = " << format_double(cfg.seeding.sigma_amplitude) << "\n";
  os << "kind = " << to_string(cfg.seeding.kind) << "\n";
  os << "\n[output]\n";
  os << "directory = " << cfg.output_directory << "\n";
}

std::string config_to_string(const RunConfig& cfg) {
  std::ostringstream os;
  write_config(os, cfg);
  return os.str();
}

}  // namespace bhw
