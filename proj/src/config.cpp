#include "qeraser/config.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qeraser {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_double(const std::string& key, const std::string& value, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, "invalid number for key '" + key + "': " + value);
  }
  if (pos != value.size() || !std::isfinite(v))
    throw ConfigError(line, "invalid number for key '" + key + "': " + value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value,
                        int line) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, "invalid integer for key '" + key + "': " + value);
  }
  if (pos != value.size())
    throw ConfigError(line, "invalid integer for key '" + key + "': " + value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
  const std::string v = lower(value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(line, "invalid boolean for key '" + key + "': " + value);
}

void require(bool ok, const std::string& key, const std::string& why, int line) {
  if (!ok)
    throw ConfigError(line, "value out of range for key '" + key + "': " + why);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Emits value/unit such that multiplying the parsed number by `unit` restores
// `value` bit-exactly; the rounded quotient can be one ulp off, so the
// neighbors are probed.
std::string format_scaled(double value, double unit) {
  const double q = value / unit;
  for (double candidate :
       {q, std::nextafter(q, -std::numeric_limits<double>::infinity()),
        std::nextafter(q, std::numeric_limits<double>::infinity())}) {
    if (candidate * unit == value) return format_double(candidate);
  }
  return format_double(q);
}

}  // namespace

const char* run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::Ti: return "ti";
    case RunMode::Oracle: return "oracle";
    case RunMode::Wavepacket: return "wavepacket";
    case RunMode::Mc: return "mc";
    case RunMode::Crosscheck: return "crosscheck";
  }
  return "?";
}

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

void apply_setting(RunConfig& cfg, const std::string& raw_key,
                   const std::string& raw_value, int line) {
  const std::string key = lower(trim(raw_key));
  const std::string value = trim(raw_value);
  if (key.empty()) throw ConfigError(line, "empty key");
  if (value.empty()) throw ConfigError(line, "empty value for key '" + key + "'");

  if (key == "mode") {
    const std::string m = lower(value);
    if (m == "ti") cfg.mode = RunMode::Ti;
    else if (m == "oracle") cfg.mode = RunMode::Oracle;
    else if (m == "wavepacket") cfg.mode = RunMode::Wavepacket;
    else if (m == "mc") cfg.mode = RunMode::Mc;
    else if (m == "crosscheck") cfg.mode = RunMode::Crosscheck;
    else throw ConfigError(line, "unknown mode: " + value);
  } else if (key == "geometry.a_mm") {
    const double v = parse_double(key, value, line);
    require(v > 0.0, key, "slit width must be > 0", line);
    cfg.geometry.slit_width = v * 1e-3;
  } else if (key == "geometry.d_mm") {
    const double v = parse_double(key, value, line);
    require(v >= 0.0, key, "separation must be >= 0", line);
    cfg.geometry.slit_separation = v * 1e-3;
  } else if (key == "geometry.lambda_nm") {
    const double v = parse_double(key, value, line);
    require(v > 0.0, key, "wavelength must be > 0", line);
    cfg.geometry.wavelength = v * 1e-9;
  } else if (key == "geometry.f_m") {
    const double v = parse_double(key, value, line);
    require(v > 0.0, key, "focal length must be > 0", line);
    cfg.geometry.focal_length = v;
  } else if (key == "grid.x_min_mm") {
    cfg.x_min = parse_double(key, value, line) * 1e-3;
  } else if (key == "grid.x_max_mm") {
    cfg.x_max = parse_double(key, value, line) * 1e-3;
  } else if (key == "grid.points") {
    const std::uint64_t v = parse_u64(key, value, line);
    require(v >= 2, key, "grid needs at least 2 points", line);
    cfg.grid_points = static_cast<int>(v);
  } else if (key == "channels") {
    std::array<bool, 4> selected = {false, false, false, false};
    std::stringstream ss(lower(value));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item == "d1") selected[0] = true;
      else if (item == "d2") selected[1] = true;
      else if (item == "d3") selected[2] = true;
      else if (item == "d4") selected[3] = true;
      else throw ConfigError(line, "unknown channel: " + item);
    }
    cfg.channels = selected;
  } else if (key == "detector.eta_d1" || key == "detector.eta_d2" ||
             key == "detector.eta_d3" || key == "detector.eta_d4") {
    const double v = parse_double(key, value, line);
    require(v >= 0.0 && v <= 1.0, key, "efficiency must be in [0, 1]", line);
    cfg.eta[key.back() - '1'] = v;
  } else if (key == "detector.phi_rad") {
    cfg.phi = parse_double(key, value, line);
  } else if (key == "bandwidth.delta_lambda_nm") {
    const double v = parse_double(key, value, line);
    require(v >= 0.0, key, "bandwidth must be >= 0", line);
    cfg.delta_lambda = v * 1e-9;
  } else if (key == "pump.omega_p_per_s") {
    const double v = parse_double(key, value, line);
    require(v >= 0.0, key, "pump rate must be >= 0", line);
    cfg.pump.omega_p = v;
  } else if (key == "pump.theta_rad") {
    cfg.pump.theta = parse_double(key, value, line);
  } else if (key == "pump.t0_ns") {
    const double v = parse_double(key, value, line);
    require(v >= 0.0, key, "time must be >= 0", line);
    cfg.pump_t0 = v * 1e-9;
  } else if (key == "pump.t_idler_ns") {
    const double v = parse_double(key, value, line);
    require(v >= 0.0, key, "time must be >= 0", line);
    cfg.pump_t_idler = v * 1e-9;
  } else if (key == "pump.window_ns") {
    const double v = parse_double(key, value, line);
    require(v > 0.0, key, "integration window must be > 0", line);
    cfg.pump.window = v * 1e-9;
  } else if (key == "mc.trials") {
    const std::uint64_t v = parse_u64(key, value, line);
    require(v >= 1, key, "trials must be >= 1", line);
    cfg.mc_trials = v;
  } else if (key == "mc.bins") {
    const std::uint64_t v = parse_u64(key, value, line);
    require(v >= 2, key, "bins must be >= 2", line);
    cfg.mc_bins = static_cast<int>(v);
  } else if (key == "mc.seed") {
    cfg.mc_seed = parse_u64(key, value, line);
  } else if (key == "wavepacket.omega_rad_per_s") {
    const double v = parse_double(key, value, line);
    require(v > 0.0, key, "frequency must be > 0", line);
    cfg.wavepacket.omega = v;
  } else if (key == "wavepacket.gamma_per_s") {
    const double v = parse_double(key, value, line);
    require(v >= 0.0, key, "decay rate must be >= 0", line);
    cfg.wavepacket.gamma = v;
  } else if (key == "wavepacket.eps0") {
    cfg.wavepacket.amplitude_const = parse_double(key, value, line);
  } else if (key == "wavepacket.dipole_angle_rad") {
    cfg.wavepacket.dipole_angle = parse_double(key, value, line);
  } else if (key == "wavepacket.length_m") {
    const double v = parse_double(key, value, line);
    require(v > 0.0, key, "arm length must be > 0", line);
    cfg.wp_length = v;
  } else if (key == "wavepacket.delta_t_s") {
    cfg.wp_delta_t = parse_double(key, value, line);
  } else if (key == "wavepacket.eval_t_ns") {
    const double v = parse_double(key, value, line);
    // Any negative value selects the default evaluation time L/c.
    cfg.wp_eval_t = v < 0.0 ? -1.0 : v * 1e-9;
  } else if (key == "wavepacket.suppress_advanced") {
    cfg.suppress_advanced = parse_bool(key, value, line);
  } else if (key == "output.path") {
    cfg.output_path = value;
  } else if (key == "output.per_channel") {
    cfg.output_per_channel = parse_bool(key, value, line);
  } else {
    throw ConfigError(line, "unknown key: " + key);
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool omega_set = false;
  bool mode_set = false;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "expected key = value");
    const std::string key = lower(trim(stripped.substr(0, eq)));
    if (key == "mode") mode_set = true;
    if (key == "wavepacket.omega_rad_per_s") omega_set = true;
    apply_setting(cfg, key, stripped.substr(eq + 1), line);
  }
  if (!mode_set) throw ConfigError(0, "missing mode");
  if (!omega_set)
    cfg.wavepacket.omega =
        2.0 * std::numbers::pi * kSpeedOfLight / cfg.geometry.wavelength;
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void RunConfig::validate() const {
  try {
    geometry.validate();
    pump.validate();
    wavepacket.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  if (!(x_min < x_max)) throw ConfigError(0, "grid.x_min_mm must be < grid.x_max_mm");
  if (grid_points < 2) throw ConfigError(0, "grid.points must be >= 2");
  if (delta_lambda >= geometry.wavelength)
    throw ConfigError(0, "bandwidth.delta_lambda_nm must be < lambda");
  if (!(channels[0] || channels[1] || channels[2] || channels[3]))
    throw ConfigError(0, "channels: at least one detector required");
  if (pump_t0 < 0.0 || pump_t_idler < 0.0)
    throw ConfigError(0, "pump times must be >= 0");
  if (!(wp_length > 0.0)) throw ConfigError(0, "wavepacket.length_m must be > 0");
}

double RunConfig::wavepacket_eval_time() const {
  return wp_eval_t >= 0.0 ? wp_eval_t : wp_length / kSpeedOfLight;
}

McConfig RunConfig::mc_config() const {
  McConfig mc;
  mc.trials = mc_trials;
  mc.x_min = x_min;
  mc.x_max = x_max;
  mc.bins = mc_bins;
  mc.seed = mc_seed;
  mc.eta = eta;
  mc.delta_lambda = delta_lambda;
  mc.phi = phi;
  mc.geometry = geometry;
  return mc;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "mode = " << run_mode_name(cfg.mode) << "\n";
  out << "geometry.a_mm = " << format_scaled(cfg.geometry.slit_width, 1e-3) << "\n";
  out << "geometry.d_mm = " << format_scaled(cfg.geometry.slit_separation, 1e-3) << "\n";
  out << "geometry.lambda_nm = " << format_scaled(cfg.geometry.wavelength, 1e-9) << "\n";
  out << "geometry.f_m = " << format_double(cfg.geometry.focal_length) << "\n";
  out << "grid.x_min_mm = " << format_scaled(cfg.x_min, 1e-3) << "\n";
  out << "grid.x_max_mm = " << format_scaled(cfg.x_max, 1e-3) << "\n";
  out << "grid.points = " << cfg.grid_points << "\n";
  out << "channels = ";
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (!cfg.channels[i]) continue;
    if (!first) out << ",";
    out << "d" << (i + 1);
    first = false;
  }
  out << "\n";
  for (int i = 0; i < 4; ++i)
    out << "detector.eta_d" << (i + 1) << " = " << format_double(cfg.eta[i]) << "\n";
  out << "detector.phi_rad = " << format_double(cfg.phi) << "\n";
  out << "bandwidth.delta_lambda_nm = " << format_scaled(cfg.delta_lambda, 1e-9) << "\n";
  out << "pump.omega_p_per_s = " << format_double(cfg.pump.omega_p) << "\n";
  out << "pump.theta_rad = " << format_double(cfg.pump.theta) << "\n";
  out << "pump.t0_ns = " << format_scaled(cfg.pump_t0, 1e-9) << "\n";
  out << "pump.t_idler_ns = " << format_scaled(cfg.pump_t_idler, 1e-9) << "\n";
  out << "pump.window_ns = " << format_scaled(cfg.pump.window, 1e-9) << "\n";
  out << "mc.trials = " << cfg.mc_trials << "\n";
  out << "mc.bins = " << cfg.mc_bins << "\n";
  out << "mc.seed = " << cfg.mc_seed << "\n";
  out << "wavepacket.omega_rad_per_s = " << format_double(cfg.wavepacket.omega) << "\n";
  out << "wavepacket.gamma_per_s = " << format_double(cfg.wavepacket.gamma) << "\n";
  out << "wavepacket.eps0 = " << format_double(cfg.wavepacket.amplitude_const) << "\n";
  out << "wavepacket.dipole_angle_rad = "
      << format_double(cfg.wavepacket.dipole_angle) << "\n";
  out << "wavepacket.length_m = " << format_double(cfg.wp_length) << "\n";
  out << "wavepacket.delta_t_s = " << format_double(cfg.wp_delta_t) << "\n";
  out << "wavepacket.eval_t_ns = "
      << (cfg.wp_eval_t < 0.0 ? format_double(-1.0)
                              : format_scaled(cfg.wp_eval_t, 1e-9))
      << "\n";
  out << "wavepacket.suppress_advanced = "
      << (cfg.suppress_advanced ? "true" : "false") << "\n";
  out << "output.path = " << cfg.output_path << "\n";
  out << "output.per_channel = " << (cfg.output_per_channel ? "true" : "false")
      << "\n";
  return out.str();
}

}  // namespace qeraser
