#ifndef QERASER_CONFIG_HPP
#define QERASER_CONFIG_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "qeraser/geometry.hpp"
#include "qeraser/mc.hpp"
#include "qeraser/pdc.hpp"
#include "qeraser/wavepacket.hpp"

namespace qeraser {

enum class RunMode { Ti, Oracle, Wavepacket, Mc, Crosscheck };

const char* run_mode_name(RunMode m);

/// Raised by the parser with a 1-based line number (0 for programmatic sets).
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

private:
  int line_;
};

/// Full experiment configuration: flat `key = value` text with `#` comments
/// and dotted section prefixes. Units are explicit in key names and
/// converted to base SI units at parse time.
struct RunConfig {
  RunMode mode = RunMode::Ti;
  ExperimentGeometry geometry;

  std::array<bool, 4> channels = {true, true, true, true};  // D1..D4
  double x_min = -3e-3;  // [m]
  double x_max = 3e-3;   // [m]
  int grid_points = 1000;

  std::array<double, 4> eta = {1.0, 1.0, 1.0, 1.0};
  double phi = 0.0;           // [rad]
  double delta_lambda = 0.0;  // [m]

  PumpParams pump;
  double pump_t0 = 8.33e-9;      // signal flight time [s]
  double pump_t_idler = 16.33e-9;  // idler flight time, 8 ns longer [s]

  std::uint64_t mc_trials = 1000000;
  int mc_bins = 100;
  std::uint64_t mc_seed = 1;

  WavePacketParams wavepacket;
  double wp_length = 1.0;     // common arm length L [m]
  double wp_delta_t = 0.0;    // arm mismatch (L1A - L1B)/c [s]
  double wp_eval_t = -1.0;    // evaluation time [s]; < 0 means L/c
  bool suppress_advanced = false;

  std::string output_path = "pattern.csv";
  bool output_per_channel = false;

  /// Cross-module consistency checks; throws ConfigError.
  void validate() const;

  /// Evaluation time for wavepacket mode, resolving the < 0 default.
  double wavepacket_eval_time() const;

  McConfig mc_config() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the documented key = value format; unknown keys, malformed or
/// out-of-range values, and an invalid mode raise ConfigError with the
/// offending line number. The wavepacket idler frequency defaults to
/// 2 pi c / lambda unless set explicitly.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Applies one key = value assignment to an existing config.
void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value, int line = 0);

/// Emits the full key set at 17 significant digits; parse_config on the
/// result reproduces the config exactly.
std::string serialize_config(const RunConfig& cfg);

}  // namespace qeraser

#endif
