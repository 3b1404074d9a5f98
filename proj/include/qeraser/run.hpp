#ifndef QERASER_RUN_HPP
#define QERASER_RUN_HPP

#include <functional>
#include <string>
#include <vector>

#include "qeraser/config.hpp"

namespace qeraser {

using ReportSink = std::function<void(const std::string& line)>;

struct RunOutcome {
  std::vector<std::string> files_written;
};

/// Uniform x grid of cfg.grid_points over [x_min, x_max].
std::vector<double> make_grid(const RunConfig& cfg);

/// Dispatches on cfg.mode, writes CSV output (17 significant digits, '\n'
/// line endings, locale independent) and streams human-readable report
/// lines to the sink. Throws ConfigError for config problems and
/// std::runtime_error / std::logic_error for runtime failures.
RunOutcome run(const RunConfig& cfg, const ReportSink& report);

}  // namespace qeraser

#endif
