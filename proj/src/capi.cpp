#include "qeraser.h"

#include <cstring>
#include <new>
#include <string>

#include "qeraser/config.hpp"
#include "qeraser/pdc.hpp"
#include "qeraser/run.hpp"
#include "qeraser/ti.hpp"
#include "qeraser/wavepacket.hpp"

struct qe_config {
  qeraser::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

qe_status fail(qe_status code, const std::string& msg) {
  set_error(msg);
  return code;
}

/// Runs the body, mapping C++ exceptions onto status codes.
template <typename Fn>
qe_status guarded(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const qeraser::ConfigError& e) {
    return fail(QE_ERROR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(QE_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(QE_ERROR_IO, e.what());
  } catch (const std::exception& e) {
    // File-level failures in the engine surface as runtime_error with an
    // explicit prefix; map those to IO.
    const std::string what = e.what();
    if (what.rfind("cannot write output file", 0) == 0 ||
        what.rfind("cannot open config file", 0) == 0)
      return fail(QE_ERROR_IO, what);
    return fail(QE_ERROR_RUNTIME, what);
  }
}

bool valid_detector(qe_detector d) { return d >= QE_D1 && d <= QE_D4; }

}  // namespace

extern "C" {

const char* qe_version(void) { return "0.1.0"; }

const char* qe_last_error(void) { return g_last_error.c_str(); }

qe_config* qe_config_default(void) { return new (std::nothrow) qe_config{}; }

qe_status qe_config_parse(const char* text, qe_config** out) {
  if (!out) return fail(QE_ERROR_INVALID_ARGUMENT, "out is null");
  *out = nullptr;
  if (!text) return fail(QE_ERROR_INVALID_ARGUMENT, "text is null");
  return guarded([&] {
    auto* handle = new qe_config{qeraser::parse_config(text)};
    *out = handle;
    return QE_OK;
  });
}

qe_status qe_config_load(const char* path, qe_config** out) {
  if (!out) return fail(QE_ERROR_INVALID_ARGUMENT, "out is null");
  *out = nullptr;
  if (!path) return fail(QE_ERROR_INVALID_ARGUMENT, "path is null");
  return guarded([&] {
    auto* handle = new qe_config{qeraser::load_config(path)};
    *out = handle;
    return QE_OK;
  });
}

qe_status qe_config_set(qe_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value)
    return fail(QE_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    qeraser::apply_setting(cfg->cfg, key, value);
    return QE_OK;
  });
}

qe_status qe_config_write(const qe_config* cfg, char* buf, size_t buf_size,
                          size_t* needed) {
  if (!cfg) return fail(QE_ERROR_INVALID_ARGUMENT, "cfg is null");
  if (!buf && buf_size != 0)
    return fail(QE_ERROR_INVALID_ARGUMENT, "buf is null with nonzero size");
  return guarded([&] {
    const std::string text = qeraser::serialize_config(cfg->cfg);
    if (needed) *needed = text.size();
    if (buf && buf_size > 0) {
      const size_t n = text.size() < buf_size - 1 ? text.size() : buf_size - 1;
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
    return QE_OK;
  });
}

void qe_config_free(qe_config* cfg) { delete cfg; }

qe_status qe_run(const qe_config* cfg, const char* out_path,
                 qe_report_fn report, void* user) {
  if (!cfg) return fail(QE_ERROR_INVALID_ARGUMENT, "cfg is null");
  return guarded([&] {
    qeraser::RunConfig run_cfg = cfg->cfg;
    if (out_path) run_cfg.output_path = out_path;
    qeraser::ReportSink sink = [&](const std::string& line) {
      if (report) report(line.c_str(), user);
    };
    qeraser::run(run_cfg, sink);
    return QE_OK;
  });
}

qe_status qe_ti_pattern(const qe_config* cfg, qe_detector d, double x,
                        double* out) {
  if (!cfg || !out) return fail(QE_ERROR_INVALID_ARGUMENT, "null argument");
  if (!valid_detector(d))
    return fail(QE_ERROR_INVALID_ARGUMENT, "detector out of range");
  return guarded([&] {
    const double grid[1] = {x};
    const auto values = qeraser::bandwidth_average(
        static_cast<qeraser::Detector>(d), cfg->cfg.geometry, grid,
        cfg->cfg.delta_lambda, cfg->cfg.eta[static_cast<int>(d)],
        cfg->cfg.phi);
    *out = values[0];
    return QE_OK;
  });
}

qe_status qe_oracle_rate(const qe_config* cfg, qe_detector d, double x,
                         double* out) {
  if (!cfg || !out) return fail(QE_ERROR_INVALID_ARGUMENT, "null argument");
  if (!valid_detector(d))
    return fail(QE_ERROR_INVALID_ARGUMENT, "detector out of range");
  return guarded([&] {
    *out = qeraser::averaged_joint_rate(static_cast<qeraser::Detector>(d),
                                        cfg->cfg.geometry, x, cfg->cfg.pump);
    return QE_OK;
  });
}

qe_status qe_wavepacket_intensity(const qe_config* cfg, double x,
                                  double* out) {
  if (!cfg || !out) return fail(QE_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const double c = 299792458.0;
    const qeraser::ArmLengths arms = qeraser::ArmLengths::from_lengths(
        cfg->cfg.wp_length + 0.5 * c * cfg->cfg.wp_delta_t,
        cfg->cfg.wp_length - 0.5 * c * cfg->cfg.wp_delta_t);
    const qeraser::IntensityBreakdown b =
        qeraser::intensity(cfg->cfg.wavepacket, arms, cfg->cfg.geometry, x,
                           cfg->cfg.wavepacket_eval_time());
    *out = cfg->cfg.suppress_advanced ? b.single_path + b.path_interference
                                      : b.total;
    return QE_OK;
  });
}

}  // extern "C"
