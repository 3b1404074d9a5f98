// Command-line front end; talks to the engine only through the C API.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qeraser.h"

namespace {

void print_report(const char* line, void* /*user*/) {
  std::printf("%s\n", line);
}

int fail_with(qe_status status) {
  std::fprintf(stderr, "error: %s\n", qe_last_error());
  return status == QE_ERROR_PARSE || status == QE_ERROR_INVALID_ARGUMENT ? 2
                                                                         : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qeraser: delayed-choice coincidence pattern engine"};
  app.set_version_flag("--version", std::string("qeraser ") + qe_version());

  std::string config_path;
  std::string mode;
  std::string out_path;
  std::vector<std::string> sets;
  long long seed = -1;
  bool suppress_advanced = false;

  app.add_option("-c,--config", config_path, "Config file (key = value)")
      ->check(CLI::ExistingFile);
  app.add_option("-m,--mode", mode,
                 "Run mode: ti, oracle, wavepacket, mc, crosscheck");
  app.add_option("-o,--out", out_path, "Output CSV path");
  app.add_option("-s,--set", sets, "Extra key=value override (repeatable)");
  app.add_option("--seed", seed, "Monte Carlo seed override");
  app.add_flag("--suppress-advanced", suppress_advanced,
               "Drop advanced-wave cross terms in wavepacket output");

  CLI11_PARSE(app, argc, argv);

  qe_config* cfg = nullptr;
  qe_status status;
  if (!config_path.empty()) {
    status = qe_config_load(config_path.c_str(), &cfg);
    if (status != QE_OK) return fail_with(status);
  } else {
    cfg = qe_config_default();
    if (!cfg) {
      std::fprintf(stderr, "error: out of memory\n");
      return 3;
    }
  }

  auto set = [&](const char* key, const std::string& value) {
    status = qe_config_set(cfg, key, value.c_str());
    if (status != QE_OK) {
      int rc = fail_with(status);
      qe_config_free(cfg);
      std::exit(rc);
    }
  };

  if (!mode.empty()) set("mode", mode);
  if (seed >= 0) set("mc.seed", std::to_string(seed));
  if (suppress_advanced) set("wavepacket.suppress_advanced", "true");
  for (const std::string& kv : sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                   kv.c_str());
      qe_config_free(cfg);
      return 2;
    }
    set(kv.substr(0, eq).c_str(), kv.substr(eq + 1));
  }

  status = qe_run(cfg, out_path.empty() ? nullptr : out_path.c_str(),
                  print_report, nullptr);
  qe_config_free(cfg);
  if (status != QE_OK) return fail_with(status);
  return 0;
}
