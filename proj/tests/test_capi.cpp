#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qeraser.h"

namespace {

struct ConfigHandle {
  qe_config* ptr = nullptr;
  ~ConfigHandle() { qe_config_free(ptr); }
};

void collect_line(const char* line, void* user) {
  static_cast<std::vector<std::string>*>(user)->push_back(line);
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::strlen(qe_version()) > 0);
  CHECK(std::string(qe_last_error()).empty());
}

TEST_CASE("parse failures set code and message") {
  qe_config* cfg = reinterpret_cast<qe_config*>(0x1);
  CHECK(qe_config_parse("mode = nonsense\n", &cfg) == QE_ERROR_PARSE);
  CHECK(cfg == nullptr);
  CHECK(std::string(qe_last_error()).find("unknown mode") !=
        std::string::npos);

  CHECK(qe_config_parse(nullptr, &cfg) == QE_ERROR_INVALID_ARGUMENT);
  CHECK(qe_config_parse("mode = ti\n", nullptr) == QE_ERROR_INVALID_ARGUMENT);
  CHECK(qe_config_load("no/such/file.cfg", &cfg) == QE_ERROR_PARSE);
}

TEST_CASE("defaults, set, and serialization round trip") {
  ConfigHandle h;
  h.ptr = qe_config_default();
  REQUIRE(h.ptr != nullptr);

  CHECK(qe_config_set(h.ptr, "detector.phi_rad", "0.25") == QE_OK);
  CHECK(qe_config_set(h.ptr, "bogus", "1") == QE_ERROR_PARSE);
  CHECK(qe_config_set(h.ptr, nullptr, "1") == QE_ERROR_INVALID_ARGUMENT);

  size_t needed = 0;
  CHECK(qe_config_write(h.ptr, nullptr, 0, &needed) == QE_OK);
  REQUIRE(needed > 0);
  std::vector<char> buf(needed + 1);
  CHECK(qe_config_write(h.ptr, buf.data(), buf.size(), nullptr) == QE_OK);
  const std::string text(buf.data());
  CHECK(text.size() == needed);
  CHECK(text.find("detector.phi_rad = 0.25") != std::string::npos);

  ConfigHandle back;
  CHECK(qe_config_parse(text.c_str(), &back.ptr) == QE_OK);
  size_t needed2 = 0;
  CHECK(qe_config_write(back.ptr, nullptr, 0, &needed2) == QE_OK);
  CHECK(needed2 == needed);
}

TEST_CASE("truncating write stays terminated") {
  ConfigHandle h;
  h.ptr = qe_config_default();
  REQUIRE(h.ptr != nullptr);
  char tiny[8];
  size_t needed = 0;
  CHECK(qe_config_write(h.ptr, tiny, sizeof(tiny), &needed) == QE_OK);
  CHECK(tiny[7] == '\0');
  CHECK(std::strlen(tiny) <= 7);
  CHECK(needed > sizeof(tiny));
}

TEST_CASE("analytic evaluators agree with the closed form") {
  ConfigHandle h;
  CHECK(qe_config_parse("mode = ti\n", &h.ptr) == QE_OK);
  REQUIRE(h.ptr != nullptr);

  const double a = 0.3e-3, d = 0.7e-3, lambda = 702.2e-9, f = 1.0;
  const double x = 0.4e-3;
  const double kx = 2.0 * 3.141592653589793 * x / (lambda * f);
  const double u = 0.5 * kx * a;
  const double alpha = std::sin(u) / u;
  const double want =
      0.25 * alpha * alpha *
      (1.0 + std::cos(kx * d + 3.141592653589793 / 2.0));

  double got = 0.0;
  CHECK(qe_ti_pattern(h.ptr, QE_D1, x, &got) == QE_OK);
  CHECK(std::abs(got - want) < 1e-12);

  // Which-path channel: flat quarter envelope.
  CHECK(qe_ti_pattern(h.ptr, QE_D3, x, &got) == QE_OK);
  CHECK(std::abs(got - 0.25 * alpha * alpha) < 1e-12);

  CHECK(qe_ti_pattern(h.ptr, static_cast<qe_detector>(9), x, &got) ==
        QE_ERROR_INVALID_ARGUMENT);
  CHECK(qe_ti_pattern(h.ptr, QE_D1, x, nullptr) == QE_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("oracle rate and wavepacket intensity are positive and sane") {
  ConfigHandle h;
  CHECK(qe_config_parse("mode = oracle\n", &h.ptr) == QE_OK);

  double r1 = 0.0, r2 = 0.0;
  CHECK(qe_oracle_rate(h.ptr, QE_D1, 0.1e-3, &r1) == QE_OK);
  CHECK(r1 > 0.0);
  // Oracle eraser channels coincide.
  CHECK(qe_oracle_rate(h.ptr, QE_D2, 0.1e-3, &r2) == QE_OK);
  CHECK(std::abs(r1 - r2) <= 1e-9 * r1);

  double w = 0.0;
  CHECK(qe_wavepacket_intensity(h.ptr, 0.2e-3, &w) == QE_OK);
  CHECK(w >= 0.0);

  // Suppressing the advanced branches changes the intensity.
  CHECK(qe_config_set(h.ptr, "wavepacket.suppress_advanced", "true") == QE_OK);
  double w2 = 0.0;
  CHECK(qe_wavepacket_intensity(h.ptr, 0.2e-3, &w2) == QE_OK);
  CHECK(w2 != w);
}

TEST_CASE("full run through the C surface") {
  ConfigHandle h;
  CHECK(qe_config_parse("mode = ti\ngrid.points = 50\n", &h.ptr) == QE_OK);

  std::vector<std::string> lines;
  const char* out_path = "capi_run_tmp.csv";
  CHECK(qe_run(h.ptr, out_path, collect_line, &lines) == QE_OK);
  CHECK(!lines.empty());

  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "x_m,d1,d2,d3,d4");
  int rows = 0;
  std::string row;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 50);
  in.close();
  std::remove(out_path);

  // Unwritable output path surfaces as an IO error.
  CHECK(qe_run(h.ptr, "no/such/dir/out.csv", nullptr, nullptr) ==
        QE_ERROR_IO);
  CHECK(qe_run(nullptr, nullptr, nullptr, nullptr) ==
        QE_ERROR_INVALID_ARGUMENT);
}
