#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "qeraser/geometry.hpp"

using namespace qeraser;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("transverse wavenumber is linear in x") {
  const ExperimentGeometry g;
  const double x = 1.0e-3;
  const double expected = 2.0 * kPi * x / (g.wavelength * g.focal_length);
  CHECK(transverse_wavenumber(g, {x}) ==
        doctest::Approx(expected).epsilon(1e-15));
  CHECK(transverse_wavenumber(g, {0.0}) == 0.0);
  CHECK(transverse_wavenumber(g, {-x}) ==
        doctest::Approx(-expected).epsilon(1e-15));
}

TEST_CASE("two-path phase is k_x times the separation") {
  const ExperimentGeometry g;
  const double x = 0.37e-3;
  CHECK(two_path_phase(g, {x}) ==
        doctest::Approx(transverse_wavenumber(g, {x}) * g.slit_separation)
            .epsilon(1e-15));
}

TEST_CASE("slit envelope is a sinc with unit center") {
  const ExperimentGeometry g;
  CHECK(slit_envelope(g, {0.0}) == 1.0);

  // First envelope zero at k_x a / 2 = pi, i.e. x = lambda f / a.
  const double x_zero = g.wavelength * g.focal_length / g.slit_width;
  CHECK(std::abs(slit_envelope(g, {x_zero})) < 1e-12);

  // Generic point against a direct sinc evaluation.
  const double x = 0.9e-3;
  const double u = transverse_wavenumber(g, {x}) * g.slit_width / 2.0;
  CHECK(slit_envelope(g, {x}) ==
        doctest::Approx(std::sin(u) / u).epsilon(1e-15));

  // Even function.
  CHECK(slit_envelope(g, {x}) == slit_envelope(g, {-x}));
}

TEST_CASE("fringe period for the reference geometry") {
  const ExperimentGeometry g;
  CHECK(fringe_period(g) ==
        doctest::Approx(702.2e-9 * 1.0 / 0.7e-3).epsilon(1e-15));
  CHECK(fringe_period(g) == doctest::Approx(1.0031e-3).epsilon(1e-4));
}

TEST_CASE("geometry validation") {
  ExperimentGeometry g;
  CHECK_NOTHROW(g.validate());

  g.slit_width = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = ExperimentGeometry{};
  g.slit_separation = -1e-3;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = ExperimentGeometry{};
  g.wavelength = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = ExperimentGeometry{};
  g.focal_length = -1.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}
