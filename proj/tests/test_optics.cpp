#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qeraser/optics.hpp"

using namespace qeraser;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("standard beamsplitter convention") {
  const BeamSplitter bs = BeamSplitter::standard();
  CHECK(bs.reflection() == Amplitude(0.0, kInvSqrt2));
  CHECK(bs.transmission() == Amplitude(kInvSqrt2, 0.0));
  CHECK(std::norm(bs.reflection()) + std::norm(bs.transmission()) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("beamsplitter rejects non-unitary and wrong-convention inputs") {
  // Energy not conserved.
  CHECK_THROWS_AS(BeamSplitter(Amplitude(0.0, 0.8), Amplitude(0.8, 0.0)),
                  std::invalid_argument);
  // Unitary but real reflection / imaginary transmission.
  CHECK_THROWS_AS(BeamSplitter(Amplitude(kInvSqrt2, 0.0),
                               Amplitude(0.0, kInvSqrt2)),
                  std::invalid_argument);
  // Both real: r*t + t*r = 2rt != 0.
  CHECK_THROWS_AS(BeamSplitter(Amplitude(kInvSqrt2, 0.0),
                               Amplitude(kInvSqrt2, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("beamsplitter accepts any imaginary-r real-t unitary pair") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(0.05, 1.5);
  for (int i = 0; i < 50; ++i) {
    const double th = angle(rng);
    const BeamSplitter bs(Amplitude(0.0, std::sin(th)),
                          Amplitude(std::cos(th), 0.0));
    const Amplitude r = bs.reflection();
    const Amplitude t = bs.transmission();
    CHECK(std::abs(std::norm(r) + std::norm(t) - 1.0) < 1e-12);
    CHECK(std::abs(std::conj(r) * t + r * std::conj(t)) < 1e-12);
  }
}

TEST_CASE("kim network path amplitudes") {
  const auto network = kim_network();
  REQUIRE(network.size() == 6);

  auto find = [&](Detector d, Region r) -> const DetectorPath& {
    for (const auto& p : network)
      if (p.detector == d && p.from_region == r) return p;
    FAIL("missing path");
    return network[0];
  };

  const Amplitude rt(0.0, 0.5);       // one reflection, one transmission
  const Amplitude tt(0.5, 0.0);       // two transmissions
  const Amplitude r(0.0, kInvSqrt2);  // single reflection

  CHECK(std::abs(path_amplitude(find(Detector::D1, Region::A)) - rt) < 1e-15);
  CHECK(std::abs(path_amplitude(find(Detector::D1, Region::B)) - tt) < 1e-15);
  CHECK(std::abs(path_amplitude(find(Detector::D2, Region::A)) - tt) < 1e-15);
  CHECK(std::abs(path_amplitude(find(Detector::D2, Region::B)) - rt) < 1e-15);
  CHECK(std::abs(path_amplitude(find(Detector::D3, Region::A)) - r) < 1e-15);
  CHECK(std::abs(path_amplitude(find(Detector::D4, Region::B)) - r) < 1e-15);
}

TEST_CASE("kim network probability bookkeeping") {
  // Half of each region's amplitude ends in the erasing arm, a quarter in
  // each which-path detector; everything sums to unit probability per region.
  const auto network = kim_network();
  double prob_a = 0.0, prob_b = 0.0;
  for (const auto& p : network) {
    const double w = std::norm(path_amplitude(p));
    (p.from_region == Region::A ? prob_a : prob_b) += w;
  }
  CHECK(prob_a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(prob_b == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("path amplitude is multiplicative in elements") {
  const BeamSplitter bs = BeamSplitter::standard();
  DetectorPath path{Detector::D1, Region::A,
                    {PathElement::transmit(bs), PathElement::mirror(),
                     PathElement::reflect(bs)}};
  const Amplitude base = path_amplitude(path);
  const double phase = 0.813;
  path.elements.push_back(PathElement::free_phase(phase));
  const Amplitude shifted = path_amplitude(path);
  CHECK(std::abs(shifted - base * std::polar(1.0, phase)) < 1e-15);
  CHECK(std::abs(std::abs(shifted) - std::abs(base)) < 1e-15);
}

TEST_CASE("mirror and free phase preserve magnitude") {
  CHECK(std::abs(std::abs(PathElement::mirror().factor()) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(PathElement::free_phase(2.1).factor()) - 1.0) <
        1e-15);
}

TEST_CASE("forbidden topologies and empty paths throw") {
  const BeamSplitter bs = BeamSplitter::standard();
  CHECK_THROWS_AS(
      path_amplitude(DetectorPath{Detector::D1, Region::A, {}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      path_amplitude(DetectorPath{Detector::D3, Region::B,
                                  {PathElement::reflect(bs)}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      path_amplitude(DetectorPath{Detector::D4, Region::A,
                                  {PathElement::reflect(bs)}}),
      std::invalid_argument);
}

TEST_CASE("detector names") {
  CHECK(std::string(detector_name(Detector::D1)) == "d1");
  CHECK(std::string(detector_name(Detector::D4)) == "d4");
}
