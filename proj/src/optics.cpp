#include "qeraser/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace qeraser {

namespace {
constexpr double kUnitarityTol = 1e-12;
}

const char* detector_name(Detector d) {
  switch (d) {
    case Detector::D1: return "d1";
    case Detector::D2: return "d2";
    case Detector::D3: return "d3";
    case Detector::D4: return "d4";
  }
  return "?";
}

BeamSplitter::BeamSplitter(Amplitude r, Amplitude t) : r_(r), t_(t) {
  const double norm_defect = std::abs(std::norm(r) + std::norm(t) - 1.0);
  if (norm_defect > kUnitarityTol)
    throw std::invalid_argument("beamsplitter: |r|^2 + |t|^2 != 1");
  const Amplitude cross = std::conj(r) * t + r * std::conj(t);
  if (std::abs(cross) > kUnitarityTol)
    throw std::invalid_argument("beamsplitter: r*t + r t* != 0");
  if (std::abs(r.real()) > kUnitarityTol || std::abs(t.imag()) > kUnitarityTol)
    throw std::invalid_argument(
        "beamsplitter: convention requires r purely imaginary, t purely real");
}

BeamSplitter BeamSplitter::standard() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return BeamSplitter(Amplitude(0.0, inv_sqrt2), Amplitude(inv_sqrt2, 0.0));
}

PathElement PathElement::reflect(const BeamSplitter& bs) {
  return PathElement(Kind::Reflect, bs.reflection());
}

PathElement PathElement::transmit(const BeamSplitter& bs) {
  return PathElement(Kind::Transmit, bs.transmission());
}

PathElement PathElement::mirror() {
  return PathElement(Kind::Mirror, Amplitude(1.0, 0.0));
}

PathElement PathElement::free_phase(double radians) {
  return PathElement(Kind::FreePhase, std::polar(1.0, radians));
}

Amplitude path_amplitude(const DetectorPath& path) {
  if (path.elements.empty())
    throw std::invalid_argument("path_amplitude: empty path");
  if (path.detector == Detector::D3 && path.from_region != Region::A)
    throw std::invalid_argument("path_amplitude: only region A reaches D3");
  if (path.detector == Detector::D4 && path.from_region != Region::B)
    throw std::invalid_argument("path_amplitude: only region B reaches D4");
  Amplitude product(1.0, 0.0);
  for (const PathElement& e : path.elements) product *= e.factor();
  return product;
}

std::vector<DetectorPath> kim_network() {
  const BeamSplitter bs = BeamSplitter::standard();
  std::vector<DetectorPath> net;
  // Region A: reflected at BSA -> D3; transmitted, mirror MA, then BS.
  net.push_back({Detector::D3, Region::A, {PathElement::reflect(bs)}});
  net.push_back({Detector::D1, Region::A,
                 {PathElement::transmit(bs), PathElement::mirror(),
                  PathElement::reflect(bs)}});
  net.push_back({Detector::D2, Region::A,
                 {PathElement::transmit(bs), PathElement::mirror(),
                  PathElement::transmit(bs)}});
  // Region B: reflected at BSB -> D4; transmitted, mirror MB, then BS.
  net.push_back({Detector::D4, Region::B, {PathElement::reflect(bs)}});
  net.push_back({Detector::D1, Region::B,
                 {PathElement::transmit(bs), PathElement::mirror(),
                  PathElement::transmit(bs)}});
  net.push_back({Detector::D2, Region::B,
                 {PathElement::transmit(bs), PathElement::mirror(),
                  PathElement::reflect(bs)}});
  return net;
}

}  // namespace qeraser
