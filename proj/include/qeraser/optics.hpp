#ifndef QERASER_OPTICS_HPP
#define QERASER_OPTICS_HPP

#include <complex>
#include <vector>

namespace qeraser {

/// Dimensionless complex amplitude, the universal currency of the engine.
using Amplitude = std::complex<double>;

enum class Detector { D1, D2, D3, D4 };
enum class Region { A, B };

const char* detector_name(Detector d);

/// Lossless 50:50 beamsplitter with the convention of a purely imaginary
/// reflection and a purely real transmission coefficient. Any other unitary
/// convention is rejected at construction so downstream signs stay fixed.
class BeamSplitter {
public:
  BeamSplitter(Amplitude r, Amplitude t);

  /// r = i/sqrt(2), t = 1/sqrt(2).
  static BeamSplitter standard();

  Amplitude reflection() const { return r_; }
  Amplitude transmission() const { return t_; }

private:
  Amplitude r_;
  Amplitude t_;
};

/// One hop of an idler path. Mirrors and free paths carry a unit-magnitude
/// factor; mirror phase is taken as compensated.
class PathElement {
public:
  enum class Kind { Reflect, Transmit, Mirror, FreePhase };

  static PathElement reflect(const BeamSplitter& bs);
  static PathElement transmit(const BeamSplitter& bs);
  static PathElement mirror();
  static PathElement free_phase(double radians);

  Kind kind() const { return kind_; }
  Amplitude factor() const { return factor_; }

private:
  PathElement(Kind k, Amplitude f) : kind_(k), factor_(f) {}
  Kind kind_;
  Amplitude factor_;
};

struct DetectorPath {
  Detector detector;
  Region from_region;
  std::vector<PathElement> elements;
};

/// Ordered product of the element factors. Throws std::invalid_argument for
/// an empty path or a topology the Kim layout forbids (region B cannot reach
/// D3, region A cannot reach D4).
Amplitude path_amplitude(const DetectorPath& path);

/// The six physical idler paths of the Kim layout:
/// A->D1, A->D2, A->D3, B->D1, B->D2, B->D4.
std::vector<DetectorPath> kim_network();

}  // namespace qeraser

#endif
