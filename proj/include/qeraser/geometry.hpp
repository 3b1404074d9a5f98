#ifndef QERASER_GEOMETRY_HPP
#define QERASER_GEOMETRY_HPP

namespace qeraser {

/// Kim setup geometry. The crystal regions act as slits: width a, separation
/// d, with a lens of focal length f mapping angle to screen position at D0.
struct ExperimentGeometry {
  double slit_width = 0.3e-3;        // a [m]
  double slit_separation = 0.7e-3;   // d [m]
  double wavelength = 702.2e-9;      // lambda [m], signal = idler
  double focal_length = 1.0;         // f [m]

  /// Throws std::invalid_argument unless a > 0, d >= 0, lambda > 0, f > 0.
  void validate() const;

  bool operator==(const ExperimentGeometry&) const = default;
};

struct ScreenPoint {
  double x = 0.0;  // transverse coordinate at D0 [m]
};

/// Paraxial transverse wavenumber k_x = 2 pi x / (lambda f) [rad/m].
double transverse_wavenumber(const ExperimentGeometry& g, ScreenPoint p);

/// Single-slit envelope sinc(k_x a / 2), with sinc(0) = 1.
double slit_envelope(const ExperimentGeometry& g, ScreenPoint p);

/// Relative phase k_x d between the region-A and region-B contributions.
double two_path_phase(const ExperimentGeometry& g, ScreenPoint p);

/// Fringe period lambda f / d in screen coordinates [m].
double fringe_period(const ExperimentGeometry& g);

}  // namespace qeraser

#endif
