#include "qeraser/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qeraser {

void ExperimentGeometry::validate() const {
  if (!(slit_width > 0.0)) throw std::invalid_argument("geometry: a must be > 0");
  if (!(slit_separation >= 0.0)) throw std::invalid_argument("geometry: d must be >= 0");
  if (!(wavelength > 0.0)) throw std::invalid_argument("geometry: lambda must be > 0");
  if (!(focal_length > 0.0)) throw std::invalid_argument("geometry: f must be > 0");
}

double transverse_wavenumber(const ExperimentGeometry& g, ScreenPoint p) {
  return 2.0 * std::numbers::pi * p.x / (g.wavelength * g.focal_length);
}

double slit_envelope(const ExperimentGeometry& g, ScreenPoint p) {
  const double u = 0.5 * transverse_wavenumber(g, p) * g.slit_width;
  if (u == 0.0) return 1.0;
  return std::sin(u) / u;
}

double two_path_phase(const ExperimentGeometry& g, ScreenPoint p) {
  return transverse_wavenumber(g, p) * g.slit_separation;
}

double fringe_period(const ExperimentGeometry& g) {
  return g.wavelength * g.focal_length / g.slit_separation;
}

}  // namespace qeraser
