#ifndef QERASER_WAVEPACKET_HPP
#define QERASER_WAVEPACKET_HPP

#include "qeraser/geometry.hpp"
#include "qeraser/optics.hpp"

namespace qeraser {

/// Spontaneous-emission-style idler wave packet parameters. The amplitude
/// constant bundles the emission prefactor except for the dipole orientation
/// factor sin(dipole_angle), which is applied separately.
struct WavePacketParams {
  // Idler angular frequency [rad/s]; default is 2 pi c / 702.2 nm.
  double omega = 2.0 * 3.141592653589793 * 299792458.0 / 702.2e-9;
  double gamma = 1e8;              // spontaneous decay rate [1/s]
  double amplitude_const = 1.0;    // emission prefactor bundle
  double dipole_angle = 1.5707963267948966;  // [rad], sin of it multiplies

  void validate() const;
  bool operator==(const WavePacketParams&) const = default;
};

/// Arm lengths from the crystal regions to detector D1.
struct ArmLengths {
  double from_a = 1.0;   // L_1A [m]
  double from_b = 1.0;   // L_1B [m]
  double common = 1.0;   // L [m], the shared approximate length
  double delta_t = 0.0;  // (L_1A - L_1B)/c [s]

  static ArmLengths symmetric(double length);
  static ArmLengths from_lengths(double from_a, double from_b);

  /// Throws unless common > 0 and delta_t matches (from_a - from_b)/c
  /// within 1e-15 s.
  void validate() const;
};

enum class WaveParts { Retarded, Advanced, Both };

/// Single-emitter photon amplitude at time t and source distance delta_r:
/// retarded branch  e^{(-i w - g/2)(t - dr/c)} theta(t - dr/c), minus the
/// advanced branch  e^{(-i w - g/2)(t + dr/c)} theta(t + dr/c).
/// The step is closed at the front: theta(0) = 1.
Amplitude photon_amplitude(const WavePacketParams& p, double t, double delta_r,
                           WaveParts parts);

/// Idler wavefunction at D1: the four-term superposition of retarded and
/// advanced branches from regions A and B, with the r,t beamsplitter factors
/// omitted and relative phase e^{i k_x d} on the region-A branch.
Amplitude d1_wavefunction(const WavePacketParams& p, const ArmLengths& arms,
                          const ExperimentGeometry& g, double x, double t,
                          WaveParts parts = WaveParts::Both);

/// |psi_1|^2 with a labeled decomposition. The groups sum to the total:
///   single_path        diagonal envelope terms, one per branch
///   path_interference  A-B cross terms within the retarded (and within the
///                      advanced) branches, cos[w dt +- k_x d]
///   cross_opposite     retarded-advanced terms across regions,
///                      oscillating at phase ~ 2 L w / c + k_x d
///   cross_same_region  retarded-advanced terms within one region,
///                      the -2 e^{-g t} cos(2 w L / c)-type contribution
struct IntensityBreakdown {
  double total = 0.0;
  double single_path = 0.0;
  double path_interference = 0.0;
  double cross_opposite = 0.0;
  double cross_same_region = 0.0;
  double cross_phase = 0.0;  // 2 w Lbar / c [rad], carried by cross terms
};

IntensityBreakdown intensity(const WavePacketParams& p, const ArmLengths& arms,
                             const ExperimentGeometry& g, double x, double t);

}  // namespace qeraser

#endif
