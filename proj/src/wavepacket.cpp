#include "qeraser/wavepacket.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qeraser {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // [m/s]
// Below this |delta_t| the arms are treated as exactly equal to avoid
// catastrophic cancellation in the near-degenerate branch.
constexpr double kDeltaTThreshold = 1e-18;  // [s]

// theta(0) = 1: closed at the light front.
double unit_step(double u) { return u >= 0.0 ? 1.0 : 0.0; }

// e^{(-i w - g/2) u} theta(u)
Amplitude branch(const WavePacketParams& p, double u) {
  const double step = unit_step(u);
  if (step == 0.0) return {0.0, 0.0};
  return std::polar(std::exp(-0.5 * p.gamma * u), -p.omega * u);
}

struct Components {
  // retarded A, advanced A, retarded B, advanced B, each with its sign in
  // the superposition and all phase/prefactor factors applied.
  std::array<Amplitude, 4> value;
  std::array<double, 4> sign;
  double mean_length = 0.0;
};

Components d1_components(const WavePacketParams& p, const ArmLengths& arms,
                         const ExperimentGeometry& g, double x, double t) {
  p.validate();
  arms.validate();
  g.validate();
  double len_a = arms.from_a;
  double len_b = arms.from_b;
  if (std::abs(arms.delta_t) < kDeltaTThreshold) {
    len_a = arms.common;
    len_b = arms.common;
  }
  const double alpha = slit_envelope(g, ScreenPoint{x});
  const double prefactor =
      alpha * p.amplitude_const * std::sin(p.dipole_angle) / std::sqrt(2.0);
  const Amplitude phase_a = std::polar(1.0, two_path_phase(g, ScreenPoint{x}));

  Components c;
  c.mean_length = 0.5 * (len_a + len_b);
  c.value = {prefactor * phase_a * branch(p, t - len_a / kSpeedOfLight),
             prefactor * phase_a * branch(p, t + len_a / kSpeedOfLight),
             prefactor * branch(p, t - len_b / kSpeedOfLight),
             prefactor * branch(p, t + len_b / kSpeedOfLight)};
  c.sign = {1.0, -1.0, 1.0, -1.0};
  return c;
}

}  // namespace

void WavePacketParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("wavepacket: omega must be > 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("wavepacket: gamma must be >= 0");
}

ArmLengths ArmLengths::symmetric(double length) {
  return {length, length, length, 0.0};
}

ArmLengths ArmLengths::from_lengths(double from_a, double from_b) {
  ArmLengths arms;
  arms.from_a = from_a;
  arms.from_b = from_b;
  arms.common = 0.5 * (from_a + from_b);
  arms.delta_t = (from_a - from_b) / kSpeedOfLight;
  return arms;
}

void ArmLengths::validate() const {
  if (!(common > 0.0))
    throw std::invalid_argument("arm lengths: common length must be > 0");
  if (std::abs(delta_t - (from_a - from_b) / kSpeedOfLight) > 1e-15)
    throw std::invalid_argument("arm lengths: delta_t inconsistent");
}

Amplitude photon_amplitude(const WavePacketParams& p, double t, double delta_r,
                           WaveParts parts) {
  p.validate();
  const double eps0 = p.amplitude_const * std::sin(p.dipole_angle);
  Amplitude out(0.0, 0.0);
  if (parts != WaveParts::Advanced)
    out += branch(p, t - delta_r / kSpeedOfLight);
  if (parts != WaveParts::Retarded)
    out -= branch(p, t + delta_r / kSpeedOfLight);
  return eps0 * out;
}

Amplitude d1_wavefunction(const WavePacketParams& p, const ArmLengths& arms,
                          const ExperimentGeometry& g, double x, double t,
                          WaveParts parts) {
  const Components c = d1_components(p, arms, g, x, t);
  Amplitude psi(0.0, 0.0);
  for (int j = 0; j < 4; ++j) {
    const bool advanced = (j % 2 == 1);
    if (parts == WaveParts::Retarded && advanced) continue;
    if (parts == WaveParts::Advanced && !advanced) continue;
    psi += c.sign[j] * c.value[j];
  }
  return psi;
}

IntensityBreakdown intensity(const WavePacketParams& p, const ArmLengths& arms,
                             const ExperimentGeometry& g, double x, double t) {
  const Components c = d1_components(p, arms, g, x, t);
  enum { kRetA = 0, kAdvA = 1, kRetB = 2, kAdvB = 3 };

  auto cross = [&](int j, int k) {
    return 2.0 * c.sign[j] * c.sign[k] *
           (c.value[j] * std::conj(c.value[k])).real();
  };

  IntensityBreakdown out;
  for (int j = 0; j < 4; ++j) out.single_path += std::norm(c.value[j]);
  out.path_interference = cross(kRetA, kRetB) + cross(kAdvA, kAdvB);
  out.cross_opposite = cross(kRetA, kAdvB) + cross(kAdvA, kRetB);
  out.cross_same_region = cross(kRetA, kAdvA) + cross(kRetB, kAdvB);

  Amplitude psi(0.0, 0.0);
  for (int j = 0; j < 4; ++j) psi += c.sign[j] * c.value[j];
  out.total = std::norm(psi);
  out.cross_phase = 2.0 * p.omega * c.mean_length / kSpeedOfLight;
  return out;
}

}  // namespace qeraser
