#ifndef QERASER_MC_HPP
#define QERASER_MC_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qeraser/geometry.hpp"
#include "qeraser/optics.hpp"

namespace qeraser {

struct McConfig {
  std::uint64_t trials = 1000000;
  double x_min = -3e-3;  // [m]
  double x_max = 3e-3;   // [m]
  int bins = 100;
  std::uint64_t seed = 1;
  std::array<double, 4> eta = {1.0, 1.0, 1.0, 1.0};  // per detector D1..D4
  double delta_lambda = 0.0;  // [m]
  double phi = 0.0;           // [rad]
  ExperimentGeometry geometry;

  void validate() const;
};

struct CoincidenceHistogram {
  std::vector<std::array<std::uint64_t, 4>> counts;  // [bin][detector]
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;  // thinned by detector efficiency
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  std::uint64_t seed = 0;
  std::string generator;  // pseudo-random generator identification

  std::vector<double> bin_centers() const;
  std::uint64_t detector_total(Detector d) const;
};

struct SampleEvent {
  int bin = -1;
  Detector detector = Detector::D1;
  bool accepted = false;
  double x = 0.0;  // bin center [m]
};

/// Draws (bin, detector) events proportional to a joint density grid by
/// inverse CDF, then thins per-detector by efficiency. Multiple wavelength
/// components model finite bandwidth: each trial first picks one component
/// uniformly.
class EventSampler {
public:
  /// Single density grid: density[bin][detector] >= 0, not all zero.
  EventSampler(std::vector<std::array<double, 4>> density,
               std::array<double, 4> eta, double x_min, double x_max);

  /// Builds the per-wavelength density set from the analytic patterns.
  static EventSampler from_config(const McConfig& cfg);

  SampleEvent sample(std::mt19937_64& rng) const;

  int bins() const { return bins_; }

private:
  EventSampler() = default;
  void add_component(const std::vector<std::array<double, 4>>& density);

  std::vector<std::vector<double>> cdfs_;  // one flattened CDF per component
  std::array<double, 4> eta_{};
  double x_min_ = 0.0;
  double x_max_ = 0.0;
  int bins_ = 0;
};

/// Runs the full coincidence experiment. Deterministic for a fixed config:
/// trials are split into fixed-size chunks with splitmix64-derived
/// mt19937_64 sub-streams, merged in chunk order.
CoincidenceHistogram run(const McConfig& cfg);

struct CompareReport {
  double chi2 = 0.0;
  int dof = 0;
  double p_value = 0.0;
  double max_sigma_deviation = 0.0;
};

/// Pearson chi^2 of one detector's histogram row against an analytic pattern
/// sampled at the bin centers. Expected counts are the normalized analytic
/// density scaled by the row total; adjacent bins with expectation < 5 are
/// merged. Throws if fewer than 2 effective bins remain or the row is empty.
CompareReport compare(const CoincidenceHistogram& hist, Detector d,
                      const std::vector<double>& analytic);

struct LinearFit {
  double value = 0.0;  // fitted coefficient
  double sigma = 0.0;  // standard error
};

/// Amplitude of an envelope-weighted cos(k_x d) component in the detector
/// marginal (sum over D1..D4). Used for the no-signaling check: consistent
/// with zero means the D0 marginal carries no fringe.
LinearFit fit_fringe_component(const CoincidenceHistogram& hist,
                               const ExperimentGeometry& g);

/// Fringe visibility of one detector row, fitted against the model
/// C alpha^2(x) [1 + v cos(k_x d + phase_offset)].
LinearFit fit_visibility(const CoincidenceHistogram& hist, Detector d,
                         const ExperimentGeometry& g, double phase_offset);

/// k-th output of the splitmix64 stream seeded with `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k);

}  // namespace qeraser

#endif
