#ifndef QERASER_TI_HPP
#define QERASER_TI_HPP

#include <span>
#include <vector>

#include "qeraser/geometry.hpp"
#include "qeraser/optics.hpp"

namespace qeraser {

/// Two-photon offer wave after signal detection at x: complex coefficients of
/// the region-A and region-B idler kets. The global phase of the B branch is
/// factored out, so only the relative phase k_x d survives in coeff_a.
struct TwoPhotonOfferWave {
  Amplitude coeff_a;
  Amplitude coeff_b;
};

struct DetectorChannel {
  Detector id = Detector::D1;
  double efficiency = 1.0;     // eta in [0, 1]
  double overlap_phase = 0.0;  // phi [rad]
};

struct TransactionResult {
  double probability_density = 0.0;  // unnormalized, >= 0
  Detector channel = Detector::D1;
  double x = 0.0;  // [m]
};

/// coeff_a = (alpha/sqrt(2)) e^{i k_x d}, coeff_b = alpha/sqrt(2).
TwoPhotonOfferWave offer_wave(const ExperimentGeometry& g, double x);

/// Multiplies each region coefficient by its path amplitude toward the given
/// detector; a coefficient with no path (B->D3, A->D4) becomes zero.
TwoPhotonOfferWave propagate(const TwoPhotonOfferWave& ow, Detector channel,
                             std::span<const DetectorPath> network);

/// Confirmation wave: the exact complex conjugate of the offer wave.
TwoPhotonOfferWave counter_wave(const TwoPhotonOfferWave& ow);

/// psi_cw* psi_ow with the A/B cross terms weighted by eta e^{-+i phi}.
/// Throws std::logic_error if the imaginary residue exceeds 1e-12 or the
/// density is negative beyond -1e-12.
TransactionResult transaction_probability(const TwoPhotonOfferWave& propagated,
                                          const DetectorChannel& channel,
                                          double x);

/// Elementwise transaction probability over an x grid.
std::vector<TransactionResult> pattern(Detector channel,
                                       const ExperimentGeometry& g,
                                       std::span<const double> x_grid,
                                       double eta = 1.0, double phi = 0.0);

/// The seven sample wavelengths used for finite-bandwidth averaging:
/// lambda, lambda +- dl, lambda +- dl/2, lambda +- dl/4.
std::vector<double> bandwidth_sample_wavelengths(double lambda,
                                                 double delta_lambda);

/// Arithmetic mean over the seven sample wavelengths of the channel pattern.
/// Requires 0 <= delta_lambda < lambda.
std::vector<double> bandwidth_average(Detector channel,
                                      const ExperimentGeometry& g,
                                      std::span<const double> x_grid,
                                      double delta_lambda, double eta = 1.0,
                                      double phi = 0.0);

}  // namespace qeraser

#endif
