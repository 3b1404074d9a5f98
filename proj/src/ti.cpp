#include "qeraser/ti.hpp"

#include <cmath>
#include <stdexcept>

namespace qeraser {

TwoPhotonOfferWave offer_wave(const ExperimentGeometry& g, double x) {
  g.validate();
  const ScreenPoint p{x};
  const double alpha = slit_envelope(g, p);
  const double scale = alpha / std::sqrt(2.0);
  const double rel_phase = two_path_phase(g, p);
  return {scale * std::polar(1.0, rel_phase), Amplitude(scale, 0.0)};
}

TwoPhotonOfferWave propagate(const TwoPhotonOfferWave& ow, Detector channel,
                             std::span<const DetectorPath> network) {
  Amplitude factor_a(0.0, 0.0);
  Amplitude factor_b(0.0, 0.0);
  bool found = false;
  for (const DetectorPath& path : network) {
    if (path.detector != channel) continue;
    found = true;
    if (path.from_region == Region::A)
      factor_a = path_amplitude(path);
    else
      factor_b = path_amplitude(path);
  }
  if (!found) throw std::invalid_argument("propagate: channel not in network");
  return {ow.coeff_a * factor_a, ow.coeff_b * factor_b};
}

TwoPhotonOfferWave counter_wave(const TwoPhotonOfferWave& ow) {
  return {std::conj(ow.coeff_a), std::conj(ow.coeff_b)};
}

TransactionResult transaction_probability(const TwoPhotonOfferWave& propagated,
                                          const DetectorChannel& channel,
                                          double x) {
  if (channel.efficiency < 0.0 || channel.efficiency > 1.0)
    throw std::invalid_argument("channel efficiency must be in [0, 1]");
  const Amplitude a = propagated.coeff_a;
  const Amplitude b = propagated.coeff_b;
  // <A|B> = eta e^{-i phi}, <B|A> its conjugate; diagonal overlaps are 1.
  const Amplitude overlap = channel.efficiency *
                            std::polar(1.0, -channel.overlap_phase);
  const Amplitude density = std::norm(a) + std::norm(b) +
                            std::conj(a) * b * overlap +
                            std::conj(b) * a * std::conj(overlap);
  if (std::abs(density.imag()) > 1e-12)
    throw std::logic_error("transaction_probability: non-real density");
  if (density.real() < -1e-12)
    throw std::logic_error("transaction_probability: negative density");
  return {std::max(density.real(), 0.0), channel.id, x};
}

std::vector<TransactionResult> pattern(Detector channel,
                                       const ExperimentGeometry& g,
                                       std::span<const double> x_grid,
                                       double eta, double phi) {
  const auto network = kim_network();
  const DetectorChannel ch{channel, eta, phi};
  std::vector<TransactionResult> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    const auto propagated = propagate(offer_wave(g, x), channel, network);
    out.push_back(transaction_probability(propagated, ch, x));
  }
  return out;
}

std::vector<double> bandwidth_sample_wavelengths(double lambda,
                                                 double delta_lambda) {
  if (delta_lambda < 0.0 || delta_lambda >= lambda)
    throw std::invalid_argument("bandwidth: need 0 <= delta_lambda < lambda");
  return {lambda,
          lambda - delta_lambda,       lambda + delta_lambda,
          lambda - delta_lambda / 2.0, lambda + delta_lambda / 2.0,
          lambda - delta_lambda / 4.0, lambda + delta_lambda / 4.0};
}

std::vector<double> bandwidth_average(Detector channel,
                                      const ExperimentGeometry& g,
                                      std::span<const double> x_grid,
                                      double delta_lambda, double eta,
                                      double phi) {
  const auto lambdas = bandwidth_sample_wavelengths(g.wavelength, delta_lambda);
  if (delta_lambda == 0.0) {
    const auto pat = pattern(channel, g, x_grid, eta, phi);
    std::vector<double> out(pat.size());
    for (std::size_t i = 0; i < pat.size(); ++i) out[i] = pat[i].probability_density;
    return out;
  }
  std::vector<double> mean(x_grid.size(), 0.0);
  for (double lambda : lambdas) {
    ExperimentGeometry gl = g;
    gl.wavelength = lambda;
    const auto pat = pattern(channel, gl, x_grid, eta, phi);
    for (std::size_t i = 0; i < mean.size(); ++i)
      mean[i] += pat[i].probability_density;
  }
  for (double& v : mean) v /= static_cast<double>(lambdas.size());
  return mean;
}

}  // namespace qeraser
