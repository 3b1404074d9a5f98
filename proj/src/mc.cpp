#include "qeraser/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "qeraser/ti.hpp"

namespace qeraser {

namespace {

constexpr std::uint64_t kChunkTrials = 1 << 16;
constexpr const char* kGeneratorId = "mt19937_64/splitmix64";

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::array<double, 4>> density_grid(const ExperimentGeometry& g,
                                                const std::array<double, 4>& eta,
                                                double phi, double x_min,
                                                double x_max, int bins) {
  const double width = (x_max - x_min) / bins;
  std::vector<double> centers(bins);
  for (int b = 0; b < bins; ++b) centers[b] = x_min + (b + 0.5) * width;

  std::vector<std::array<double, 4>> density(bins);
  const std::array<Detector, 4> dets = {Detector::D1, Detector::D2,
                                        Detector::D3, Detector::D4};
  for (int d = 0; d < 4; ++d) {
    const auto pat = pattern(dets[d], g, centers, eta[d], phi);
    for (int b = 0; b < bins; ++b)
      density[b][d] = pat[b].probability_density;
  }
  return density;
}

}  // namespace

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t state = seed;
  std::uint64_t z = 0;
  for (std::uint64_t i = 0; i <= k; ++i) {
    state += 0x9e3779b97f4a7c15ULL;
    z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
  }
  return z;
}

void McConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("mc: trials must be >= 1");
  if (bins < 2) throw std::invalid_argument("mc: bins must be >= 2");
  if (!(x_min < x_max)) throw std::invalid_argument("mc: x_min must be < x_max");
  for (double e : eta)
    if (e < 0.0 || e > 1.0)
      throw std::invalid_argument("mc: eta must be in [0, 1]");
  if (delta_lambda < 0.0 || delta_lambda >= geometry.wavelength)
    throw std::invalid_argument("mc: need 0 <= delta_lambda < lambda");
  geometry.validate();
}

std::vector<double> CoincidenceHistogram::bin_centers() const {
  const int n = static_cast<int>(counts.size());
  const double width = (x_max - x_min) / n;
  std::vector<double> centers(n);
  for (int b = 0; b < n; ++b) centers[b] = x_min + (b + 0.5) * width;
  return centers;
}

std::uint64_t CoincidenceHistogram::detector_total(Detector d) const {
  std::uint64_t total = 0;
  for (const auto& row : counts) total += row[static_cast<int>(d)];
  return total;
}

EventSampler::EventSampler(std::vector<std::array<double, 4>> density,
                           std::array<double, 4> eta, double x_min,
                           double x_max)
    : eta_(eta), x_min_(x_min), x_max_(x_max),
      bins_(static_cast<int>(density.size())) {
  if (bins_ < 1) throw std::invalid_argument("sampler: empty density grid");
  add_component(density);
}

void EventSampler::add_component(
    const std::vector<std::array<double, 4>>& density) {
  std::vector<double> cdf;
  cdf.reserve(density.size() * 4);
  double running = 0.0;
  for (const auto& row : density) {
    for (double v : row) {
      if (v < 0.0) throw std::invalid_argument("sampler: negative density");
      running += v;
      cdf.push_back(running);
    }
  }
  if (!(running > 0.0))
    throw std::invalid_argument("sampler: all-zero density grid");
  for (double& v : cdf) v /= running;
  cdf.back() = 1.0;
  cdfs_.push_back(std::move(cdf));
}

EventSampler EventSampler::from_config(const McConfig& cfg) {
  cfg.validate();
  EventSampler s;
  s.eta_ = cfg.eta;
  s.x_min_ = cfg.x_min;
  s.x_max_ = cfg.x_max;
  s.bins_ = cfg.bins;
  const auto lambdas = bandwidth_sample_wavelengths(cfg.geometry.wavelength,
                                                    cfg.delta_lambda);
  if (cfg.delta_lambda == 0.0) {
    s.add_component(density_grid(cfg.geometry, cfg.eta, cfg.phi, cfg.x_min,
                                 cfg.x_max, cfg.bins));
  } else {
    for (double lambda : lambdas) {
      ExperimentGeometry g = cfg.geometry;
      g.wavelength = lambda;
      s.add_component(
          density_grid(g, cfg.eta, cfg.phi, cfg.x_min, cfg.x_max, cfg.bins));
    }
  }
  return s;
}

SampleEvent EventSampler::sample(std::mt19937_64& rng) const {
  std::size_t component = 0;
  if (cdfs_.size() > 1) {
    component = std::min<std::size_t>(
        static_cast<std::size_t>(uniform01(rng) * cdfs_.size()),
        cdfs_.size() - 1);
  }
  const std::vector<double>& cdf = cdfs_[component];
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const std::size_t flat = std::min<std::size_t>(
      static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);

  SampleEvent ev;
  ev.bin = static_cast<int>(flat / 4);
  ev.detector = static_cast<Detector>(flat % 4);
  const double width = (x_max_ - x_min_) / bins_;
  ev.x = x_min_ + (ev.bin + 0.5) * width;
  ev.accepted = uniform01(rng) < eta_[flat % 4];
  return ev;
}

CoincidenceHistogram run(const McConfig& cfg) {
  cfg.validate();
  const EventSampler sampler = EventSampler::from_config(cfg);

  CoincidenceHistogram hist;
  hist.counts.assign(cfg.bins, {0, 0, 0, 0});
  hist.trials = cfg.trials;
  hist.x_min = cfg.x_min;
  hist.x_max = cfg.x_max;
  hist.seed = cfg.seed;
  hist.generator = kGeneratorId;

  const std::uint64_t chunks = (cfg.trials + kChunkTrials - 1) / kChunkTrials;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(splitmix64_at(cfg.seed, c));
    const std::uint64_t n =
        std::min(kChunkTrials, cfg.trials - c * kChunkTrials);
    for (std::uint64_t i = 0; i < n; ++i) {
      const SampleEvent ev = sampler.sample(rng);
      if (!ev.accepted) {
        ++hist.rejected;
        continue;
      }
      ++hist.accepted;
      ++hist.counts[ev.bin][static_cast<int>(ev.detector)];
    }
  }
  return hist;
}

CompareReport compare(const CoincidenceHistogram& hist, Detector d,
                      const std::vector<double>& analytic) {
  const int det = static_cast<int>(d);
  const int bins = static_cast<int>(hist.counts.size());
  if (static_cast<int>(analytic.size()) != bins)
    throw std::invalid_argument("compare: bin grids do not match");
  const std::uint64_t total = hist.detector_total(d);
  if (total == 0) throw std::invalid_argument("compare: empty histogram row");

  double mass = 0.0;
  for (double v : analytic) {
    if (v < 0.0) throw std::invalid_argument("compare: negative expectation");
    mass += v;
  }
  if (!(mass > 0.0)) throw std::invalid_argument("compare: all-zero pattern");

  // Merge adjacent bins until every effective bin expects at least 5 counts.
  std::vector<double> expected;
  std::vector<double> observed;
  double exp_acc = 0.0, obs_acc = 0.0;
  for (int b = 0; b < bins; ++b) {
    exp_acc += static_cast<double>(total) * analytic[b] / mass;
    obs_acc += static_cast<double>(hist.counts[b][det]);
    if (exp_acc >= 5.0) {
      expected.push_back(exp_acc);
      observed.push_back(obs_acc);
      exp_acc = obs_acc = 0.0;
    }
  }
  if (exp_acc > 0.0 || obs_acc > 0.0) {
    if (!expected.empty()) {
      expected.back() += exp_acc;
      observed.back() += obs_acc;
    } else {
      expected.push_back(exp_acc);
      observed.push_back(obs_acc);
    }
  }
  if (expected.size() < 2)
    throw std::invalid_argument("compare: fewer than 2 effective bins");

  CompareReport report;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double dev = observed[i] - expected[i];
    report.chi2 += dev * dev / expected[i];
    report.max_sigma_deviation =
        std::max(report.max_sigma_deviation, std::abs(dev) / std::sqrt(expected[i]));
  }
  report.dof = static_cast<int>(expected.size()) - 1;
  const boost::math::chi_squared dist(report.dof);
  report.p_value = boost::math::cdf(boost::math::complement(dist, report.chi2));
  return report;
}

LinearFit fit_fringe_component(const CoincidenceHistogram& hist,
                               const ExperimentGeometry& g) {
  const auto centers = hist.bin_centers();
  const int bins = static_cast<int>(centers.size());

  std::vector<double> marginal(bins), envelope(bins), regressor(bins);
  double env_mass = 0.0;
  std::uint64_t total = 0;
  for (int b = 0; b < bins; ++b) {
    const auto& row = hist.counts[b];
    marginal[b] = static_cast<double>(row[0] + row[1] + row[2] + row[3]);
    total += row[0] + row[1] + row[2] + row[3];
    const double alpha = slit_envelope(g, ScreenPoint{centers[b]});
    envelope[b] = alpha * alpha;
    env_mass += envelope[b];
    regressor[b] = envelope[b] * std::cos(two_path_phase(g, ScreenPoint{centers[b]}));
  }
  if (total == 0) throw std::invalid_argument("fringe fit: empty histogram");

  double num = 0.0, den = 0.0, var = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double exp_b = static_cast<double>(total) * envelope[b] / env_mass;
    const double residual = marginal[b] - exp_b;
    num += regressor[b] * residual;
    den += regressor[b] * regressor[b];
    var += regressor[b] * regressor[b] * exp_b;
  }
  if (!(den > 0.0)) throw std::invalid_argument("fringe fit: degenerate grid");
  return {num / den, std::sqrt(var) / den};
}

LinearFit fit_visibility(const CoincidenceHistogram& hist, Detector d,
                         const ExperimentGeometry& g, double phase_offset) {
  const int det = static_cast<int>(d);
  const auto centers = hist.bin_centers();
  const int bins = static_cast<int>(centers.size());
  if (hist.detector_total(d) == 0)
    throw std::invalid_argument("visibility fit: empty histogram row");

  // Weighted least squares for counts ~ C u + D w, visibility = D / C.
  double suu = 0.0, suw = 0.0, sww = 0.0, bu = 0.0, bw = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double alpha = slit_envelope(g, ScreenPoint{centers[b]});
    const double u = alpha * alpha;
    const double w =
        u * std::cos(two_path_phase(g, ScreenPoint{centers[b]}) + phase_offset);
    const double n = static_cast<double>(hist.counts[b][det]);
    const double inv_var = 1.0 / std::max(n, 1.0);
    suu += u * u * inv_var;
    suw += u * w * inv_var;
    sww += w * w * inv_var;
    bu += u * n * inv_var;
    bw += w * n * inv_var;
  }
  const double det2 = suu * sww - suw * suw;
  if (!(std::abs(det2) > 0.0))
    throw std::invalid_argument("visibility fit: degenerate design");
  const double c_fit = (sww * bu - suw * bw) / det2;
  const double d_fit = (suu * bw - suw * bu) / det2;
  // Covariance of (C, D) is the inverse normal matrix.
  const double var_c = sww / det2;
  const double var_d = suu / det2;
  const double cov_cd = -suw / det2;
  const double v = d_fit / c_fit;
  const double var_v =
      (var_d + v * v * var_c - 2.0 * v * cov_cd) / (c_fit * c_fit);
  return {v, std::sqrt(std::max(var_v, 0.0))};
}

}  // namespace qeraser
