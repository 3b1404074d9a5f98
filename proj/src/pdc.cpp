#include "qeraser/pdc.hpp"

#include <cmath>
#include <stdexcept>

#include "qeraser/quadrature.hpp"

namespace qeraser {

namespace {

PdcMode idler_mode_for(Detector channel) {
  switch (channel) {
    case Detector::D1: return PdcMode::Idler1;
    case Detector::D2: return PdcMode::Idler2;
    case Detector::D3: return PdcMode::Idler3;
    case Detector::D4: return PdcMode::Idler4;
  }
  throw std::invalid_argument("unknown channel");
}

constexpr Amplitude kMinusI{0.0, -1.0};

}  // namespace

void LadderExpression::add(Amplitude coeff, LadderSymbol symbol) {
  if (size_ == kCapacity)
    throw std::length_error("LadderExpression: capacity exceeded");
  terms_[size_++] = {coeff, symbol};
}

LadderExpression LadderExpression::conjugate() const {
  LadderExpression out;
  for (std::size_t i = 0; i < size_; ++i) {
    const LadderTerm& t = terms_[i];
    const LadderKind flipped = t.symbol.kind == LadderKind::Create
                                   ? LadderKind::Annihilate
                                   : LadderKind::Create;
    out.add(std::conj(t.coeff), {t.symbol.mode, flipped});
  }
  return out;
}

LadderExpression LadderExpression::scaled(Amplitude factor) const {
  LadderExpression out;
  for (std::size_t i = 0; i < size_; ++i)
    out.add(factor * terms_[i].coeff, terms_[i].symbol);
  return out;
}

void PumpParams::validate() const {
  if (!(omega_p >= 0.0)) throw std::invalid_argument("pump: omega_p must be >= 0");
  if (!(window > 0.0)) throw std::invalid_argument("pump: window must be > 0");
}

LadderExpression evolve_signal(const PumpParams& p, double t,
                               PdcMode idler_mode) {
  if (t < 0.0) throw std::invalid_argument("evolve_signal: t must be >= 0");
  const double u = p.omega_p * t;
  LadderExpression out;
  out.add(Amplitude(std::cosh(u), 0.0),
          {PdcMode::Signal, LadderKind::Annihilate});
  out.add(kMinusI * std::polar(1.0, -p.theta) * std::sinh(u),
          {idler_mode, LadderKind::Create});
  return out;
}

LadderExpression evolve_idler(const PumpParams& p, double t,
                              PdcMode idler_mode) {
  if (t < 0.0) throw std::invalid_argument("evolve_idler: t must be >= 0");
  const double u = p.omega_p * t;
  LadderExpression out;
  out.add(Amplitude(std::cosh(u), 0.0), {idler_mode, LadderKind::Annihilate});
  out.add(kMinusI * std::polar(1.0, -p.theta) * std::sinh(u),
          {PdcMode::Signal, LadderKind::Create});
  return out;
}

double bogoliubov_check(const PumpParams& p, double t) {
  if (t < 0.0) throw std::invalid_argument("bogoliubov_check: t must be >= 0");
  const long double u = static_cast<long double>(p.omega_p) * t;
  const long double c = std::cosh(u);
  const long double s = std::sinh(u);
  return static_cast<double>(std::fabs(c * c - s * s - 1.0L));
}

FieldPair assemble_fields(Detector channel, const ExperimentGeometry& g,
                          double x, const PumpParams& p, double t0,
                          double ti) {
  if (t0 < 0.0 || ti < 0.0)
    throw std::invalid_argument("assemble_fields: times must be >= 0");
  g.validate();
  p.validate();

  const PdcMode idler = idler_mode_for(channel);
  const BeamSplitter bs = BeamSplitter::standard();
  const Amplitude r = bs.reflection();
  const Amplitude t = bs.transmission();

  // sqrt(alpha/2) as a complex root so a negative envelope still yields the
  // alpha^2 factor in every expansion product.
  const double alpha = slit_envelope(g, ScreenPoint{x});
  const Amplitude amp = std::sqrt(Amplitude(alpha / 2.0, 0.0));

  const double delta = two_path_phase(g, ScreenPoint{x});
  const Amplitude phase_a = std::polar(1.0, delta);  // e^{i k_x d_A}, d_B out
  const Amplitude phase_b(1.0, 0.0);
  const Amplitude pump_phase = std::polar(1.0, -p.theta);

  const double cosh0 = std::cosh(p.omega_p * t0);
  const double sinh0 = std::sinh(p.omega_p * t0);
  const double coshi = std::cosh(p.omega_p * ti);
  const double sinhi = std::sinh(p.omega_p * ti);

  // Idler path amplitudes from each region toward this detector (zero where
  // the Kim topology provides no path). Common idler propagation phases are
  // equal (x_A = x_B) and dropped.
  Amplitude route_a(0.0, 0.0);
  Amplitude route_b(0.0, 0.0);
  switch (channel) {
    case Detector::D1: route_a = r * t; route_b = t * t; break;
    case Detector::D2: route_a = t * t; route_b = r * t; break;
    case Detector::D3: route_a = r; break;
    case Detector::D4: route_b = r; break;
  }

  const LadderSymbol a_s{PdcMode::Signal, LadderKind::Annihilate};
  const LadderSymbol a_s_dag{PdcMode::Signal, LadderKind::Create};
  const LadderSymbol a_i{idler, LadderKind::Annihilate};
  const LadderSymbol a_i_dag{idler, LadderKind::Create};

  FieldPair out;
  out.t_signal = t0;
  out.t_idler = ti;

  // Signal arm: one line per contributing crystal region.
  if (route_a != Amplitude(0.0, 0.0)) {
    out.e_plus_signal.add(amp * phase_a * cosh0, a_s);
    out.e_plus_signal.add(amp * kMinusI * std::conj(route_a) * pump_phase * sinhi,
                          a_i_dag);
    out.e_plus_idler.add(amp * route_a * coshi, a_i);
    out.e_plus_idler.add(amp * kMinusI * std::conj(phase_a) * pump_phase * sinh0,
                         a_s_dag);
  }
  if (route_b != Amplitude(0.0, 0.0)) {
    out.e_plus_signal.add(amp * phase_b * cosh0, a_s);
    out.e_plus_signal.add(amp * kMinusI * std::conj(route_b) * pump_phase * sinhi,
                          a_i_dag);
    out.e_plus_idler.add(amp * route_b * coshi, a_i);
    out.e_plus_idler.add(amp * kMinusI * std::conj(phase_b) * pump_phase * sinh0,
                         a_s_dag);
  }
  return out;
}

Amplitude vacuum_expectation(const LadderExpression& bra,
                             const LadderExpression& ket) {
  Amplitude sum(0.0, 0.0);
  for (std::size_t i = 0; i < bra.size(); ++i) {
    const LadderTerm& x = bra.term(i);
    if (x.symbol.kind != LadderKind::Annihilate) continue;
    for (std::size_t j = 0; j < ket.size(); ++j) {
      const LadderTerm& y = ket.term(j);
      if (y.symbol.kind != LadderKind::Create) continue;
      if (y.symbol.mode != x.symbol.mode) continue;
      sum += x.coeff * y.coeff;  // <0| a_m a_m^dag |0> = 1
    }
  }
  return sum;
}

CorrelationTerms correlation_expand(const FieldPair& fields) {
  const LadderExpression& es_p = fields.e_plus_signal;
  const LadderExpression& ei_p = fields.e_plus_idler;
  const LadderExpression es_m = es_p.conjugate();
  const LadderExpression ei_m = ei_p.conjugate();

  CorrelationTerms out;
  out.exchange = vacuum_expectation(es_m, ei_p) * vacuum_expectation(ei_m, es_p);
  out.pair = vacuum_expectation(es_m, ei_m) * vacuum_expectation(es_p, ei_p);
  out.intensities =
      vacuum_expectation(es_m, es_p) * vacuum_expectation(ei_m, ei_p);
  return out;
}

double joint_rate(Detector channel, const ExperimentGeometry& g, double x,
                  const PumpParams& p, double t0, double ti) {
  const CorrelationTerms terms =
      correlation_expand(assemble_fields(channel, g, x, p, t0, ti));
  const Amplitude total = terms.exchange + terms.pair + terms.intensities;
  const double scale = std::max(std::abs(total), 1.0);
  if (std::abs(total.imag()) > 1e-12 * scale)
    throw std::logic_error("joint_rate: non-real rate");
  if (total.real() < -1e-12 * scale)
    throw std::logic_error("joint_rate: negative rate");
  return std::max(total.real(), 0.0);
}

double time_average(const std::function<double(double, double)>& rate,
                    const PumpParams& p) {
  p.validate();
  if (!(p.omega_p * p.window > 0.0))
    throw std::invalid_argument("time_average: requires omega_p * T > 0");
  const double T = p.window;
  const double integral = integrate2d(rate, 0.0, T, 0.0, T, 1e-8);
  return integral / (T * T);
}

double averaged_joint_rate(Detector channel, const ExperimentGeometry& g,
                           double x, const PumpParams& p) {
  return time_average(
      [&](double t0, double ti) {
        return joint_rate(channel, g, x, p, t0, ti);
      },
      p);
}

}  // namespace qeraser
