#ifndef QERASER_PDC_HPP
#define QERASER_PDC_HPP

#include <array>
#include <cstddef>
#include <functional>

#include "qeraser/geometry.hpp"
#include "qeraser/optics.hpp"

namespace qeraser {

/// Ladder-operator symbols for the signal mode and the four idler detector
/// modes. The parametric evolution keeps every field expression linear in
/// these, so fourth-order moments reduce to products of second-order ones
/// and no general Wick engine is needed.
enum class PdcMode { Signal, Idler1, Idler2, Idler3, Idler4 };
enum class LadderKind { Create, Annihilate };

struct LadderSymbol {
  PdcMode mode;
  LadderKind kind;
  bool operator==(const LadderSymbol&) const = default;
};

struct LadderTerm {
  Amplitude coeff;
  LadderSymbol symbol;
};

/// Linear combination of ladder symbols with complex coefficients. Small
/// fixed capacity: every field assembly in this engine has at most 4 terms.
class LadderExpression {
public:
  static constexpr std::size_t kCapacity = 8;

  LadderExpression() = default;

  void add(Amplitude coeff, LadderSymbol symbol);
  std::size_t size() const { return size_; }
  const LadderTerm& term(std::size_t i) const { return terms_[i]; }

  /// Formal adjoint: conjugate coefficients, swap create <-> annihilate.
  LadderExpression conjugate() const;
  LadderExpression scaled(Amplitude factor) const;

private:
  std::array<LadderTerm, kCapacity> terms_{};
  std::size_t size_ = 0;
};

struct PumpParams {
  double omega_p = 1e6;  // kappa * alpha_p [1/s]
  double theta = 0.0;    // pump phase [rad]
  double window = 1e-8;  // integration window T [s]

  void validate() const;
  bool operator==(const PumpParams&) const = default;
};

/// Heisenberg evolution of the signal annihilation operator:
/// a_s(t) = cosh(W t) a_s(0) - i e^{-i theta} sinh(W t) a_i^dag(0).
LadderExpression evolve_signal(const PumpParams& p, double t,
                               PdcMode idler_mode = PdcMode::Idler1);

/// Same mixing for the idler annihilation operator.
LadderExpression evolve_idler(const PumpParams& p, double t,
                              PdcMode idler_mode = PdcMode::Idler1);

/// |cosh^2(W t) - sinh^2(W t) - 1|, evaluated in extended precision so the
/// identity itself (canonical-commutator preservation) is what is measured,
/// not double rounding of large hyperbolics.
double bogoliubov_check(const PumpParams& p, double t);

/// E^(+) operators for the signal arm and one idler detector arm, with the
/// beamsplitter factors of the Kim network, region phases e^{i k_x d_A},
/// e^{i k_x d_B}, and equal idler path lengths (x_A = x_B).
struct FieldPair {
  LadderExpression e_plus_signal;
  LadderExpression e_plus_idler;
  double t_signal = 0.0;
  double t_idler = 0.0;
};

FieldPair assemble_fields(Detector channel, const ExperimentGeometry& g,
                          double x, const PumpParams& p, double t0, double ti);

/// <0| bra ket |0> under canonical commutators: <a_m a_m^dag> = 1 for a
/// matching mode, every other symbol pair vanishes.
Amplitude vacuum_expectation(const LadderExpression& bra,
                             const LadderExpression& ket);

/// The three second-order products of the fourth-order correlation:
///   exchange     = <E_s^- E_i^+><E_i^- E_s^+>
///   pair         = <E_s^- E_i^-><E_s^+ E_i^+>
///   intensities  = <E_s^- E_s^+><E_i^- E_i^+>
struct CorrelationTerms {
  Amplitude exchange;
  Amplitude pair;
  Amplitude intensities;
};

CorrelationTerms correlation_expand(const FieldPair& fields);

/// Sum of the three expansion products. Throws std::logic_error on an
/// imaginary residue beyond 1e-12 or a value below -1e-12.
double joint_rate(Detector channel, const ExperimentGeometry& g, double x,
                  const PumpParams& p, double t0, double ti);

/// (1/T^2) * double integral of rate(t0, ti) over [0,T]^2, adaptive
/// quadrature at 1e-8 relative tolerance.
double time_average(const std::function<double(double, double)>& rate,
                    const PumpParams& p);

/// Convenience: time-averaged joint rate for a channel at screen position x.
double averaged_joint_rate(Detector channel, const ExperimentGeometry& g,
                           double x, const PumpParams& p);

}  // namespace qeraser

#endif
