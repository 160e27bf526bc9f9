#pragma once

#include "adestab/matrix.hpp"
#include "adestab/rational.hpp"
#include "adestab/surface_lattice.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace adestab {

/// One member of the central-charge family
///   Z(v) = [-ch2 + eps (beta.ch1) + s z ch0] + i [h.ch1 - alpha ch0 + eta (beta.ch1)].
/// beta is given by its coefficients on e_1..e_n, so h.beta = 0 always.
struct ChargeParams {
  RationalVector beta;
  Rational z = 1;
  Rational s = 1;
  Rational epsilon = 1;
  Rational eta = 0;
  Rational alpha = 0;
};

struct ChargeValue {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const ChargeValue&, const ChargeValue&) = default;
};

ChargeValue operator+(const ChargeValue& a, const ChargeValue& b);

/// Largest admissible margin 1 / (1 + sum m_i).
Rational max_beta_margin(const SurfaceSpec& spec);

/// Solves G b = t (1,...,1). Throws BadMargin unless 0 < t <= max_beta_margin.
RationalVector find_beta(const SurfaceSpec& spec, const Rational& t);

/// beta . ch1(v)
Rational beta_pairing(const SurfaceSpec& spec, const RationalVector& beta, const NumClass& v);
/// beta . beta
Rational beta_square(const SurfaceSpec& spec, const RationalVector& beta);

enum class ParamConstraint {
  BetaLength,        ///< beta has the wrong number of coefficients
  BetaPositive,      ///< beta . e_i > 0 for every i
  BetaBelowCycle,    ///< beta . (sum m_i e_i) < 1
  CentralCharge,     ///< z - alpha^2/(2d) > -beta^2/2
  ZPositive,         ///< z > 0, needed once s != 1 or eps != 1
  SAtLeastOne,
  EpsilonInUnitInterval,
  EtaNonNegative,
};

const char* constraint_name(ParamConstraint c);

struct ParamViolation {
  ParamConstraint constraint;
  std::string detail;
};

/// Empty result means the parameters are valid.
std::vector<ParamViolation> validate_params(const SurfaceSpec& spec, const ChargeParams& params);

ChargeValue charge(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v);

/// Charge on the singular surface: Z_X(w) = [-ch2 + s z ch0] + i [H.ch1 - alpha ch0].
/// With s = 1 it satisfies charge(eps = eta = 0)(v) == charge_pushed(pushforward(v)).
ChargeValue charge_pushed(const SurfaceSpec& spec, const ChargeParams& params, const PushedClass& w);

/// Coefficient rows (Re, Im) of the charge as linear forms on flattened
/// coordinates.
RatMatrix charge_matrix(const SurfaceSpec& spec, const ChargeParams& params);
RatMatrix pushed_charge_matrix(const SurfaceSpec& spec, const ChargeParams& params);

/// Position of a charge in the extended phase range: upper half-plane
/// (0,1), negative real axis (and the zero charge) at 1, lower half-plane
/// (1,2), positive real axis last.
enum class PhaseSector { Upper = 0, NegativeReal = 1, Lower = 2, PositiveReal = 3 };

PhaseSector phase_sector(const ChargeValue& z);

/// Exact comparison of extended phases arg(Z)/pi. Zero compares as phase 1.
std::strong_ordering compare_phase(const ChargeValue& a, const ChargeValue& b);

/// Floating rendering of the phase for reports only.
double phase_approx(const ChargeValue& z);

/// Delta(v) + A (Im Z)^2 + B (Re Z)^2 with eta forced to 0.
Rational q_form(const SurfaceSpec& spec, const ChargeParams& params, const Rational& a, const Rational& b,
                const NumClass& v);

/// Delta_X(pi_* v) + A (Im Z)^2, with eps = eta = 0.
Rational q_form_X(const SurfaceSpec& spec, const ChargeParams& params, const Rational& a, const NumClass& v);

/// The same form evaluated directly on a class of the singular surface.
Rational q_form_pushed(const SurfaceSpec& spec, const ChargeParams& params, const Rational& a, const PushedClass& w);

/// Bogomolov-Gieseker predicate on the singular surface.
bool bogomolov_gieseker_holds(const SurfaceSpec& spec, const PushedClass& w);

struct DefinitenessCertificate {
  bool negative_definite = false;
  /// Inertia of the form restricted to ker Z.
  Inertia inertia;
  std::size_t kernel_dimension = 0;
  /// Kernel basis in flattened coordinates.
  std::vector<RationalVector> kernel_basis;
  /// Vector of ker Z with Q >= 0, flattened coordinates.
  std::optional<RationalVector> witness;
  std::optional<Rational> witness_value;
};

/// Q_{A,B} restricted to ker Z of the resolution (eta treated as 0).
DefinitenessCertificate certify_negative_definite(const SurfaceSpec& spec, const ChargeParams& params,
                                                  const Rational& a, const Rational& b);

/// Delta_X + A (Im)^2 restricted to ker Z_{X,s} on the lattice of the
/// singular surface.
DefinitenessCertificate certify_negative_definite_X(const SurfaceSpec& spec, const ChargeParams& params,
                                                    const Rational& a);

struct SupportConstants {
  Rational a0;
  Rational b0;
};

/// Smallest A0, B0 >= 0 making Q_{A0,B0} >= 0 on the candidates: A0 from
/// those with Im Z != 0, B0 from those with Im Z = 0 (eta is ignored).
/// Throws ZeroCharge when a nonzero candidate has Z = 0.
SupportConstants support_constants(const SurfaceSpec& spec, const ChargeParams& params,
                                   const std::vector<NumClass>& candidates);

}  // namespace adestab
