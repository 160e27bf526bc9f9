#include "adestab/charge_engine.hpp"

#include "adestab/errors.hpp"

#include <cmath>
#include <numbers>

namespace adestab {

ChargeValue operator+(const ChargeValue& a, const ChargeValue& b) { return {a.re + b.re, a.im + b.im}; }

Rational max_beta_margin(const SurfaceSpec& spec) { return Rational(1, 1 + spec.ade().fund_cycle_sum()); }

RationalVector find_beta(const SurfaceSpec& spec, const Rational& t) {
  const Rational bound = max_beta_margin(spec);
  if (t <= 0 || t > bound) {
    throw Error(ErrorKind::BadMargin, "margin t = " + to_string(t) + " must lie in (0, " + to_string(bound) + "]");
  }
  return solve(spec.ade().gram, RationalVector(spec.curve_count(), t));
}

namespace {

void require_beta(const SurfaceSpec& spec, const RationalVector& beta) {
  if (beta.size() != spec.curve_count()) {
    throw Error(ErrorKind::DimensionMismatch, "beta has " + std::to_string(beta.size()) + " coefficients, expected " +
                                                  std::to_string(spec.curve_count()));
  }
}

// beta as a linear form on ch1 coordinates.
RationalVector beta_row(const SurfaceSpec& spec, const RationalVector& beta) {
  require_beta(spec, beta);
  RationalVector row(spec.ns_rank());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] == 0) continue;
    const std::size_t r = spec.e_offset() + i;
    for (std::size_t j = 0; j < spec.ns_rank(); ++j) row[j] += beta[i] * spec.gram()(r, j);
  }
  return row;
}

}  // namespace

Rational beta_pairing(const SurfaceSpec& spec, const RationalVector& beta, const NumClass& v) {
  return dot(beta_row(spec, beta), v.ch1);
}

Rational beta_square(const SurfaceSpec& spec, const RationalVector& beta) {
  require_beta(spec, beta);
  return spec.ade().gram.bilinear(beta, beta);
}

const char* constraint_name(ParamConstraint c) {
  switch (c) {
    case ParamConstraint::BetaLength: return "beta_length";
    case ParamConstraint::BetaPositive: return "beta_dot_curve_positive";
    case ParamConstraint::BetaBelowCycle: return "beta_dot_fundamental_cycle_below_one";
    case ParamConstraint::CentralCharge: return "z_above_minus_half_beta_square";
    case ParamConstraint::ZPositive: return "z_positive";
    case ParamConstraint::SAtLeastOne: return "s_at_least_one";
    case ParamConstraint::EpsilonInUnitInterval: return "epsilon_in_unit_interval";
    case ParamConstraint::EtaNonNegative: return "eta_non_negative";
  }
  return "unknown";
}

std::vector<ParamViolation> validate_params(const SurfaceSpec& spec, const ChargeParams& params) {
  std::vector<ParamViolation> out;
  if (params.beta.size() != spec.curve_count()) {
    out.push_back({ParamConstraint::BetaLength, "beta has " + std::to_string(params.beta.size()) +
                                                    " coefficients, expected " + std::to_string(spec.curve_count())});
    return out;
  }
  const auto& ade = spec.ade();
  const RationalVector pairings = ade.gram * params.beta;  // beta . e_i
  Rational cycle = 0;
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    if (pairings[i] <= 0) {
      out.push_back({ParamConstraint::BetaPositive,
                     "beta.e_" + std::to_string(i + 1) + " = " + to_string(pairings[i]) + " <= 0"});
    }
    cycle += ade.fund_cycle[i] * pairings[i];
  }
  if (cycle >= 1) {
    out.push_back({ParamConstraint::BetaBelowCycle, "beta.Z_fund = " + to_string(cycle) + " >= 1"});
  }
  const Rational b2 = beta_square(spec, params.beta);
  const Rational lhs = params.z - params.alpha * params.alpha / (2 * spec.h_square());
  const Rational rhs = -b2 / 2;
  if (lhs <= rhs) {
    out.push_back({ParamConstraint::CentralCharge,
                   "z - alpha^2/(2d) = " + to_string(lhs) + " <= -beta^2/2 = " + to_string(rhs)});
  }
  if ((params.s != 1 || params.epsilon != 1) && params.z <= 0) {
    out.push_back({ParamConstraint::ZPositive, "z = " + to_string(params.z) + " <= 0"});
  }
  if (params.s < 1) out.push_back({ParamConstraint::SAtLeastOne, "s = " + to_string(params.s) + " < 1"});
  if (params.epsilon < 0 || params.epsilon > 1) {
    out.push_back({ParamConstraint::EpsilonInUnitInterval, "epsilon = " + to_string(params.epsilon)});
  }
  if (params.eta < 0) out.push_back({ParamConstraint::EtaNonNegative, "eta = " + to_string(params.eta)});
  return out;
}

ChargeValue charge(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v) {
  if (v.ch1.size() != spec.ns_rank()) throw Error(ErrorKind::DimensionMismatch, "class does not match the surface");
  const Rational bc = beta_pairing(spec, params.beta, v);
  Rational h_dot = 0;
  for (std::size_t j = 0; j < spec.ns_rank(); ++j) h_dot += spec.gram()(0, j) * v.ch1[j];
  return ChargeValue{-v.ch2 + params.epsilon * bc + params.s * params.z * v.ch0,
                     h_dot - params.alpha * v.ch0 + params.eta * bc};
}

ChargeValue charge_pushed(const SurfaceSpec& spec, const ChargeParams& params, const PushedClass& w) {
  if (w.ch1.size() != spec.pushed_ns_rank()) throw Error(ErrorKind::DimensionMismatch, "pushed class has the wrong rank");
  Rational h_dot = 0;
  for (std::size_t j = 0; j < w.ch1.size(); ++j) h_dot += spec.extra_gram()(0, j) * w.ch1[j];
  return ChargeValue{-w.ch2 + params.s * params.z * w.ch0, h_dot - params.alpha * w.ch0};
}

RatMatrix charge_matrix(const SurfaceSpec& spec, const ChargeParams& params) {
  const std::size_t m = spec.ns_rank();
  const RationalVector brow = beta_row(spec, params.beta);
  RatMatrix rows(2, m + 2);
  rows(0, 0) = params.s * params.z;
  rows(1, 0) = -params.alpha;
  for (std::size_t j = 0; j < m; ++j) {
    rows(0, 1 + j) = params.epsilon * brow[j];
    rows(1, 1 + j) = spec.gram()(0, j) + params.eta * brow[j];
  }
  rows(0, m + 1) = -1;
  return rows;
}

RatMatrix pushed_charge_matrix(const SurfaceSpec& spec, const ChargeParams& params) {
  const std::size_t m = spec.pushed_ns_rank();
  RatMatrix rows(2, m + 2);
  rows(0, 0) = params.s * params.z;
  rows(1, 0) = -params.alpha;
  for (std::size_t j = 0; j < m; ++j) rows(1, 1 + j) = spec.extra_gram()(0, j);
  rows(0, m + 1) = -1;
  return rows;
}

PhaseSector phase_sector(const ChargeValue& z) {
  if (z.im > 0) return PhaseSector::Upper;
  if (z.im < 0) return PhaseSector::Lower;
  if (z.re > 0) return PhaseSector::PositiveReal;
  return PhaseSector::NegativeReal;
}

std::strong_ordering compare_phase(const ChargeValue& a, const ChargeValue& b) {
  const auto sa = phase_sector(a);
  const auto sb = phase_sector(b);
  if (sa != sb) return static_cast<int>(sa) <=> static_cast<int>(sb);
  if (sa == PhaseSector::NegativeReal || sa == PhaseSector::PositiveReal) return std::strong_ordering::equal;
  // Inside one open half-plane, b is counterclockwise of a iff cross > 0.
  const Rational cross = a.re * b.im - b.re * a.im;
  return 0 <=> sgn(cross);
}

double phase_approx(const ChargeValue& z) {
  if (z.is_zero()) return 1.0;
  double p = std::atan2(z.im.get_d(), z.re.get_d()) / std::numbers::pi;
  if (p <= 0.0) p += 2.0;
  return p;
}

Rational q_form(const SurfaceSpec& spec, const ChargeParams& params, const Rational& a, const Rational& b,
                const NumClass& v) {
  ChargeParams flat = params;
  flat.eta = 0;
  const ChargeValue z = charge(spec, flat, v);
  return discriminant(spec, v) + a * z.im * z.im + b * z.re * z.re;
}

Rational q_form_X(const SurfaceSpec& spec, const ChargeParams& params, const Rational& a, const NumClass& v) {
  return q_form_pushed(spec, params, a, pushforward(spec, v));
}

Rational q_form_pushed(const SurfaceSpec& spec, const ChargeParams& params, const Rational& a, const PushedClass& w) {
  const ChargeValue z = charge_pushed(spec, params, w);
  return discriminant(spec, w) + a * z.im * z.im;
}

bool bogomolov_gieseker_holds(const SurfaceSpec& spec, const PushedClass& w) { return discriminant(spec, w) >= 0; }

namespace {

// form + A im^T im + B re^T re on flattened coordinates.
RatMatrix augmented_form(RatMatrix form, const RatMatrix& charge_rows, const Rational& a, const Rational& b) {
  const std::size_t n = form.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      form(i, j) += a * charge_rows(1, i) * charge_rows(1, j) + b * charge_rows(0, i) * charge_rows(0, j);
    }
  }
  return form;
}

DefinitenessCertificate restrict_and_certify(const RatMatrix& form, const RatMatrix& charge_rows) {
  DefinitenessCertificate cert;
  cert.kernel_basis = nullspace(charge_rows);
  cert.kernel_dimension = cert.kernel_basis.size();
  const std::size_t k = cert.kernel_dimension;
  RatMatrix restricted(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      restricted(i, j) = form.bilinear(cert.kernel_basis[i], cert.kernel_basis[j]);
      restricted(j, i) = restricted(i, j);
    }
  cert.inertia = inertia(restricted);
  const DefinitenessResult ldl = check_negative_definite(restricted);
  cert.negative_definite = ldl.negative_definite;
  if (ldl.witness) {
    RationalVector w(form.rows());
    for (std::size_t i = 0; i < k; ++i) {
      if ((*ldl.witness)[i] == 0) continue;
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += (*ldl.witness)[i] * cert.kernel_basis[i][j];
    }
    cert.witness_value = form.bilinear(w, w);
    cert.witness = std::move(w);
  }
  return cert;
}

}  // namespace

DefinitenessCertificate certify_negative_definite(const SurfaceSpec& spec, const ChargeParams& params,
                                                  const Rational& a, const Rational& b) {
  ChargeParams flat = params;
  flat.eta = 0;
  const RatMatrix rows = charge_matrix(spec, flat);
  return restrict_and_certify(augmented_form(discriminant_form(spec), rows, a, b), rows);
}

DefinitenessCertificate certify_negative_definite_X(const SurfaceSpec& spec, const ChargeParams& params,
                                                    const Rational& a) {
  const RatMatrix rows = pushed_charge_matrix(spec, params);
  return restrict_and_certify(augmented_form(pushed_discriminant_form(spec), rows, a, 0), rows);
}

SupportConstants support_constants(const SurfaceSpec& spec, const ChargeParams& params,
                                   const std::vector<NumClass>& candidates) {
  ChargeParams flat = params;
  flat.eta = 0;
  SupportConstants out{0, 0};

  for (const NumClass& v : candidates) {
    const ChargeValue z = charge(spec, flat, v);
    const Rational delta = discriminant(spec, v);
    if (z.is_zero()) {
      if (is_zero(flatten(v))) continue;
      throw Error(ErrorKind::ZeroCharge, "class with vanishing charge and discriminant " + to_string(delta));
    }
    if (z.im != 0) {
      const Rational need = -delta / (z.im * z.im);
      if (need > out.a0) out.a0 = need;
    } else {
      const Rational need = -delta / (z.re * z.re);
      if (need > out.b0) out.b0 = need;
    }
  }
  return out;
}

}  // namespace adestab
