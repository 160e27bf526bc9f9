#include "adestab/exceptional_cat.hpp"

#include "adestab/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace adestab {

SimpleClasses simple_classes(const SurfaceSpec& spec) {
  const auto& m = spec.ade().fund_cycle;
  SimpleClasses out;
  out.opi = divisor_class(spec, m);
  out.ox = zero_class(spec);
  out.ox.ch2 = 1;
  NumClass sum = out.opi;
  for (std::size_t i = 0; i < spec.curve_count(); ++i) {
    out.s.push_back(Rational(-1) * curve_class(spec, i));
    sum = sum + Rational(m[i]) * out.s.back();
  }
  if (!(sum == out.ox)) throw Error(ErrorKind::InternalContradiction, "O_Pi + sum m_i s_i != O_x");
  return out;
}

NumClass divisor_class(const SurfaceSpec& spec, const std::vector<int>& divisor) {
  RationalVector e(divisor.begin(), divisor.end());
  return make_class(spec, 0, 0, RationalVector(spec.extra_rank()), e, 1);
}

std::optional<Decomposition> decompose(const SurfaceSpec& spec, const NumClass& v) {
  if (v.ch1.size() != spec.ns_rank()) throw Error(ErrorKind::DimensionMismatch, "class does not match the surface");
  if (v.ch0 != 0) throw Error(ErrorKind::NotExceptionalClass, "ch0 must vanish");
  for (std::size_t j = 0; j < spec.e_offset(); ++j) {
    if (v.ch1[j] != 0) throw Error(ErrorKind::NotExceptionalClass, "ch1 must lie in the exceptional span");
  }
  const auto& m = spec.ade().fund_cycle;
  Decomposition d{v.ch2, RationalVector(spec.curve_count())};
  bool ok = is_integer(d.n0) && d.n0 >= 0;
  for (std::size_t i = 0; i < spec.curve_count(); ++i) {
    d.n[i] = v.ch2 * m[i] - v.ch1[spec.e_offset() + i];
    if (!is_integer(d.n[i]) || d.n[i] < 0) ok = false;
  }
  if (!ok) return std::nullopt;
  return d;
}

namespace {

// Support of D stays connected and contains `target`.
bool connected_through(const AdeData& ade, const std::vector<int>& divisor, std::size_t target) {
  const std::size_t n = divisor.size();
  if (divisor[target] <= 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{target};
  seen[target] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : ade.adjacency) {
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      const std::size_t w = ua == u ? ub : ub == u ? ua : n;
      if (w < n && !seen[w] && divisor[w] > 0) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (divisor[i] > 0 && !seen[i]) return false;
  }
  return true;
}

bool is_reduced_curve(const std::vector<int>& divisor, std::size_t target) {
  for (std::size_t i = 0; i < divisor.size(); ++i) {
    if (divisor[i] != (i == target ? 1 : 0)) return false;
  }
  return true;
}

}  // namespace

FiltrationReport skyscraper_filtration(const SurfaceSpec& spec, std::size_t target) {
  const AdeData& ade = spec.ade();
  const std::size_t n = spec.curve_count();
  if (target >= n) throw Error(ErrorKind::IndexOutOfRange, "target curve out of range");

  FiltrationReport report;
  report.target = target;
  report.initial_divisor = ade.fund_cycle;
  report.factor_multiplicity.assign(n, 0);

  std::vector<int> divisor = ade.fund_cycle;
  const int total = std::accumulate(divisor.begin(), divisor.end(), 0);
  // Every step lowers the total multiplicity, so this bound is never reached
  // by a well-formed walk.
  for (int guard = 0; guard <= total && !is_reduced_curve(divisor, target); ++guard) {
    std::optional<std::size_t> best;
    int best_distance = -1;
    int best_removal = 0;
    for (std::size_t a = 0; a < n; ++a) {
      const long long pairing = ade.pairing_with(divisor, static_cast<int>(a));
      if (pairing >= 0) continue;
      const int removal = static_cast<int>(-pairing);
      if (divisor[a] < removal) continue;
      std::vector<int> next = divisor;
      next[a] -= removal;
      if (!connected_through(ade, next, target)) continue;
      const int dist = ade.distance(static_cast<int>(target), static_cast<int>(a));
      if (dist > best_distance) {
        best = a;
        best_distance = dist;
        best_removal = removal;
      }
    }
    if (!best) break;
    divisor[*best] -= best_removal;
    report.factor_multiplicity[*best] += best_removal;
    report.steps.push_back(PeelStep{*best, best_removal, divisor});
  }
  if (!is_reduced_curve(divisor, target)) {
    throw Error(ErrorKind::Stuck, "no admissible curve to peel before reaching the reduced target in " +
                                      to_string(ade.type));
  }
  report.factor_multiplicity[target] += 1;  // [O_{C_target}] + s_target = O_x

  // Telescoping: O_Pi + sum of all quotient factors must be O_x, and each
  // intermediate O_{D_k} must equal O_{D_{k-1}} + n_k s_{a_k}.
  const SimpleClasses simples = simple_classes(spec);
  bool ok = true;
  NumClass running = simples.opi;
  for (const auto& step : report.steps) {
    running = running + Rational(step.multiplicity) * simples.s[step.curve];
    if (!(running == divisor_class(spec, step.divisor))) ok = false;
  }
  running = running + simples.s[target];
  if (!(running == simples.ox)) ok = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (report.factor_multiplicity[i] != ade.fund_cycle[i]) ok = false;
  }
  report.telescoping_ok = ok;
  return report;
}

PhaseChainResult phase_chain_check(const SurfaceSpec& spec, const ChargeParams& params, const FiltrationReport& report) {
  const SimpleClasses simples = simple_classes(spec);
  PhaseChainResult out;
  auto push = [&](const NumClass& v, std::string label) {
    out.classes.push_back(v);
    out.charges.push_back(charge(spec, params, v));
    out.labels.push_back(std::move(label));
  };
  push(simples.opi, "O_Pi");
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    push(divisor_class(spec, report.steps[k].divisor), "O_D" + std::to_string(k + 1));
  }
  push(simples.ox, "O_x");
  const std::size_t ox_index = out.classes.size() - 1;
  for (std::size_t i = 0; i < simples.s.size(); ++i) push(simples.s[i], "s_" + std::to_string(i + 1));

  out.holds = true;
  auto fail = [&](std::size_t a, std::size_t b, const char* rel) {
    if (!out.first_violation) out.first_violation = "phi(" + out.labels[a] + ") " + rel + " phi(" + out.labels[b] + ")";
    out.holds = false;
  };
  for (std::size_t k = 0; k < ox_index; ++k) {
    if (compare_phase(out.charges[k], out.charges[k + 1]) != std::strong_ordering::less) fail(k, k + 1, "<");
  }
  if (phase_sector(out.charges[ox_index]) != PhaseSector::NegativeReal) {
    if (!out.first_violation) out.first_violation = "phi(O_x) = 1";
    out.holds = false;
  }
  for (std::size_t i = ox_index + 1; i < out.classes.size(); ++i) {
    if (compare_phase(out.charges[ox_index], out.charges[i]) != std::strong_ordering::less) fail(ox_index, i, "<");
  }
  return out;
}

std::vector<WalkStep> normalize_walk(const SurfaceSpec& spec, const NumClass& v) {
  const AdeData& ade = spec.ade();
  const std::size_t n = spec.curve_count();
  const RationalVector coeffs = pr_kernel(spec, v).coefficients;
  RationalVector shift(n);  // N = floor(a), updated in place
  Rational mass = 0;
  for (std::size_t i = 0; i < n; ++i) {
    shift[i] = floor(coeffs[i]);
    mass += abs(shift[i]);
  }
  const Rational cap = mass * n * 4;

  std::vector<WalkStep> trace;
  NumClass current = v;
  auto step = [&](std::size_t k, int direction) {
    if (trace.size() >= cap) {
      throw Error(ErrorKind::NonTerminating, "normalisation walk exceeded " + to_string(cap) + " steps");
    }
    WalkStep s;
    s.curve = k;
    s.direction = direction;
    s.pairing = kernel_pairing(spec, k, current);
    current.ch1[spec.e_offset() + k] -= direction;
    shift[k] -= direction;
    s.result = current;
    trace.push_back(std::move(s));
  };
  auto negated = [&shift] {
    RationalVector out = shift;
    for (auto& x : out) x = -x;
    return out;
  };

  while (std::any_of(shift.begin(), shift.end(), [](const Rational& x) { return x >= 1; })) {
    const auto k = cartan_select(ade, negated());
    step(static_cast<std::size_t>(*k), +1);
  }
  while (const auto l = cartan_select(ade, shift)) {
    step(static_cast<std::size_t>(*l), -1);
  }
  return trace;
}

std::vector<NumClass> simple_class_list(const SurfaceSpec& spec) {
  SimpleClasses simples = simple_classes(spec);
  std::vector<NumClass> out{simples.opi};
  out.insert(out.end(), simples.s.begin(), simples.s.end());
  out.push_back(simples.ox);
  return out;
}

}  // namespace adestab
