// Shared helpers for the unit and acceptance tests: seeded random inputs and
// brute-force oracles that do not go through the library's own algorithms.
#pragma once

#include "adestab/charge_engine.hpp"
#include "adestab/matrix.hpp"
#include "adestab/root_data.hpp"
#include "adestab/surface_lattice.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace adestab::testing {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Random rational p/q with |p| <= num_bound and 1 <= q <= den_bound.
inline Rational random_rational(Rng& rng, long num_bound, long den_bound) {
  return ratio(uniform_int(rng, -num_bound, num_bound), uniform_int(rng, 1, den_bound));
}

inline RationalVector random_vector(Rng& rng, std::size_t n, long num_bound, long den_bound) {
  RationalVector v(n);
  for (auto& x : v) x = random_rational(rng, num_bound, den_bound);
  return v;
}

/// Random class with integer coordinates in [-bound, bound].
inline NumClass random_integral_class(Rng& rng, const SurfaceSpec& spec, long bound) {
  NumClass v;
  v.ch0 = uniform_int(rng, -bound, bound);
  v.ch1.resize(spec.ns_rank());
  for (auto& c : v.ch1) c = uniform_int(rng, -bound, bound);
  v.ch2 = uniform_int(rng, -bound, bound);
  return v;
}

inline NumClass random_rational_class(Rng& rng, const SurfaceSpec& spec, long bound, long den) {
  NumClass v;
  v.ch0 = random_rational(rng, bound, den);
  v.ch1 = random_vector(rng, spec.ns_rank(), bound, den);
  v.ch2 = random_rational(rng, bound, den);
  return v;
}

inline PushedClass random_pushed_class(Rng& rng, const SurfaceSpec& spec, long bound, long den) {
  PushedClass w;
  w.ch0 = random_rational(rng, bound, den);
  w.ch1 = random_vector(rng, spec.pushed_ns_rank(), bound, den);
  w.ch2 = random_rational(rng, bound, den);
  return w;
}

/// Valid parameters drawn as beta = G^{-1} t with t_i > 0, sum m_i t_i < 1,
/// and z strictly above max(0, -beta^2/2).
inline ChargeParams random_valid_params(Rng& rng, const SurfaceSpec& spec) {
  const AdeData& ade = spec.ade();
  const std::size_t n = spec.curve_count();
  // t_i = w_i / (W * (sum m) + 1) keeps sum m_i t_i < 1 for w_i <= W.
  const long big = 50;
  RationalVector t(n);
  const Rational denom = Rational(big * ade.fund_cycle_sum() + uniform_int(rng, 1, 7));
  for (auto& ti : t) ti = Rational(uniform_int(rng, 1, big)) / denom;
  ChargeParams p;
  p.beta = solve(ade.gram, t);
  Rational bb = 0;
  for (std::size_t i = 0; i < n; ++i) bb += p.beta[i] * t[i];  // beta^2 = beta . (G beta)
  Rational floor_z = -bb / 2;
  if (floor_z < 0) floor_z = 0;
  p.z = floor_z + ratio(uniform_int(rng, 1, 40), uniform_int(rng, 1, 20));
  return p;
}

/// Independent reading of the charge formula, evaluated from raw coordinates:
/// Re = -ch2 + eps (beta . ch1) + s z ch0, Im = h . ch1 - alpha ch0 + eta (beta . ch1).
inline ChargeValue charge_oracle(const SurfaceSpec& spec, const ChargeParams& p, const NumClass& v) {
  const std::size_t off = spec.e_offset();
  Rational beta_dot = 0;
  for (std::size_t i = 0; i < spec.curve_count(); ++i) {
    for (std::size_t j = 0; j < spec.curve_count(); ++j) {
      beta_dot += p.beta[i] * spec.ade().gram(i, j) * v.ch1[off + j];
    }
  }
  Rational h_dot = 0;
  for (std::size_t j = 0; j < off; ++j) h_dot += spec.extra_gram()(0, j) * v.ch1[j];
  return {-v.ch2 + p.epsilon * beta_dot + p.s * p.z * v.ch0, h_dot - p.alpha * v.ch0 + p.eta * beta_dot};
}

/// Integer intersection number (sum m_i C_i) . C_j straight from the Gram.
inline long cycle_pairing(const AdeData& ade, const std::vector<int>& m, std::size_t j) {
  long s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * ade.gram(i, j).get_num().get_si();
  return s;
}

/// Componentwise minimum of all m in [1, bound]^n with (sum m_i C_i) . C_j <= 0
/// for every j; std::nullopt if there is no such m.
inline std::optional<std::vector<int>> exhaustive_fundamental_cycle(const AdeData& ade, int bound) {
  const std::size_t n = static_cast<std::size_t>(ade.rank());
  std::vector<long> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = ade.gram(i, j).get_num().get_si();
  std::vector<int> m(n, 1);
  std::optional<std::vector<int>> best;
  while (true) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      long s = 0;
      for (std::size_t i = 0; i < n; ++i) s += m[i] * g[i * n + j];
      ok = s <= 0;
    }
    if (ok) {
      if (!best) {
        best = m;
      } else {
        for (std::size_t i = 0; i < n; ++i) (*best)[i] = std::min((*best)[i], m[i]);
      }
    }
    std::size_t k = 0;
    while (k < n && m[k] == bound) m[k++] = 1;
    if (k == n) break;
    ++m[k];
  }
  return best;
}

/// All k with a_k < 0 and C_k . (sum a_i C_i) > 0, by direct scan.
inline std::vector<int> cartan_candidates(const AdeData& ade, const RationalVector& a) {
  std::vector<int> out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] >= 0) continue;
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += ade.gram(k, i) * a[i];
    if (s > 0) out.push_back(static_cast<int>(k));
  }
  return out;
}

/// Expected Dynkin arm lengths (sorted descending) around the trivalent node,
/// or empty for type A.
inline std::vector<int> expected_arms(const AdeType& t) {
  switch (t.series) {
    case Series::A: return {};
    case Series::D: return {t.rank - 3, 1, 1};
    case Series::E: return {t.rank - 4, 2, 1};
  }
  return {};
}

/// Determinant of -G for the type, a classical invariant (order of the
/// discriminant group).
inline long expected_det(const AdeType& t) {
  switch (t.series) {
    case Series::A: return t.rank + 1;
    case Series::D: return 4;
    case Series::E: return 9 - t.rank;
  }
  return 0;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline long bareiss_det(std::vector<std::vector<long>> a) {
  const std::size_t n = a.size();
  long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Surfaces used across the suites: d = 2 with no extra block, and d = 2
/// with one extra generator x (h.x = 1, x^2 = -2).
inline SurfaceSpec plain_surface(const AdeType& t) { return SurfaceSpec::simple(t, 2); }

inline SurfaceSpec extra_surface(const AdeType& t) {
  return SurfaceSpec(build_ade(t), 2, RatMatrix::from_rows({{2, 1}, {1, -2}}));
}

}  // namespace adestab::testing
