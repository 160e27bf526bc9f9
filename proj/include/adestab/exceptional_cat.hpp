#pragma once

#include "adestab/charge_engine.hpp"
#include "adestab/rational.hpp"
#include "adestab/surface_lattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace adestab {

/// Simple objects of the heart supported on the exceptional locus, as classes:
/// O_Pi = (0, sum m_i e_i, 1), the shifted kernel simples
/// s_i = O_{C_i}(-1)[1] = (0, -e_i, 0), and the skyscraper (0, 0, 1).
struct SimpleClasses {
  NumClass opi;
  std::vector<NumClass> s;
  NumClass ox;
};

/// Throws InternalContradiction if ox != opi + sum m_i s_i.
/// opi, s_1..s_n, ox in that order.
std::vector<NumClass> simple_class_list(const SurfaceSpec& spec);

SimpleClasses simple_classes(const SurfaceSpec& spec);

/// Jordan-Hoelder multiplicities: v = n0 opi + sum n_i s_i.
struct Decomposition {
  Rational n0;
  RationalVector n;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Requires ch0 = 0 and ch1 in the exceptional span (throws
/// NotExceptionalClass otherwise). Returns nullopt when some multiplicity is
/// negative or non-integral.
std::optional<Decomposition> decompose(const SurfaceSpec& spec, const NumClass& v);

struct PeelStep {
  std::size_t curve = 0;        ///< 0-based curve removed at this step
  int multiplicity = 0;         ///< copies of s_curve in the quotient
  std::vector<int> divisor;     ///< D_k after the step
};

/// Class-level skyscraper filtration O_Pi = O_{D_0} -> O_{D_1} -> ... -> O_x.
struct FiltrationReport {
  std::size_t target = 0;                 ///< 0-based curve containing the point
  std::vector<int> initial_divisor;       ///< fundamental cycle D_0
  std::vector<PeelStep> steps;
  int opi_multiplicity = 1;
  std::vector<int> factor_multiplicity;   ///< total copies of each s_i, final step included
  bool telescoping_ok = false;
};

/// (0, D, 1) for an effective exceptional divisor D.
NumClass divisor_class(const SurfaceSpec& spec, const std::vector<int>& divisor);

/// Greedy peeling from the fundamental cycle down to the reduced target
/// curve. Each step removes n = -D.e_a copies of a curve a with D.e_a < 0,
/// keeping D effective with connected support through the target; the curve
/// farthest from the target wins, ties to the smallest index. Throws
/// IndexOutOfRange and Stuck.
FiltrationReport skyscraper_filtration(const SurfaceSpec& spec, std::size_t target);

struct PhaseChainResult {
  bool holds = false;
  /// Classes in chain order: O_Pi, the intermediates, O_x, then every s_i.
  std::vector<NumClass> classes;
  std::vector<ChargeValue> charges;
  std::vector<std::string> labels;
  /// First failing comparison, e.g. "phi(O_D1) < phi(O_D2)".
  std::optional<std::string> first_violation;
};

/// Checks phi(O_Pi) < phi(O_D1) < ... < phi(O_x) = 1 < phi(s_i) for all i
/// under the eta-deformed charge given by `params`.
PhaseChainResult phase_chain_check(const SurfaceSpec& spec, const ChargeParams& params, const FiltrationReport& report);

struct WalkStep {
  std::size_t curve = 0;
  /// +1: one copy of s_k added (kernel coefficient drops by one);
  /// -1: one copy of s_k removed (coefficient rises by one).
  int direction = 0;
  /// e_k . ch1 before the step, i.e. chi(O_{C_k}(-1)[1], current).
  Rational pairing;
  NumClass result;
};

/// Class-level replay of the normalisation in the lifting argument. The
/// integer parts N = floor(a) of the kernel coefficients are driven to 0:
/// first, while some N_j >= 1, k = cartan_select(-N) and s_k is added; then,
/// while some N_j < 0, l = cartan_select(N) and s_l is removed. The
/// fractional parts are untouched, so the endpoint is
/// lift(pushforward(v), a). Throws NonTerminating past the step cap.
std::vector<WalkStep> normalize_walk(const SurfaceSpec& spec, const NumClass& v);

}  // namespace adestab
