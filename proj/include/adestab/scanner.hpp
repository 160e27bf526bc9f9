#pragma once

#include "adestab/charge_engine.hpp"
#include "adestab/quad_surd.hpp"
#include "adestab/rational.hpp"
#include "adestab/surface_lattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace adestab {

enum class WallParameter { Epsilon, S };

WallParameter parse_wall_parameter(const std::string& text);
const char* to_string(WallParameter p);

/// Parameter interval with independently open or closed ends.
struct ParamRange {
  Rational lo;
  Rational hi;
  bool lo_open = true;
  bool hi_open = false;

  bool contains(const QuadSurd& x) const;
};

/// (0, 1] for epsilon, [1, 16] for s.
ParamRange default_range(WallParameter p);

/// Charge of one class as an affine function of the scanned parameter:
/// Re = re0 + re1 t, Im = im0 + im1 t.
struct AffineCharge {
  Rational re0, re1, im0, im1;
};

AffineCharge affine_charge(const SurfaceSpec& spec, const ChargeParams& params, WallParameter p, const NumClass& v);

struct Wall {
  QuadSurd value;
  /// Candidates whose phase aligns with v at this value.
  std::vector<NumClass> witnesses;
  /// Per witness: true when the two charges point the same way (genuine
  /// phase equality) rather than opposite ways.
  std::vector<bool> same_phase;
};

struct WallReport {
  WallParameter parameter = WallParameter::Epsilon;
  ParamRange range;
  NumClass v;
  std::vector<Wall> walls;
  /// Candidates aligned with v for every value in the range.
  std::vector<NumClass> degenerate_witnesses;
};

/// Roots of the alignment condition
///   Re Z_t(w) Im Z_t(v) - Re Z_t(v) Im Z_t(w) = 0
/// inside the range, for every candidate w != v. The condition is a
/// polynomial of degree <= 2 in t; irrational roots come back as exact
/// quadratic surds. Throws EmptyRange.
WallReport scan_walls(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v,
                      const std::vector<NumClass>& candidates, WallParameter p, const ParamRange& range);

/// Single-threaded reference for scan_walls.
WallReport scan_walls_serial(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v,
                             const std::vector<NumClass>& candidates, WallParameter p, const ParamRange& range);

/// Exact re-evaluation of the alignment condition at a reported wall value.
bool wall_alignment_exact(const SurfaceSpec& spec, const ChargeParams& params, WallParameter p, const NumClass& v,
                          const NumClass& w, const QuadSurd& t);

struct IntRange {
  long lo = 0;
  long hi = 0;
  std::size_t size() const { return hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1); }
};

/// Box of integral classes to search. The x and e bounds apply to every
/// coordinate of that block.
struct CandidateBox {
  IntRange ch0{-1, 1};
  IntRange h{0, 0};
  IntRange x{0, 0};
  IntRange e{-1, 1};
  IntRange ch2{-1, 1};
  Rational a = 0;
  Rational b = 0;
  std::size_t cap = 2'000'000;
};

/// Number of lattice points in the box.
std::size_t box_cardinality(const SurfaceSpec& spec, const CandidateBox& box);

/// Nonzero integral classes w of the box with 0 <= Im Z(w) <= Im Z(v) and
/// Q_{A,B}(w) >= 0, in lexicographic box order (ch0, h, x, e, ch2).
/// Throws BoxTooLarge past box.cap.
std::vector<NumClass> enumerate_candidates(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v,
                                           const CandidateBox& box);

/// Single-threaded reference for enumerate_candidates.
std::vector<NumClass> enumerate_candidates_serial(const SurfaceSpec& spec, const ChargeParams& params,
                                                  const NumClass& v, const CandidateBox& box);

/// Worker count: ADESTAB_THREADS when set and positive, else the OpenMP
/// default.
int worker_count();

}  // namespace adestab
