#include "adestab/scanner.hpp"

#include "adestab/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>

namespace adestab {

WallParameter parse_wall_parameter(const std::string& text) {
  if (text == "epsilon" || text == "eps") return WallParameter::Epsilon;
  if (text == "s") return WallParameter::S;
  throw Error(ErrorKind::Parse, "wall parameter must be 'epsilon' or 's', got '" + text + "'");
}

const char* to_string(WallParameter p) { return p == WallParameter::Epsilon ? "epsilon" : "s"; }

bool ParamRange::contains(const QuadSurd& x) const {
  const auto lo_cmp = x <=> QuadSurd(lo);
  const auto hi_cmp = x <=> QuadSurd(hi);
  const bool above = lo_open ? lo_cmp > 0 : lo_cmp >= 0;
  const bool below = hi_open ? hi_cmp < 0 : hi_cmp <= 0;
  return above && below;
}

ParamRange default_range(WallParameter p) {
  if (p == WallParameter::Epsilon) return ParamRange{0, 1, true, false};
  return ParamRange{1, 16, false, false};
}

int worker_count() {
  if (const char* env = std::getenv("ADESTAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

AffineCharge affine_charge(const SurfaceSpec& spec, const ChargeParams& params, WallParameter p, const NumClass& v) {
  const Rational bc = beta_pairing(spec, params.beta, v);
  Rational h_dot = 0;
  for (std::size_t j = 0; j < spec.ns_rank(); ++j) h_dot += spec.gram()(0, j) * v.ch1[j];
  AffineCharge out;
  out.im0 = h_dot - params.alpha * v.ch0 + params.eta * bc;
  out.im1 = 0;
  if (p == WallParameter::Epsilon) {
    out.re0 = -v.ch2 + params.s * params.z * v.ch0;
    out.re1 = bc;
  } else {
    out.re0 = -v.ch2 + params.epsilon * bc;
    out.re1 = params.z * v.ch0;
  }
  return out;
}

namespace {

struct Alignment {
  Rational c0, c1, c2;
};

Alignment alignment_polynomial(const AffineCharge& v, const AffineCharge& w) {
  return Alignment{
      w.re0 * v.im0 - v.re0 * w.im0,
      w.re0 * v.im1 + w.re1 * v.im0 - v.re0 * w.im1 - v.re1 * w.im0,
      w.re1 * v.im1 - v.re1 * w.im1,
  };
}

QuadSurd eval_affine(const Rational& c0, const Rational& c1, const QuadSurd& t) {
  return QuadSurd(c0) + QuadSurd(c1) * t;
}

struct CandidateWalls {
  bool degenerate = false;
  std::vector<std::pair<QuadSurd, bool>> roots;  // value, same_phase
};

CandidateWalls walls_for(const AffineCharge& av, const AffineCharge& aw, const ParamRange& range) {
  CandidateWalls out;
  const Alignment poly = alignment_polynomial(av, aw);
  std::vector<QuadSurd> roots;
  if (poly.c2 == 0) {
    if (poly.c1 == 0) {
      out.degenerate = poly.c0 == 0;
      return out;
    }
    roots.emplace_back(-poly.c0 / poly.c1);
  } else {
    const Rational disc = poly.c1 * poly.c1 - 4 * poly.c2 * poly.c0;
    if (disc < 0) return out;
    const Rational centre = -poly.c1 / (2 * poly.c2);
    const Rational half = Rational(1) / (2 * poly.c2);
    if (disc == 0) {
      roots.emplace_back(centre);
    } else {
      roots.push_back(QuadSurd::make(centre, -half, disc));
      roots.push_back(QuadSurd::make(centre, half, disc));
      if (roots[0] == roots[1]) roots.pop_back();
    }
  }
  for (const auto& t : roots) {
    if (!range.contains(t)) continue;
    const QuadSurd dot = eval_affine(aw.re0, aw.re1, t) * eval_affine(av.re0, av.re1, t) +
                         eval_affine(aw.im0, aw.im1, t) * eval_affine(av.im0, av.im1, t);
    out.roots.emplace_back(t, dot.sign() > 0);
  }
  return out;
}

void check_range(const ParamRange& range) {
  const bool empty = range.lo > range.hi || (range.lo == range.hi && (range.lo_open || range.hi_open));
  if (empty) throw Error(ErrorKind::EmptyRange, "parameter range is empty");
}

WallReport assemble(WallParameter p, const ParamRange& range, const NumClass& v, const std::vector<NumClass>& candidates,
                    const std::vector<CandidateWalls>& per_candidate) {
  WallReport report;
  report.parameter = p;
  report.range = range;
  report.v = v;
  struct Hit {
    QuadSurd value;
    std::size_t candidate;
    bool same;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (per_candidate[i].degenerate) report.degenerate_witnesses.push_back(candidates[i]);
    for (const auto& [value, same] : per_candidate[i].roots) hits.push_back({value, i, same});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.value < b.value; });
  for (const auto& hit : hits) {
    if (report.walls.empty() || !(report.walls.back().value == hit.value)) {
      report.walls.push_back(Wall{hit.value, {}, {}});
    }
    report.walls.back().witnesses.push_back(candidates[hit.candidate]);
    report.walls.back().same_phase.push_back(hit.same);
  }
  return report;
}

}  // namespace

WallReport scan_walls_serial(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v,
                             const std::vector<NumClass>& candidates, WallParameter p, const ParamRange& range) {
  check_range(range);
  const AffineCharge av = affine_charge(spec, params, p, v);
  std::vector<CandidateWalls> per_candidate(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] == v) continue;
    per_candidate[i] = walls_for(av, affine_charge(spec, params, p, candidates[i]), range);
  }
  return assemble(p, range, v, candidates, per_candidate);
}

WallReport scan_walls(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v,
                      const std::vector<NumClass>& candidates, WallParameter p, const ParamRange& range) {
  check_range(range);
  const AffineCharge av = affine_charge(spec, params, p, v);
  std::vector<CandidateWalls> per_candidate(candidates.size());
  std::exception_ptr failure;
  std::mutex failure_lock;
  const auto count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
  for (long i = 0; i < count; ++i) {
    try {
      const auto& w = candidates[static_cast<std::size_t>(i)];
      if (w == v) continue;
      per_candidate[static_cast<std::size_t>(i)] = walls_for(av, affine_charge(spec, params, p, w), range);
    } catch (...) {
      std::lock_guard<std::mutex> guard(failure_lock);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(p, range, v, candidates, per_candidate);
}

bool wall_alignment_exact(const SurfaceSpec& spec, const ChargeParams& params, WallParameter p, const NumClass& v,
                          const NumClass& w, const QuadSurd& t) {
  const AffineCharge av = affine_charge(spec, params, p, v);
  const AffineCharge aw = affine_charge(spec, params, p, w);
  const QuadSurd cross = eval_affine(aw.re0, aw.re1, t) * eval_affine(av.im0, av.im1, t) -
                         eval_affine(av.re0, av.re1, t) * eval_affine(aw.im0, aw.im1, t);
  return cross.sign() == 0;
}

// ---------------------------------------------------------------------------
// Candidate enumeration

namespace {

// Precomputed linear data so the inner loop avoids rebuilding charge rows.
struct BoxEvaluator {
  const SurfaceSpec& spec;
  RatMatrix rows;       // Re, Im with the caller's eta
  RatMatrix flat_rows;  // Re, Im with eta = 0, for Q
  Rational im_v;
  Rational a, b;
  std::vector<IntRange> ranges;  // ch0, h, x..., e..., ch2

  BoxEvaluator(const SurfaceSpec& s, const ChargeParams& params, const NumClass& v, const CandidateBox& box)
      : spec(s), a(box.a), b(box.b) {
    rows = charge_matrix(spec, params);
    ChargeParams flat = params;
    flat.eta = 0;
    flat_rows = charge_matrix(spec, flat);
    im_v = charge(spec, params, v).im;
    ranges.push_back(box.ch0);
    ranges.push_back(box.h);
    for (std::size_t j = 0; j < spec.extra_rank(); ++j) ranges.push_back(box.x);
    for (std::size_t i = 0; i < spec.curve_count(); ++i) ranges.push_back(box.e);
    ranges.push_back(box.ch2);
  }

  RationalVector decode(std::size_t index) const {
    RationalVector coords(ranges.size());
    for (std::size_t k = ranges.size(); k-- > 0;) {
      const std::size_t width = ranges[k].size();
      coords[k] = ranges[k].lo + static_cast<long>(index % width);
      index /= width;
    }
    return coords;
  }

  static Rational row_dot(const RatMatrix& m, std::size_t r, const RationalVector& x) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (m(r, j) != 0 && x[j] != 0) s += m(r, j) * x[j];
    }
    return s;
  }

  bool accept(const RationalVector& coords) const {
    if (is_zero(coords)) return false;
    const Rational im = row_dot(rows, 1, coords);
    if (im < 0 || im > im_v) return false;
    const Rational re = row_dot(flat_rows, 0, coords);
    const Rational im_flat = row_dot(flat_rows, 1, coords);
    const NumClass w = unflatten(spec, coords);
    const Rational q = discriminant(spec, w) + a * im_flat * im_flat + b * re * re;
    return q >= 0;
  }
};

void check_box(const SurfaceSpec& spec, const CandidateBox& box) {
  const std::size_t total = box_cardinality(spec, box);
  if (total > box.cap) {
    throw Error(ErrorKind::BoxTooLarge,
                "box holds " + std::to_string(total) + " classes, cap is " + std::to_string(box.cap));
  }
}

}  // namespace

std::size_t box_cardinality(const SurfaceSpec& spec, const CandidateBox& box) {
  // Saturating product so absurd boxes report "too large" instead of wrapping.
  const std::size_t limit = static_cast<std::size_t>(-1);
  std::size_t total = 1;
  auto mul = [&](std::size_t f) {
    if (f == 0) { total = 0; return; }
    total = total > limit / f ? limit : total * f;
  };
  mul(box.ch0.size());
  mul(box.h.size());
  for (std::size_t j = 0; j < spec.extra_rank(); ++j) mul(box.x.size());
  for (std::size_t i = 0; i < spec.curve_count(); ++i) mul(box.e.size());
  mul(box.ch2.size());
  return total;
}

std::vector<NumClass> enumerate_candidates_serial(const SurfaceSpec& spec, const ChargeParams& params,
                                                  const NumClass& v, const CandidateBox& box) {
  check_box(spec, box);
  const BoxEvaluator eval(spec, params, v, box);
  const std::size_t total = box_cardinality(spec, box);
  std::vector<NumClass> out;
  for (std::size_t i = 0; i < total; ++i) {
    const RationalVector coords = eval.decode(i);
    if (eval.accept(coords)) out.push_back(unflatten(spec, coords));
  }
  return out;
}

std::vector<NumClass> enumerate_candidates(const SurfaceSpec& spec, const ChargeParams& params, const NumClass& v,
                                           const CandidateBox& box) {
  check_box(spec, box);
  const BoxEvaluator eval(spec, params, v, box);
  const std::size_t total = box_cardinality(spec, box);
  constexpr std::size_t chunk = 1024;
  const std::size_t chunks = (total + chunk - 1) / chunk;
  std::vector<std::vector<NumClass>> found(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (long c = 0; c < static_cast<long>(chunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * chunk;
    const std::size_t end = std::min(total, begin + chunk);
    auto& local = found[static_cast<std::size_t>(c)];
    for (std::size_t i = begin; i < end; ++i) {
      const RationalVector coords = eval.decode(i);
      if (eval.accept(coords)) local.push_back(unflatten(spec, coords));
    }
  }
  std::vector<NumClass> out;
  for (auto& part : found) {
    for (auto& w : part) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace adestab
