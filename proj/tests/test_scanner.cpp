#include "adestab/errors.hpp"
#include "adestab/exceptional_cat.hpp"
#include "adestab/scanner.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace adestab;
using namespace adestab::testing;

namespace {

SurfaceSpec spec_of(const char* type) { return SurfaceSpec::simple(parse_ade_type(type), 2); }

NumClass cls(const SurfaceSpec& spec, Rational ch0, Rational h, RationalVector e, Rational ch2) {
  return make_class(spec, ch0, h, RationalVector(spec.extra_rank()), e, ch2);
}

ChargeParams with_parameter(ChargeParams p, WallParameter which, const Rational& t) {
  (which == WallParameter::Epsilon ? p.epsilon : p.s) = t;
  return p;
}

/// Alignment Re(w) Im(v) - Re(v) Im(w) at a surd parameter value, from two
/// oracle evaluations of the affine charges.
QuadSurd alignment_oracle(const SurfaceSpec& s, const ChargeParams& p, WallParameter which, const NumClass& v,
                          const NumClass& w, const QuadSurd& t) {
  auto at = [&](const NumClass& c) {
    const ChargeValue z0 = charge_oracle(s, with_parameter(p, which, 0), c);
    const ChargeValue z1 = charge_oracle(s, with_parameter(p, which, 1), c);
    return std::pair{QuadSurd(z0.re) + QuadSurd(z1.re - z0.re) * t, QuadSurd(z0.im) + QuadSurd(z1.im - z0.im) * t};
  };
  const auto [rv, iv] = at(v);
  const auto [rw, iw] = at(w);
  return rw * iv - rv * iw;
}

/// Brute-force box enumeration with the filter written out directly.
std::vector<NumClass> enumerate_oracle(const SurfaceSpec& s, const ChargeParams& p, const NumClass& v,
                                       const CandidateBox& box) {
  std::vector<IntRange> ranges{box.ch0, box.h};
  for (std::size_t i = 0; i < s.extra_rank(); ++i) ranges.push_back(box.x);
  for (std::size_t i = 0; i < s.curve_count(); ++i) ranges.push_back(box.e);
  ranges.push_back(box.ch2);
  ChargeParams flat = p;
  flat.eta = 0;
  const Rational im_v = charge_oracle(s, p, v).im;
  std::vector<long> c;
  for (const auto& r : ranges) c.push_back(r.lo);
  std::vector<NumClass> out;
  while (true) {
    NumClass w;
    w.ch0 = c[0];
    for (std::size_t i = 1; i + 1 < c.size(); ++i) w.ch1.push_back(c[i]);
    w.ch2 = c.back();
    const bool nonzero = std::any_of(c.begin(), c.end(), [](long x) { return x != 0; });
    const Rational im = charge_oracle(s, p, w).im;
    if (nonzero && im >= 0 && im <= im_v) {
      Rational sq = 0;
      for (std::size_t i = 0; i < s.ns_rank(); ++i)
        for (std::size_t j = 0; j < s.ns_rank(); ++j) sq += w.ch1[i] * s.gram()(i, j) * w.ch1[j];
      const ChargeValue z = charge_oracle(s, flat, w);
      if (sq - 2 * w.ch0 * w.ch2 + box.a * z.im * z.im + box.b * z.re * z.re >= 0) out.push_back(w);
    }
    // Odometer with the last coordinate fastest, matching lexicographic order.
    std::size_t k = c.size();
    while (k > 0 && c[k - 1] == ranges[k - 1].hi) {
      c[k - 1] = ranges[k - 1].lo;
      --k;
    }
    if (k == 0) break;
    ++c[k - 1];
  }
  return out;
}

}  // namespace

TEST_CASE("scan_walls: skyscraper against the simple classes is one degenerate segment") {
  const SurfaceSpec a1 = spec_of("A1");
  ChargeParams p;
  p.beta = {Rational(-1, 4)};
  const auto simples = simple_class_list(a1);
  const WallReport r = scan_walls(a1, p, simples.back(), simples, WallParameter::Epsilon,
                                  default_range(WallParameter::Epsilon));
  CHECK(r.walls.empty());
  CHECK(r.degenerate_witnesses.size() == 2);  // opi and s_1; ox itself is skipped
}

TEST_CASE("scan_walls: (1,h,0) against a kernel class has no wall") {
  const SurfaceSpec a1 = spec_of("A1");
  ChargeParams p;
  p.beta = {Rational(-1, 4)};
  const WallReport r = scan_walls(a1, p, cls(a1, 1, 1, {0}, 0), {cls(a1, 0, 0, {1}, 0), cls(a1, 1, 1, {0}, 0)},
                                  WallParameter::Epsilon, default_range(WallParameter::Epsilon));
  CHECK(r.walls.empty());
  CHECK(r.degenerate_witnesses.empty());
}

TEST_CASE("scan_walls: rational s-walls inside and outside the range") {
  const SurfaceSpec a1 = spec_of("A1");
  ChargeParams p;
  p.beta = {Rational(-1, 4)};
  // v = (1, h, 0) has Z = s + 2i.
  const NumClass v = cls(a1, 1, 1, {0}, 0);
  // (0, h, 3): Z = -3 + 2i aligns at s = -3; (2, h, 0): Z = 2s + 2i aligns at s = 0.
  const WallReport none = scan_walls(a1, p, v, {cls(a1, 0, 1, {0}, 3), cls(a1, 2, 1, {0}, 0)}, WallParameter::S,
                                     default_range(WallParameter::S));
  CHECK(none.walls.empty());
  // (1, 0, 5): Z = s - 5, so the alignment 2(s - 5) vanishes at s = 5, where
  // Z(w) = 0 is not a same-direction witness.
  const WallReport five = scan_walls(a1, p, v, {cls(a1, 1, 0, {0}, 5)}, WallParameter::S,
                                     default_range(WallParameter::S));
  REQUIRE(five.walls.size() == 1);
  CHECK(five.walls[0].value == QuadSurd(Rational(5)));
  // (1, 2h, 4): Z = s - 4 + 4i aligns with s + 2i when 2(s - 4) = 4s: s = -4, outside.
  // (2, 3h, 7): Z = 2s - 7 + 6i aligns when 2(2s - 7) = 6s: s = -7, outside.
  // (3, h, 8): Z = 3s - 8 + 2i aligns when 3s - 8 = s: s = 4, inside.
  const WallReport four = scan_walls(a1, p, v, {cls(a1, 1, 2, {0}, 4), cls(a1, 2, 3, {0}, 7), cls(a1, 3, 1, {0}, 8)},
                                     WallParameter::S, default_range(WallParameter::S));
  REQUIRE(four.walls.size() == 1);
  CHECK(four.walls[0].value == QuadSurd(Rational(4)));
  REQUIRE(four.walls[0].witnesses.size() == 1);
  CHECK(four.walls[0].same_phase[0]);
}

TEST_CASE("scan_walls: epsilon-walls under the eta-deformation") {
  const SurfaceSpec a1 = spec_of("A1");
  ChargeParams p;
  p.beta = {Rational(-1, 4)};
  p.eta = Rational(1, 3);
  // v = (1, h + e, 0): Z = (1 + eps/2) + (2 + 1/6) i.
  // w = (0, e, 1):     Z = (-1 + eps/2) + (1/6) i.
  // Alignment: (-1 + eps/2)(13/6) - (1 + eps/2)(1/6) = eps - 7/3, so eps = 7/3.
  const NumClass v = cls(a1, 1, 1, {1}, 0);
  const NumClass w = cls(a1, 0, 0, {1}, 1);
  const WallReport none = scan_walls(a1, p, v, {w}, WallParameter::Epsilon, ParamRange{0, 1, false, false});
  CHECK(none.walls.empty());
  const WallReport wide = scan_walls(a1, p, v, {w}, WallParameter::Epsilon, ParamRange{0, 3, false, false});
  REQUIRE(wide.walls.size() == 1);
  CHECK(wide.walls[0].value == QuadSurd(Rational(7, 3)));
  CHECK(wall_alignment_exact(a1, p, WallParameter::Epsilon, v, w, wide.walls[0].value));
  CHECK(alignment_oracle(a1, p, WallParameter::Epsilon, v, w, wide.walls[0].value).sign() == 0);
}

TEST_CASE("wall values are exact, sorted, in range, and complete at sample points") {
  Rng rng(61);
  for (const char* type : {"A2", "D4", "E6"}) {
    const SurfaceSpec s = extra_surface(parse_ade_type(type));
    for (WallParameter which : {WallParameter::Epsilon, WallParameter::S}) {
      for (int trial = 0; trial < 6; ++trial) {
        ChargeParams p = random_valid_params(rng, s);
        p.eta = ratio(uniform_int(rng, 0, 3), 5);
        p.alpha = random_rational(rng, 2, 3);
        const NumClass v = random_integral_class(rng, s, 3);
        std::vector<NumClass> candidates;
        for (int i = 0; i < 40; ++i) candidates.push_back(random_integral_class(rng, s, 3));
        const ParamRange range = default_range(which);
        const WallReport r = scan_walls(s, p, v, candidates, which, range);
        for (std::size_t i = 0; i < r.walls.size(); ++i) {
          const Wall& wall = r.walls[i];
          CHECK(range.contains(wall.value));
          if (i > 0) CHECK(r.walls[i - 1].value < wall.value);
          REQUIRE(wall.witnesses.size() == wall.same_phase.size());
          for (const NumClass& w : wall.witnesses) {
            CHECK(alignment_oracle(s, p, which, v, w, wall.value).sign() == 0);
          }
        }
        // Away from reported values, no non-degenerate candidate aligns.
        for (int k = 0; k < 10; ++k) {
          const Rational t = which == WallParameter::Epsilon ? ratio(uniform_int(rng, 1, 997), 997)
                                                             : ratio(uniform_int(rng, 997, 997 * 16), 997);
          const bool is_wall = std::any_of(r.walls.begin(), r.walls.end(),
                                           [&](const Wall& w) { return w.value == QuadSurd(t); });
          if (is_wall) continue;
          for (const NumClass& w : candidates) {
            if (w == v) continue;
            if (std::find(r.degenerate_witnesses.begin(), r.degenerate_witnesses.end(), w) !=
                r.degenerate_witnesses.end())
              continue;
            CHECK(alignment_oracle(s, p, which, v, w, QuadSurd(t)).sign() != 0);
          }
        }
        const WallReport serial = scan_walls_serial(s, p, v, candidates, which, range);
        REQUIRE(serial.walls.size() == r.walls.size());
        for (std::size_t i = 0; i < r.walls.size(); ++i) {
          CHECK(serial.walls[i].value == r.walls[i].value);
          CHECK(serial.walls[i].witnesses == r.walls[i].witnesses);
          CHECK(serial.walls[i].same_phase == r.walls[i].same_phase);
        }
        CHECK(serial.degenerate_witnesses == r.degenerate_witnesses);
      }
    }
  }
}

TEST_CASE("scan_walls rejects an empty range") {
  const SurfaceSpec a1 = spec_of("A1");
  ChargeParams p;
  p.beta = {Rational(-1, 4)};
  try {
    scan_walls(a1, p, cls(a1, 1, 1, {0}, 0), {}, WallParameter::S, ParamRange{2, 2, true, false});
    FAIL("expected EmptyRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyRange);
  }
  CHECK_THROWS_AS(scan_walls(a1, p, cls(a1, 1, 1, {0}, 0), {}, WallParameter::S, ParamRange{3, 2, false, false}),
                  Error);
}

TEST_CASE("enumerate_candidates: skyscraper on A1 finds the simple classes") {
  const SurfaceSpec a1 = spec_of("A1");
  ChargeParams p;
  p.beta = {Rational(-1, 4)};
  CandidateBox box;
  box.b = 8;
  const auto found = enumerate_candidates(a1, p, cls(a1, 0, 0, {0}, 1), box);
  for (const NumClass& simple : simple_class_list(a1)) {
    CHECK(std::find(found.begin(), found.end(), simple) != found.end());
  }
  CHECK(found == enumerate_oracle(a1, p, cls(a1, 0, 0, {0}, 1), box));
}

TEST_CASE("enumerate_candidates: Im Z(v) = 0 with a box forcing Im > 0 is empty") {
  const SurfaceSpec a1 = spec_of("A1");
  ChargeParams p;
  p.beta = {Rational(-1, 4)};
  CandidateBox box;
  box.ch0 = {0, 0};
  box.h = {1, 2};
  CHECK(enumerate_candidates(a1, p, cls(a1, 0, 0, {0}, 1), box).empty());
}

TEST_CASE("enumerate_candidates: A2 box count matches the brute-force oracle") {
  const SurfaceSpec a2 = spec_of("A2");
  ChargeParams p;
  p.beta = find_beta(a2, Rational(1, 3));
  CandidateBox box;
  box.ch0 = {-1, 1};
  box.e = {-2, 2};
  box.ch2 = {-2, 2};
  const NumClass ox = cls(a2, 0, 0, {0, 0}, 1);
  const auto found = enumerate_candidates(a2, p, ox, box);
  const auto oracle = enumerate_oracle(a2, p, ox, box);
  CHECK(found == oracle);
  CHECK(found.size() == 34);
  CHECK(box_cardinality(a2, box) == 3 * 25 * 5);
}

TEST_CASE("enumerate_candidates: parallel equals serial equals oracle on random inputs") {
  Rng rng(62);
  for (const char* type : {"A3", "D4"}) {
    const SurfaceSpec s = extra_surface(parse_ade_type(type));
    for (int trial = 0; trial < 4; ++trial) {
      ChargeParams p = random_valid_params(rng, s);
      p.eta = ratio(uniform_int(rng, 0, 2), 3);
      CandidateBox box;
      box.h = {0, 1};
      box.x = {-1, 1};
      box.a = uniform_int(rng, 0, 2);
      box.b = uniform_int(rng, 0, 9);
      const NumClass v = make_class(s, 1, 1, {0}, RationalVector(s.curve_count()), 0);
      const auto parallel = enumerate_candidates(s, p, v, box);
      CHECK(parallel == enumerate_candidates_serial(s, p, v, box));
      CHECK(parallel == enumerate_oracle(s, p, v, box));
    }
  }
}

TEST_CASE("enumerate_candidates refuses oversize boxes") {
  const SurfaceSpec e8 = spec_of("E8");
  ChargeParams p;
  p.beta = find_beta(e8, max_beta_margin(e8));
  CandidateBox box;
  box.e = {-5, 5};
  try {
    enumerate_candidates(e8, p, cls(e8, 0, 0, RationalVector(8), 1), box);
    FAIL("expected BoxTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoxTooLarge);
  }
}
