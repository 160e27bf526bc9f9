#include "adestab/quad_surd.hpp"

#include "adestab/errors.hpp"

#include <cmath>

namespace adestab {

namespace {

// Writes n = k^2 * s with s squarefree. Trial division up to the cube root
// leaves at most two large prime factors, and a repeated pair is caught by
// the perfect-square test. Radicands beyond 10^18 are only divided up to
// 10^6 and may keep a large square factor, which costs canonical equality
// and nothing else.
void split_square(const mpz_class& n, mpz_class& k, mpz_class& s) {
  k = 1;
  s = n;
  mpz_class cube_root;
  mpz_root(cube_root.get_mpz_t(), n.get_mpz_t(), 3);
  const unsigned long limit = cube_root < 1'000'000 ? cube_root.get_ui() + 1 : 1'000'000UL;
  for (unsigned long p = 2; p <= limit; p += (p == 2 ? 1 : 2)) {
    const unsigned long pp = p * p;
    while (mpz_divisible_ui_p(s.get_mpz_t(), pp)) {
      s /= pp;
      k *= p;
    }
  }
  if (s > 1 && mpz_perfect_square_p(s.get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), s.get_mpz_t());
    k *= root;
    s = 1;
  }
}

int sign_of(const Rational& p, const Rational& q, const mpz_class& r) {
  const int sp = sgn(p);
  const int sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: compare p^2 with q^2 r.
  const Rational lhs = p * p;
  const Rational rhs = q * q * Rational(r);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sp : sq;
}

}  // namespace

QuadSurd::QuadSurd(Rational rational) : p_(std::move(rational)) {}

QuadSurd QuadSurd::make(const Rational& p, const Rational& q, const Rational& radicand) {
  if (radicand < 0) throw Error(ErrorKind::InternalContradiction, "negative radicand");
  QuadSurd out;
  out.p_ = p;
  if (q == 0 || radicand == 0) return out;
  // sqrt(a/b) = sqrt(a b) / b
  const mpz_class ab = radicand.get_num() * radicand.get_den();
  mpz_class k, s;
  split_square(ab, k, s);
  const Rational scale = Rational(k) / Rational(radicand.get_den());
  if (s == 1) {
    out.p_ += q * scale;
    return out;
  }
  out.q_ = q * scale;
  out.r_ = s;
  return out;
}

int QuadSurd::sign() const { return sign_of(p_, q_, r_); }

double QuadSurd::approx() const { return p_.get_d() + q_.get_d() * std::sqrt(r_.get_d()); }

std::string QuadSurd::to_string() const {
  if (q_ == 0) return adestab::to_string(p_);
  const bool negative = q_ < 0;
  const std::string coefficient = adestab::to_string(negative ? Rational(-q_) : q_);
  return adestab::to_string(p_) + (negative ? " - " : " + ") + coefficient + "*sqrt(" + r_.get_str() + ")";
}

namespace {

const mpz_class& shared_radicand(const QuadSurd& a, const QuadSurd& b) {
  if (a.is_rational()) return b.radicand();
  if (b.is_rational() || a.radicand() == b.radicand()) return a.radicand();
  throw Error(ErrorKind::InternalContradiction, "arithmetic across different radicands");
}

QuadSurd from_parts(const Rational& p, const Rational& q, const mpz_class& r) {
  return QuadSurd::make(p, q, q == 0 ? Rational(0) : Rational(r));
}

}  // namespace

QuadSurd operator+(const QuadSurd& a, const QuadSurd& b) {
  const mpz_class& r = shared_radicand(a, b);
  return from_parts(a.p_ + b.p_, a.q_ + b.q_, r);
}

QuadSurd operator-(const QuadSurd& a, const QuadSurd& b) {
  const mpz_class& r = shared_radicand(a, b);
  return from_parts(a.p_ - b.p_, a.q_ - b.q_, r);
}

QuadSurd operator*(const QuadSurd& a, const QuadSurd& b) {
  const mpz_class& r = shared_radicand(a, b);
  return from_parts(a.p_ * b.p_ + a.q_ * b.q_ * Rational(r), a.p_ * b.q_ + a.q_ * b.p_, r);
}

bool operator==(const QuadSurd& a, const QuadSurd& b) {
  return a.p_ == b.p_ && a.q_ == b.q_ && (a.q_ == 0 || a.r_ == b.r_);
}

std::strong_ordering operator<=>(const QuadSurd& a, const QuadSurd& b) {
  int s;
  if (a.is_rational() || b.is_rational() || a.r_ == b.r_) {
    s = (a - b).sign();
  } else {
    // sign of L - R with L = (pa - pb) + qa sqrt(ra), R = qb sqrt(rb)
    const Rational c = a.p_ - b.p_;
    const int sl = sign_of(c, a.q_, a.r_);
    const int sr = sgn(b.q_);
    if (sl != sr) {
      s = sl > sr ? 1 : -1;
    } else {
      // Same sign: compare squares. L^2 - R^2 = (c^2 + qa^2 ra - qb^2 rb) + 2 c qa sqrt(ra)
      const Rational base = c * c + a.q_ * a.q_ * Rational(a.r_) - b.q_ * b.q_ * Rational(b.r_);
      const int sq = sign_of(base, 2 * c * a.q_, a.r_);
      s = sl >= 0 ? sq : -sq;
    }
  }
  return s <=> 0;
}

}  // namespace adestab
