#pragma once

#include "adestab/rational.hpp"

#include <compare>
#include <string>

namespace adestab {

/// Exact real number p + q sqrt(r) with r a squarefree positive integer
/// (r = 1 and q = 0 for rationals). Arithmetic is only defined between
/// values sharing the radicand or when one side is rational; ordering works
/// across radicands.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(Rational rational);  // NOLINT: rationals embed implicitly
  /// p + q sqrt(radicand) for any non-negative rational radicand; square
  /// factors are pulled out.
  static QuadSurd make(const Rational& p, const Rational& q, const Rational& radicand);

  const Rational& rational_part() const { return p_; }
  const Rational& surd_coefficient() const { return q_; }
  const mpz_class& radicand() const { return r_; }
  bool is_rational() const { return q_ == 0; }

  int sign() const;
  double approx() const;
  /// "p", or "p + q*sqrt(r)".
  std::string to_string() const;

  friend QuadSurd operator+(const QuadSurd& a, const QuadSurd& b);
  friend QuadSurd operator-(const QuadSurd& a, const QuadSurd& b);
  friend QuadSurd operator*(const QuadSurd& a, const QuadSurd& b);

  friend bool operator==(const QuadSurd& a, const QuadSurd& b);
  friend std::strong_ordering operator<=>(const QuadSurd& a, const QuadSurd& b);

 private:
  Rational p_ = 0;
  Rational q_ = 0;
  mpz_class r_ = 1;
};

}  // namespace adestab
