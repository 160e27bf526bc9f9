#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace adestab {

/// Exact rational scalar used everywhere in the library.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p", "p/q". Throws Error(ErrorKind::Parse) on malformed input
/// or zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Largest integer not exceeding q.
Rational floor(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }

/// Dot product of equal-length vectors. Caller checks lengths.
Rational dot(const RationalVector& a, const RationalVector& b);

bool is_zero(const RationalVector& v);

}  // namespace adestab
