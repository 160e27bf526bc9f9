#include "adestab/rational.hpp"

#include "adestab/errors.hpp"

#include <cctype>

namespace adestab {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::InternalContradiction: return "InternalContradiction";
    case ErrorKind::BadSignature: return "BadSignature";
    case ErrorKind::BadBlock: return "BadBlock";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BadMargin: return "BadMargin";
    case ErrorKind::ZeroCharge: return "ZeroCharge";
    case ErrorKind::NotExceptionalClass: return "NotExceptionalClass";
    case ErrorKind::Stuck: return "Stuck";
    case ErrorKind::EmptyRange: return "EmptyRange";
    case ErrorKind::BoxTooLarge: return "BoxTooLarge";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);

  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational floor(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const RationalVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace adestab
