#include "adestab/surface_lattice.hpp"

#include "adestab/errors.hpp"

#include <utility>

namespace adestab {

SurfaceSpec::SurfaceSpec(AdeData ade, Rational h_square, RatMatrix extra_gram)
    : ade_(std::move(ade)), h_square_(std::move(h_square)), extra_gram_(std::move(extra_gram)) {
  if (extra_gram_.rows() == 0 || extra_gram_.rows() != extra_gram_.cols()) {
    throw Error(ErrorKind::BadBlock, "extra_gram must be a non-empty square matrix");
  }
  if (!extra_gram_.is_symmetric()) throw Error(ErrorKind::BadBlock, "extra_gram is not symmetric");
  if (extra_gram_(0, 0) != h_square_) {
    throw Error(ErrorKind::BadBlock, "extra_gram[0][0] must equal h_square");
  }
  const std::size_t top = extra_gram_.rows();
  const std::size_t n = static_cast<std::size_t>(ade_.rank());
  gram_ = RatMatrix(top + n, top + n);
  for (std::size_t i = 0; i < top; ++i)
    for (std::size_t j = 0; j < top; ++j) gram_(i, j) = extra_gram_(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram_(top + i, top + j) = ade_.gram(i, j);
}

SurfaceSpec SurfaceSpec::simple(const AdeType& type, const Rational& h_square) {
  RatMatrix extra(1, 1);
  extra(0, 0) = h_square;
  return SurfaceSpec(build_ade(type), h_square, extra);
}

bool NumClass::is_integral() const {
  if (!is_integer(ch0) || !is_integer(ch2)) return false;
  for (const auto& c : ch1) {
    if (!is_integer(c)) return false;
  }
  return true;
}

NumClass operator+(const NumClass& a, const NumClass& b) {
  NumClass out = a;
  out.ch0 += b.ch0;
  for (std::size_t i = 0; i < out.ch1.size(); ++i) out.ch1[i] += b.ch1[i];
  out.ch2 += b.ch2;
  return out;
}

NumClass operator-(const NumClass& a, const NumClass& b) { return a + Rational(-1) * b; }

NumClass operator*(const Rational& k, const NumClass& a) {
  NumClass out = a;
  out.ch0 *= k;
  for (auto& c : out.ch1) c *= k;
  out.ch2 *= k;
  return out;
}

NumClass zero_class(const SurfaceSpec& spec) { return NumClass{0, RationalVector(spec.ns_rank()), 0}; }

NumClass make_class(const SurfaceSpec& spec, const Rational& ch0, const Rational& h_coeff,
                    const RationalVector& x, const RationalVector& e, const Rational& ch2) {
  if (x.size() != spec.extra_rank() || e.size() != spec.curve_count()) {
    throw Error(ErrorKind::DimensionMismatch, "class coordinates do not match the surface");
  }
  NumClass v = zero_class(spec);
  v.ch0 = ch0;
  v.ch1[0] = h_coeff;
  for (std::size_t j = 0; j < x.size(); ++j) v.ch1[1 + j] = x[j];
  for (std::size_t i = 0; i < e.size(); ++i) v.ch1[spec.e_offset() + i] = e[i];
  v.ch2 = ch2;
  return v;
}

NumClass curve_class(const SurfaceSpec& spec, std::size_t i) {
  if (i >= spec.curve_count()) throw Error(ErrorKind::IndexOutOfRange, "curve index out of range");
  NumClass v = zero_class(spec);
  v.ch1[spec.e_offset() + i] = 1;
  return v;
}

RationalVector e_part(const SurfaceSpec& spec, const NumClass& v) {
  return RationalVector(v.ch1.begin() + static_cast<std::ptrdiff_t>(spec.e_offset()), v.ch1.end());
}

RationalVector flatten(const NumClass& v) {
  RationalVector out;
  out.reserve(v.ch1.size() + 2);
  out.push_back(v.ch0);
  out.insert(out.end(), v.ch1.begin(), v.ch1.end());
  out.push_back(v.ch2);
  return out;
}

NumClass unflatten(const SurfaceSpec& spec, const RationalVector& coords) {
  if (coords.size() != spec.ns_rank() + 2) throw Error(ErrorKind::DimensionMismatch, "wrong lattice dimension");
  return NumClass{coords.front(), RationalVector(coords.begin() + 1, coords.end() - 1), coords.back()};
}

RationalVector flatten(const PushedClass& v) {
  RationalVector out;
  out.push_back(v.ch0);
  out.insert(out.end(), v.ch1.begin(), v.ch1.end());
  out.push_back(v.ch2);
  return out;
}

PushedClass unflatten_pushed(const SurfaceSpec& spec, const RationalVector& coords) {
  if (coords.size() != spec.pushed_ns_rank() + 2) throw Error(ErrorKind::DimensionMismatch, "wrong lattice dimension");
  return PushedClass{coords.front(), RationalVector(coords.begin() + 1, coords.end() - 1), coords.back()};
}

SurfaceCertificate validate_surface(const SurfaceSpec& spec) {
  SurfaceCertificate cert{inertia(spec.gram())};
  const std::size_t expected_negative = spec.ns_rank() - 1;
  if (spec.h_square() <= 0 || cert.inertia != Inertia{1, expected_negative, 0}) {
    throw Error(ErrorKind::BadSignature,
                "NS Gram has inertia (" + std::to_string(cert.inertia.positive) + "," +
                    std::to_string(cert.inertia.negative) + "," + std::to_string(cert.inertia.zero) +
                    "), expected (1," + std::to_string(expected_negative) + ",0) with h^2 > 0");
  }
  return cert;
}

Rational intersect(const SurfaceSpec& spec, const RationalVector& u, const RationalVector& v) {
  if (u.size() != spec.ns_rank() || v.size() != spec.ns_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "divisor vectors do not match the NS rank");
  }
  return spec.gram().bilinear(u, v);
}

Rational discriminant(const SurfaceSpec& spec, const NumClass& v) {
  return intersect(spec, v.ch1, v.ch1) - 2 * v.ch0 * v.ch2;
}

Rational discriminant(const SurfaceSpec& spec, const PushedClass& w) {
  if (w.ch1.size() != spec.pushed_ns_rank()) throw Error(ErrorKind::DimensionMismatch, "pushed class has the wrong rank");
  return spec.extra_gram().bilinear(w.ch1, w.ch1) - 2 * w.ch0 * w.ch2;
}

Rational discriminant_pairing(const SurfaceSpec& spec, const NumClass& u, const NumClass& w) {
  return intersect(spec, u.ch1, w.ch1) - u.ch0 * w.ch2 - u.ch2 * w.ch0;
}

namespace {

RatMatrix polarized_form(const RatMatrix& gram) {
  const std::size_t m = gram.rows();
  RatMatrix form(m + 2, m + 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) form(1 + i, 1 + j) = gram(i, j);
  form(0, m + 1) = -1;
  form(m + 1, 0) = -1;
  return form;
}

}  // namespace

RatMatrix discriminant_form(const SurfaceSpec& spec) { return polarized_form(spec.gram()); }

RatMatrix pushed_discriminant_form(const SurfaceSpec& spec) { return polarized_form(spec.extra_gram()); }

PushedClass pushforward(const SurfaceSpec& spec, const NumClass& v) {
  if (v.ch1.size() != spec.ns_rank()) throw Error(ErrorKind::DimensionMismatch, "class does not match the surface");
  return PushedClass{v.ch0, RationalVector(v.ch1.begin(), v.ch1.begin() + static_cast<std::ptrdiff_t>(spec.e_offset())),
                     v.ch2};
}

KernelProjection pr_kernel(const SurfaceSpec& spec, const NumClass& v) {
  const std::size_t n = spec.curve_count();
  RationalVector rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = kernel_pairing(spec, i, v);
  KernelProjection out;
  out.coefficients = solve(spec.ade().gram, rhs);
  out.projected = zero_class(spec);
  for (std::size_t i = 0; i < n; ++i) out.projected.ch1[spec.e_offset() + i] = out.coefficients[i];
  return out;
}

NumClass lift(const SurfaceSpec& spec, const PushedClass& w) {
  return lift(spec, w, RationalVector(spec.curve_count()));
}

NumClass lift(const SurfaceSpec& spec, const PushedClass& w, const RationalVector& kernel_offset) {
  if (w.ch1.size() != spec.pushed_ns_rank() || kernel_offset.size() != spec.curve_count()) {
    throw Error(ErrorKind::DimensionMismatch, "pushed class or kernel offset does not match the surface");
  }
  NumClass v = zero_class(spec);
  v.ch0 = w.ch0;
  v.ch2 = w.ch2;
  for (std::size_t j = 0; j < w.ch1.size(); ++j) v.ch1[j] = w.ch1[j];
  // The canonical preimage has zero kernel projection, so the projection
  // coefficients of the result are exactly offset - floor(offset).
  for (std::size_t i = 0; i < kernel_offset.size(); ++i) {
    v.ch1[spec.e_offset() + i] = kernel_offset[i] - floor(kernel_offset[i]);
  }
  return v;
}

Rational kernel_pairing(const SurfaceSpec& spec, std::size_t i, const NumClass& v) {
  if (i >= spec.curve_count()) throw Error(ErrorKind::IndexOutOfRange, "curve index out of range");
  if (v.ch1.size() != spec.ns_rank()) throw Error(ErrorKind::DimensionMismatch, "class does not match the surface");
  const std::size_t row = spec.e_offset() + i;
  Rational s = 0;
  for (std::size_t j = 0; j < spec.ns_rank(); ++j) {
    if (spec.gram()(row, j) != 0) s += spec.gram()(row, j) * v.ch1[j];
  }
  return s;
}

DeltaPushCheck delta_push_check(const SurfaceSpec& spec, const NumClass& v) {
  DeltaPushCheck out;
  out.delta = discriminant(spec, v);
  out.delta_pushed = discriminant(spec, pushforward(spec, v));
  out.holds = out.delta_pushed >= out.delta;
  return out;
}

}  // namespace adestab
