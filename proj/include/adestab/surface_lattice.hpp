#pragma once

#include "adestab/matrix.hpp"
#include "adestab/rational.hpp"
#include "adestab/root_data.hpp"

#include <cstddef>
#include <vector>

namespace adestab {

/// Lattice model of NS of the resolution: Z h + (extra block) + (sum Z e_i),
/// with the exceptional block orthogonal to everything else.
///
/// Divisor coordinates are ordered (h, x_1..x_r, e_1..e_n).
class SurfaceSpec {
 public:
  /// Throws BadBlock if extra_gram is not (1+r)x(1+r) symmetric or its corner
  /// differs from h_square. The signature is checked by validate_surface.
  SurfaceSpec(AdeData ade, Rational h_square, RatMatrix extra_gram);

  /// Convenience: no extra block, extra_gram = [[h_square]].
  static SurfaceSpec simple(const AdeType& type, const Rational& h_square);

  const AdeData& ade() const { return ade_; }
  const Rational& h_square() const { return h_square_; }
  std::size_t extra_rank() const { return extra_gram_.rows() - 1; }
  std::size_t curve_count() const { return static_cast<std::size_t>(ade_.rank()); }
  /// 1 + r + n
  std::size_t ns_rank() const { return gram_.rows(); }
  /// 1 + r
  std::size_t pushed_ns_rank() const { return extra_gram_.rows(); }
  /// Offset of e_1 within a divisor vector.
  std::size_t e_offset() const { return extra_gram_.rows(); }

  const RatMatrix& extra_gram() const { return extra_gram_; }
  const RatMatrix& gram() const { return gram_; }

 private:
  AdeData ade_;
  Rational h_square_;
  RatMatrix extra_gram_;
  RatMatrix gram_;
};

/// Class in K_num of the resolution: (ch0, ch1, ch2).
struct NumClass {
  Rational ch0;
  RationalVector ch1;
  Rational ch2;

  bool is_integral() const;
  friend bool operator==(const NumClass&, const NumClass&) = default;
};

/// Class in K_num of the singular surface: ch1 in the basis (H, xbar_1..xbar_r).
struct PushedClass {
  Rational ch0;
  RationalVector ch1;
  Rational ch2;

  friend bool operator==(const PushedClass&, const PushedClass&) = default;
};

NumClass operator+(const NumClass& a, const NumClass& b);
NumClass operator-(const NumClass& a, const NumClass& b);
NumClass operator*(const Rational& k, const NumClass& a);

NumClass zero_class(const SurfaceSpec& spec);
/// (ch0, h_coeff h + sum x_j + sum e_i, ch2)
NumClass make_class(const SurfaceSpec& spec, const Rational& ch0, const Rational& h_coeff,
                    const RationalVector& x, const RationalVector& e, const Rational& ch2);
/// The class (0, e_i, 0) for a 0-based curve index.
NumClass curve_class(const SurfaceSpec& spec, std::size_t i);
/// Exceptional coordinates of ch1.
RationalVector e_part(const SurfaceSpec& spec, const NumClass& v);

/// Flattened coordinates (ch0, ch1..., ch2) and back.
RationalVector flatten(const NumClass& v);
NumClass unflatten(const SurfaceSpec& spec, const RationalVector& coords);
RationalVector flatten(const PushedClass& v);
PushedClass unflatten_pushed(const SurfaceSpec& spec, const RationalVector& coords);

struct SurfaceCertificate {
  Inertia inertia;
};

/// Checks d > 0 and that the full Gram has signature (1, n + r - 1) by
/// exact Sylvester inertia. Throws BadSignature carrying the inertia.
SurfaceCertificate validate_surface(const SurfaceSpec& spec);

/// u . v for divisor vectors. Throws DimensionMismatch.
Rational intersect(const SurfaceSpec& spec, const RationalVector& u, const RationalVector& v);

/// ch1^2 - 2 ch0 ch2
Rational discriminant(const SurfaceSpec& spec, const NumClass& v);
/// Same on the singular surface, using the extra block only.
Rational discriminant(const SurfaceSpec& spec, const PushedClass& w);

/// Polarization of the discriminant:
/// b(u, w) = ch1(u).ch1(w) - ch0(u) ch2(w) - ch2(u) ch0(w).
Rational discriminant_pairing(const SurfaceSpec& spec, const NumClass& u, const NumClass& w);

/// Matrix of the discriminant polarization on flattened coordinates.
RatMatrix discriminant_form(const SurfaceSpec& spec);
RatMatrix pushed_discriminant_form(const SurfaceSpec& spec);

/// Drops the exceptional coordinates.
PushedClass pushforward(const SurfaceSpec& spec, const NumClass& v);

struct KernelProjection {
  /// Coefficients a with pr(v) = sum a_i (0, e_i, 0).
  RationalVector coefficients;
  NumClass projected;
};

/// Orthogonal projection onto ker pushforward with respect to the
/// discriminant polarization: solves G a = (e_i . ch1(v))_i.
KernelProjection pr_kernel(const SurfaceSpec& spec, const NumClass& v);

/// Representative of w whose kernel projection has coefficients in [0,1).
/// Starts from the canonical preimage (no exceptional part), adds the
/// optional kernel offset and subtracts its integer part.
NumClass lift(const SurfaceSpec& spec, const PushedClass& w);
NumClass lift(const SurfaceSpec& spec, const PushedClass& w, const RationalVector& kernel_offset);

/// e_i . ch1(v), the Euler pairing of O_{C_i}(-1)[1] with v. Index is
/// 0-based; throws IndexOutOfRange.
Rational kernel_pairing(const SurfaceSpec& spec, std::size_t i, const NumClass& v);

struct DeltaPushCheck {
  Rational delta;
  Rational delta_pushed;
  bool holds = false;
};

/// Delta(pi_* v) >= Delta(v). A false `holds` is a bug certificate.
DeltaPushCheck delta_push_check(const SurfaceSpec& spec, const NumClass& v);

}  // namespace adestab
