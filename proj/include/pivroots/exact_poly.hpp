#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "pivroots/mp.hpp"
#include "pivroots/poly.hpp"

namespace pivroots {

enum class PolyFamily { Generic, Hermite, Okamoto };

/// Variable scaling: the stored integer polynomial P satisfies p(z) = P(s*z).
enum class Scale { One, Two, Sqrt2 };

enum class CoeffRing { Int, Rat, RatSqrt2 };

std::string_view to_string(PolyFamily f);
std::string_view to_string(Scale s);
PolyFamily parse_family(std::string_view s);

/// Exact polynomial in z, stored as integer coefficients
/// of P(w) with w = s*z.  H_{m,n} uses s = 2 and Q_{m,n} uses s = sqrt 2; in
/// both cases P is monic.
struct ExactPoly {
  PolyFamily family = PolyFamily::Generic;
  int m = 0;
  int n = 0;
  Scale scale = Scale::One;
  IntPoly coeffs;

  int degree() const { return coeffs.degree(); }
  bool is_zero() const { return coeffs.is_zero(); }

  /// Ring in which the coefficients of p(z) live.
  CoeffRing ring() const;
  /// Coefficients of p(z) over Q; throws for Scale::Sqrt2.
  RatPoly in_z() const;
  /// Coefficients of p(z) over Q(sqrt 2).
  Sqrt2Poly in_z_sqrt2() const;

  /// Value of p at z.
  mp::Complex eval(const mp::Complex& z) const;
};

/// The scale factor s as a multiprecision real.
mp::Real scale_value(Scale s);

enum class Traversal { MFirst, NFirst };

/// Generalised Hermite polynomial H_{m,n}.  The default traversal is memoised;
/// NFirst recomputes independently and exists for cross-checking.
ExactPoly gen_hermite(int m, int n, Traversal order = Traversal::MFirst);

/// Generalised Okamoto polynomial Q_{m,n} for any integers m, n.
ExactPoly gen_okamoto(int m, int n);

/// m^2 + n^2 + mn - m - n.
long okamoto_degree(int m, int n);

void set_hermite_cap(long max_mn);
void set_okamoto_cap(int max_abs_index);
long hermite_cap();
int okamoto_cap();

/// Number of polynomials held in the memo table.
std::size_t memo_size();
void clear_memo();

/// Exact quotient; operands must share a scale.
ExactPoly exact_divide(const ExactPoly& a, const ExactPoly& b);

/// Gcd with content 1 and positive leading coefficient, in the common scaled variable.
ExactPoly poly_gcd(const ExactPoly& a, const ExactPoly& b);

/// Plain integer polynomial in z (scale 1).
ExactPoly make_poly(IntPoly p);

}  // namespace pivroots
