#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "pivroots/error.hpp"
#include "pivroots/qsqrt2.hpp"

namespace pivroots {

namespace detail {
inline bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline bool is_zero(const QSqrt2& x) { return x.is_zero(); }
}  // namespace detail

/// Dense univariate polynomial with exact coefficients, ascending order.
/// The coefficient vector never carries a zero leading entry; the zero
/// polynomial has an empty vector and degree -1.
template <class R>
class Poly {
 public:
  using value_type = R;

  Poly() = default;
  Poly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(R v) { return Poly(std::vector<R>{std::move(v)}); }
  static Poly monomial(R v, int k) {
    std::vector<R> c(static_cast<std::size_t>(k) + 1);
    c[static_cast<std::size_t>(k)] = std::move(v);
    return Poly(std::move(c));
  }
  /// The identity polynomial z.
  static Poly x() { return monomial(R(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  const std::vector<R>& coeffs() const { return c_; }
  const R& operator[](std::size_t k) const { return c_[k]; }
  R coeff(int k) const {
    if (k < 0 || k > degree()) return R(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const R& lead() const { return c_.back(); }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<R> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * R(static_cast<long>(k));
    return Poly(std::move(d));
  }

  /// Horner evaluation at any type that can absorb coefficients of R.
  template <class T>
  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * x + T(*it);
    }
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const R& s) {
    if (detail::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Poly operator*(Poly a, const R& s) { return a *= s; }
  friend Poly operator*(const R& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Substitute z -> s*z, i.e. coefficient k is multiplied by s^k.
  Poly scaled(const R& s) const {
    std::vector<R> out(c_);
    R pw(1);
    for (auto& v : out) {
      v *= pw;
      pw *= s;
    }
    return Poly(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

using IntPoly = Poly<mpz_class>;
using RatPoly = Poly<mpq_class>;
using Sqrt2Poly = Poly<QSqrt2>;

template <class R>
Poly<R> multiply(const Poly<R>& a, const Poly<R>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<R> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (detail::is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Poly<R>(std::move(out));
}

/// Integer product; switches to Kronecker substitution for large operands.
IntPoly multiply(const IntPoly& a, const IntPoly& b);

/// Quotient and remainder over a field (R = mpq_class or QSqrt2).
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<R>{}, a};
  std::vector<R> r(a.coeffs());
  std::vector<R> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const R inv_lead = R(1) / b.lead();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    const R& top = r[static_cast<std::size_t>(k)];
    if (detail::is_zero(top)) continue;
    R f = top * inv_lead;
    for (int i = 0; i <= db; ++i) {
      r[static_cast<std::size_t>(k - db + i)] -= f * b[static_cast<std::size_t>(i)];
    }
    q[static_cast<std::size_t>(k - db)] = std::move(f);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<R>(std::move(q)), Poly<R>(std::move(r))};
}

/// a / b over a field; throws DIVISION_NOT_EXACT when b does not divide a.
template <class R>
Poly<R> exact_divide(const Poly<R>& a, const Poly<R>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::DivisionNotExact, "nonzero remainder of degree " + std::to_string(r.degree()));
  return q;
}

/// a / b over the integers; throws DIVISION_NOT_EXACT when the quotient is not in Z[x].
IntPoly exact_divide(const IntPoly& a, const IntPoly& b);

/// Every coefficient divided by an integer that must divide it.
IntPoly exact_divide(const IntPoly& a, const mpz_class& d);

/// Monic gcd over a field.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::InvalidArgument, "gcd(0, 0)");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a * (R(1) / a.lead());
}

mpz_class content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);

/// lc(b)^(deg a - deg b + 1) * a mod b, computed fraction-free.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Gcd over Z normalised to content 1 and positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Sturm chain P, P', -rem, ... with every member rescaled by positive rationals only.
std::vector<IntPoly> sturm_sequence(const IntPoly& p);

/// Number of distinct real roots, exact.
int count_real_roots(const IntPoly& p);

/// Number of distinct real roots in the half-open interval (lo, hi].
int count_real_roots(const IntPoly& p, const mpq_class& lo, const mpq_class& hi);

RatPoly to_rational(const IntPoly& p);
Sqrt2Poly to_sqrt2(const IntPoly& p);

/// Maximum bit length of the coefficients.
std::size_t max_bits(const IntPoly& p);

}  // namespace pivroots
