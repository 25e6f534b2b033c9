#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <string>
#include <string_view>
#include <utility>

namespace pivroots::mp {

/// num/den in lowest terms.
inline mpq_class ratio(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

/// Working precision (bits) used for newly created values on this thread.
long default_precision();
void set_default_precision(long bits);

/// RAII guard that switches the thread's working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits) : saved_(default_precision()) { set_default_precision(bits); }
  ~PrecisionScope() { set_default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

/// Owning wrapper around mpfr_t.  Results of binary operations carry the
/// larger precision of the operands; fresh values take the thread default.
class Real {
 public:
  Real() { mpfr_init2(v_, default_precision()); mpfr_set_zero(v_, 1); }
  Real(int x) : Real(static_cast<long>(x)) {}  // NOLINT
  Real(long x) { mpfr_init2(v_, default_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }  // NOLINT
  Real(double x) { mpfr_init2(v_, default_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }  // NOLINT
  Real(const mpz_class& x) { mpfr_init2(v_, default_precision()); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }  // NOLINT
  Real(const mpq_class& x) { mpfr_init2(v_, default_precision()); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }  // NOLINT
  explicit Real(std::string_view s);

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Fresh value with an explicit precision.
  static Real with_precision(long bits) {
    Real r(Tag{}, bits);
    mpfr_set_zero(r.v_, 1);
    return r;
  }
  static Real pi();
  static Real pi(long bits);

  long precision() const { return mpfr_get_prec(v_); }
  /// Round to a new precision in place.
  void round_to(long bits) { mpfr_prec_round(v_, bits, MPFR_RNDN); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific decimal string with the given significant digits (0 = all).
  std::string to_string(int digits = 0) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent() const { return is_zero() ? LONG_MIN / 2 : mpfr_get_exp(v_); }

  Real& operator+=(const Real& o) { grow(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { grow(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { grow(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { grow(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long s) { mpfr_mul_si(v_, v_, s, MPFR_RNDN); return *this; }
  Real& operator/=(long s) { mpfr_div_si(v_, v_, s, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long s) { return a *= s; }
  friend Real operator*(long s, Real a) { return a *= s; }
  friend Real operator/(Real a, long s) { return a /= s; }
  friend Real operator-(Real a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

 private:
  struct Tag {};
  Real(Tag, long bits) { mpfr_init2(v_, bits); }
  void grow(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

Real abs(Real x);
Real sqrt(Real x);
Real exp(Real x);
Real log(Real x);
Real sin(Real x);
Real cos(Real x);
Real acos(Real x);
Real asin(Real x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
Real ldexp(Real x, long e);
Real floor(Real x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

/// Complex number over Real with principal-branch elementary functions.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(Real::with_precision(re.precision())) {}  // NOLINT
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r) : re(r), im(0L) {}  // NOLINT
  Complex(int r) : re(r), im(0L) {}  // NOLINT
  Complex(double r, double i = 0.0) : re(r), im(i) {}  // NOLINT
  Complex(const mpz_class& r) : re(r), im(0L) {}  // NOLINT
  Complex(const mpq_class& r) : re(r), im(0L) {}  // NOLINT

  static Complex i() { return {Real(0L), Real(1L)}; }

  long precision() const { return std::max(re.precision(), im.precision()); }
  void round_to(long bits) {
    re.round_to(bits);
    im.round_to(bits);
  }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
  Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }
  Complex& operator*=(long s) { re *= s; im *= s; return *this; }
  Complex& operator/=(long s) { re /= s; im /= s; return *this; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  friend Complex operator*(const Real& s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, const Real& s) { return a /= s; }
  friend Complex operator*(Complex a, long s) { return a *= s; }
  friend Complex operator*(long s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, long s) { return a /= s; }
  friend Complex operator-(Complex a) { return {-a.re, -a.im}; }
};

Complex conj(Complex z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex sqrt(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
/// Principal arccosine: acos z = pi/2 + i log(i z + sqrt(1 - z^2)).
Complex acos(const Complex& z);
/// Principal power z^w = exp(w log z).
Complex pow(const Complex& z, const Complex& w);

std::string to_string(const Complex& z, int digits = 0);

}  // namespace pivroots::mp
