#include "pivroots/mp.hpp"

#include <cstdlib>
#include <string>

#include "pivroots/error.hpp"

namespace pivroots::mp {

namespace {
thread_local long t_precision = 256;

template <class F>
Real unary(Real x, F f) {
  f(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}
}  // namespace

long default_precision() { return t_precision; }

void set_default_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) {
    throw Error(ErrorCode::InvalidArgument, "precision out of range: " + std::to_string(bits));
  }
  t_precision = bits;
}

Real::Real(std::string_view s) {
  mpfr_init2(v_, default_precision());
  std::string tmp(s);
  if (mpfr_set_str(v_, tmp.c_str(), 10, MPFR_RNDN) != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a number: " + tmp);
  }
}

Real Real::pi() { return pi(default_precision()); }

Real Real::pi(long bits) {
  Real r = with_precision(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  std::string out;
  if (mant[0] == '-') {
    out = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  out += mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  if (e - 1 != 0) out += "e" + std::to_string(e - 1);
  return out;
}

Real abs(Real x) { return unary(std::move(x), mpfr_abs); }
Real sqrt(Real x) { return unary(std::move(x), mpfr_sqrt); }
Real exp(Real x) { return unary(std::move(x), mpfr_exp); }
Real log(Real x) { return unary(std::move(x), mpfr_log); }
Real sin(Real x) { return unary(std::move(x), mpfr_sin); }
Real cos(Real x) { return unary(std::move(x), mpfr_cos); }
Real acos(Real x) { return unary(std::move(x), mpfr_acos); }
Real asin(Real x) { return unary(std::move(x), mpfr_asin); }

Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_precision(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r = Real::with_precision(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r = Real::with_precision(std::max(x.precision(), y.precision()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real ldexp(Real x, long e) {
  if (e >= 0) {
    mpfr_mul_2ui(x.raw(), x.raw(), static_cast<unsigned long>(e), MPFR_RNDN);
  } else {
    mpfr_div_2ui(x.raw(), x.raw(), static_cast<unsigned long>(-e), MPFR_RNDN);
  }
  return x;
}

Real floor(Real x) {
  mpfr_floor(x.raw(), x.raw());
  return x;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(o.re) >= abs(o.im)) {
    Real t = o.im / o.re;
    Real d = o.re + o.im * t;
    Real r = (re + im * t) / d;
    Real i = (im - re * t) / d;
    re = std::move(r);
    im = std::move(i);
  } else {
    Real t = o.re / o.im;
    Real d = o.re * t + o.im;
    Real r = (re * t + im) / d;
    Real i = (im * t - re) / d;
    re = std::move(r);
    im = std::move(i);
  }
  return *this;
}

Complex conj(Complex z) {
  z.im = -z.im;
  return z;
}

Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex sqrt(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return z;
  Real r = abs(z);
  Real t = sqrt(ldexp(r + abs(z.re), -1));
  if (z.re.sign() >= 0) {
    return {t, z.im / (t * 2)};
  }
  Real im = z.im.sign() < 0 ? -t : t;
  return {abs(z.im) / (t * 2), im};
}

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sin(const Complex& z) {
  Real e = exp(z.im);
  Real ei = Real(1L) / e;
  return {sin(z.re) * ldexp(e + ei, -1), cos(z.re) * ldexp(e - ei, -1)};
}

Complex cos(const Complex& z) {
  Real e = exp(z.im);
  Real ei = Real(1L) / e;
  return {cos(z.re) * ldexp(e + ei, -1), -(sin(z.re) * ldexp(e - ei, -1))};
}

Complex acos(const Complex& z) {
  if (z.im.is_zero() && abs(z.re) <= Real(1L)) {
    Real im = Real::with_precision(z.precision());
    return {acos(z.re), im};
  }
  Complex one(Real(1L));
  Complex w = log(Complex::i() * z + sqrt(one - z * z));
  Real half_pi = ldexp(Real::pi(z.precision()), -1);
  // acos z = pi/2 - asin z,  asin z = -i log(i z + sqrt(1 - z^2)).
  return {half_pi - w.im, w.re};
}

Complex pow(const Complex& z, const Complex& w) { return exp(w * log(z)); }

std::string to_string(const Complex& z, int digits) {
  std::string im = z.im.to_string(digits);
  if (im[0] != '-') im = "+" + im;
  return z.re.to_string(digits) + im + "i";
}

}  // namespace pivroots::mp
