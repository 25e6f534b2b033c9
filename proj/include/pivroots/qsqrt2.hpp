#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

#include "pivroots/error.hpp"

namespace pivroots {

/// Element p + q*sqrt(2) of the field Q(sqrt 2), stored as a pair of exact rationals.
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long v) : p_(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(const mpz_class& v) : p_(v) {}  // NOLINT
  QSqrt2(const mpq_class& v) : p_(v) {}  // NOLINT
  QSqrt2(mpq_class p, mpq_class q) : p_(std::move(p)), q_(std::move(q)) {}

  static QSqrt2 sqrt2() { return QSqrt2(mpq_class(0), mpq_class(1)); }

  const mpq_class& rational_part() const { return p_; }
  const mpq_class& sqrt2_part() const { return q_; }

  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }

  QSqrt2 conj() const { return {p_, -q_}; }
  /// Field norm p^2 - 2 q^2; nonzero for every nonzero element since sqrt 2 is irrational.
  mpq_class norm() const { return p_ * p_ - 2 * q_ * q_; }

  QSqrt2& operator+=(const QSqrt2& o) {
    p_ += o.p_;
    q_ += o.q_;
    return *this;
  }
  QSqrt2& operator-=(const QSqrt2& o) {
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
  }
  QSqrt2& operator*=(const QSqrt2& o) {
    mpq_class p = p_ * o.p_ + 2 * q_ * o.q_;
    mpq_class q = p_ * o.q_ + q_ * o.p_;
    p_ = std::move(p);
    q_ = std::move(q);
    return *this;
  }
  QSqrt2& operator/=(const QSqrt2& o) {
    if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero in Q(sqrt2)");
    mpq_class nrm = o.norm();
    *this *= o.conj();
    p_ /= nrm;
    q_ /= nrm;
    return *this;
  }

  friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { return a += b; }
  friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { return a -= b; }
  friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { return a *= b; }
  friend QSqrt2 operator/(QSqrt2 a, const QSqrt2& b) { return a /= b; }
  friend QSqrt2 operator-(const QSqrt2& a) { return {-a.p_, -a.q_}; }
  friend bool operator==(const QSqrt2& a, const QSqrt2& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

  std::string to_string() const {
    if (sgn(q_) == 0) return p_.get_str();
    return p_.get_str() + (sgn(q_) < 0 ? "-" : "+") + mpq_class(abs(q_)).get_str() + "*sqrt2";
  }

  friend std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << x.to_string(); }

 private:
  mpq_class p_;
  mpq_class q_;
};

}  // namespace pivroots
