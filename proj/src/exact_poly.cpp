#include "pivroots/exact_poly.hpp"

#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <tuple>

namespace pivroots {

std::string_view to_string(PolyFamily f) {
  switch (f) {
    case PolyFamily::Generic: return "generic";
    case PolyFamily::Hermite: return "hermite";
    case PolyFamily::Okamoto: return "okamoto";
  }
  return "generic";
}

std::string_view to_string(Scale s) {
  switch (s) {
    case Scale::One: return "1";
    case Scale::Two: return "2";
    case Scale::Sqrt2: return "sqrt2";
  }
  return "1";
}

PolyFamily parse_family(std::string_view s) {
  if (s == "hermite" || s == "H") return PolyFamily::Hermite;
  if (s == "okamoto" || s == "Q") return PolyFamily::Okamoto;
  if (s == "generic") return PolyFamily::Generic;
  throw Error(ErrorCode::InvalidArgument, "unknown polynomial family: " + std::string(s));
}

CoeffRing ExactPoly::ring() const {
  switch (scale) {
    case Scale::One: return CoeffRing::Int;
    case Scale::Two: return CoeffRing::Int;
    case Scale::Sqrt2: return CoeffRing::RatSqrt2;
  }
  return CoeffRing::Int;
}

RatPoly ExactPoly::in_z() const {
  switch (scale) {
    case Scale::One: return to_rational(coeffs);
    case Scale::Two: return to_rational(coeffs.scaled(mpz_class(2)));
    case Scale::Sqrt2: break;
  }
  throw Error(ErrorCode::InvalidArgument, "polynomial in z/sqrt2 has no rational form");
}

Sqrt2Poly ExactPoly::in_z_sqrt2() const {
  if (scale == Scale::Sqrt2) return to_sqrt2(coeffs).scaled(QSqrt2::sqrt2());
  return to_sqrt2(coeffs).scaled(scale == Scale::Two ? QSqrt2(2) : QSqrt2(1));
}

mp::Real scale_value(Scale s) {
  switch (s) {
    case Scale::One: return mp::Real(1L);
    case Scale::Two: return mp::Real(2L);
    case Scale::Sqrt2: return mp::sqrt(mp::Real(2L));
  }
  return mp::Real(1L);
}

mp::Complex ExactPoly::eval(const mp::Complex& z) const {
  mp::Complex w = z * scale_value(scale);
  mp::Complex acc(0L);
  for (int k = coeffs.degree(); k >= 0; --k) {
    acc *= w;
    acc.re += mp::Real(coeffs[static_cast<std::size_t>(k)]);
  }
  return acc;
}

long okamoto_degree(int m, int n) {
  const long a = m, b = n;
  return a * a + b * b + a * b - a - b;
}

namespace {

std::atomic<long> g_hermite_cap{4000};
std::atomic<int> g_okamoto_cap{24};

using Key = std::tuple<int, int, int>;

class Memo {
 public:
  std::optional<IntPoly> find(const Key& k) const {
    std::shared_lock lock(mu_);
    auto it = table_.find(k);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void insert(const Key& k, const IntPoly& p) {
    std::unique_lock lock(mu_);
    table_.emplace(k, p);
  }
  std::size_t size() const {
    std::shared_lock lock(mu_);
    return table_.size();
  }
  void clear() {
    std::unique_lock lock(mu_);
    table_.clear();
  }
  // Held while a chain is being generated so concurrent builders do not race.
  std::mutex& build_mutex() { return build_; }

 private:
  mutable std::shared_mutex mu_;
  std::mutex build_;
  std::map<Key, IntPoly> table_;
};

Memo& memo() {
  static Memo table;
  return table;
}

constexpr int kHermite = 0;
constexpr int kOkamoto = 1;

const IntPoly& one() {
  static const IntPoly p = IntPoly::constant(mpz_class(1));
  return p;
}

const IntPoly& ident() {
  static const IntPoly p = IntPoly::x();
  return p;
}

// P P'' - (P')^2
IntPoly wronskian_like(const IntPoly& p) {
  IntPoly d1 = p.derivative();
  IntPoly d2 = d1.derivative();
  return multiply(p, d2) - multiply(d1, d1);
}

IntPoly divide_step(const IntPoly& num, const IntPoly& divisor) {
  if (divisor.is_zero()) throw Error(ErrorCode::ZeroDivisorInRecursion, "bilinear recursion hit a zero divisor");
  return exact_divide(num, divisor);
}

// Scaled Hermite m-step: P_{m+1} P_{m-1} = [2(PP''-P'^2) + m P^2] / m.
IntPoly hermite_m_step(const IntPoly& p, const IntPoly& prev, int m) {
  IntPoly num = wronskian_like(p) * mpz_class(2) + multiply(p, p) * mpz_class(m);
  return divide_step(exact_divide(num, mpz_class(m)), prev);
}

// Scaled Hermite n-step: P_{n+1} P_{n-1} = [-2(PP''-P'^2) + n P^2] / n.
IntPoly hermite_n_step(const IntPoly& p, const IntPoly& prev, int n) {
  IntPoly num = wronskian_like(p) * mpz_class(-2) + multiply(p, p) * mpz_class(n);
  return divide_step(exact_divide(num, mpz_class(n)), prev);
}

// Scaled Okamoto step: P_next P_other = 9(PP''-P'^2) + (w^2 + c) P^2.
IntPoly okamoto_step(const IntPoly& p, const IntPoly& other, long c) {
  IntPoly sq = multiply(p, p);
  IntPoly num = wronskian_like(p) * mpz_class(9) + sq * mpz_class(c);
  std::vector<mpz_class> shifted(sq.size() + 2);
  for (std::size_t k = 0; k < sq.size(); ++k) shifted[k + 2] = sq[k];
  num += IntPoly(std::move(shifted));
  return divide_step(num, other);
}

IntPoly hermite_raw(int m, int n) {
  if (m == 0 || n == 0) return one();
  if (auto hit = memo().find({kHermite, m, n})) return *hit;
  std::lock_guard build(memo().build_mutex());
  if (auto hit = memo().find({kHermite, m, n})) return *hit;

  // Column m = 1 by the n-recursion, then the m-recursion at fixed n.
  IntPoly prev = one();
  IntPoly cur = ident();
  for (int k = 1; k < n; ++k) {
    auto next = memo().find({kHermite, 1, k + 1});
    IntPoly nx = next ? *next : hermite_n_step(cur, prev, k);
    if (!next) memo().insert({kHermite, 1, k + 1}, nx);
    prev = std::move(cur);
    cur = std::move(nx);
  }
  memo().insert({kHermite, 1, n}, cur);
  prev = one();
  for (int k = 1; k < m; ++k) {
    auto next = memo().find({kHermite, k + 1, n});
    IntPoly nx = next ? *next : hermite_m_step(cur, prev, k);
    if (!next) memo().insert({kHermite, k + 1, n}, nx);
    prev = std::move(cur);
    cur = std::move(nx);
  }
  return cur;
}

IntPoly hermite_n_first(int m, int n) {
  if (m == 0 || n == 0) return one();
  IntPoly prev = one();
  IntPoly cur = ident();
  for (int k = 1; k < m; ++k) {
    IntPoly nx = hermite_m_step(cur, prev, k);
    prev = std::move(cur);
    cur = std::move(nx);
  }
  prev = one();
  for (int k = 1; k < n; ++k) {
    IntPoly nx = hermite_n_step(cur, prev, k);
    prev = std::move(cur);
    cur = std::move(nx);
  }
  return cur;
}

IntPoly okamoto_cached(int m, int n, const IntPoly& p) {
  memo().insert({kOkamoto, m, n}, p);
  return p;
}

// Row n0 in {0, 1} from the seeds at m = 0, 1, walked up or down by the m-recursion
// P_{m+1} P_{m-1} = 9(PP''-P'^2) + (w^2 + 3(2m+n-1)) P^2.
IntPoly okamoto_row(int m, int n0) {
  if (auto hit = memo().find({kOkamoto, m, n0})) return *hit;
  IntPoly lo = one();
  IntPoly hi = n0 == 0 ? one() : ident();
  if (m >= 1) {
    for (int k = 1; k < m; ++k) {
      IntPoly nx = okamoto_step(hi, lo, 3L * (2L * k + n0 - 1));
      okamoto_cached(k + 1, n0, nx);
      lo = std::move(hi);
      hi = std::move(nx);
    }
    return hi;
  }
  // Descending: P_{k-1} = [...]_k / P_{k+1}.
  for (int k = 0; k > m; --k) {
    IntPoly nx = okamoto_step(lo, hi, 3L * (2L * k + n0 - 1));
    okamoto_cached(k - 1, n0, nx);
    hi = std::move(lo);
    lo = std::move(nx);
  }
  return lo;
}

// Column at fixed m from rows 0 and 1 by the n-recursion
// P_{n+1} P_{n-1} = 9(PP''-P'^2) + (w^2 + 3(1-m-2n)) P^2.
IntPoly okamoto_raw(int m, int n) {
  if (auto hit = memo().find({kOkamoto, m, n})) return *hit;
  std::lock_guard build(memo().build_mutex());
  if (auto hit = memo().find({kOkamoto, m, n})) return *hit;
  IntPoly lo = okamoto_cached(m, 0, okamoto_row(m, 0));
  IntPoly hi = okamoto_cached(m, 1, okamoto_row(m, 1));
  if (n >= 1) {
    for (int k = 1; k < n; ++k) {
      IntPoly nx = okamoto_step(hi, lo, 3L * (1L - m - 2L * k));
      okamoto_cached(m, k + 1, nx);
      lo = std::move(hi);
      hi = std::move(nx);
    }
    return hi;
  }
  for (int k = 0; k > n; --k) {
    IntPoly nx = okamoto_step(lo, hi, 3L * (1L - m - 2L * k));
    okamoto_cached(m, k - 1, nx);
    hi = std::move(lo);
    lo = std::move(nx);
  }
  return lo;
}

}  // namespace

void set_hermite_cap(long max_mn) { g_hermite_cap = max_mn; }
void set_okamoto_cap(int max_abs_index) { g_okamoto_cap = max_abs_index; }
long hermite_cap() { return g_hermite_cap; }
int okamoto_cap() { return g_okamoto_cap; }

std::size_t memo_size() { return memo().size(); }
void clear_memo() { memo().clear(); }

ExactPoly gen_hermite(int m, int n, Traversal order) {
  if (m < 0 || n < 0) throw Error(ErrorCode::InvalidArgument, "Hermite indices must be nonnegative");
  if (static_cast<long>(m) * n > g_hermite_cap) {
    throw Error(ErrorCode::CapExceeded, "m*n = " + std::to_string(static_cast<long>(m) * n) + " exceeds cap " +
                                            std::to_string(g_hermite_cap.load()));
  }
  ExactPoly out;
  out.family = PolyFamily::Hermite;
  out.m = m;
  out.n = n;
  out.scale = Scale::Two;
  out.coeffs = order == Traversal::MFirst ? hermite_raw(m, n) : hermite_n_first(m, n);
  return out;
}

ExactPoly gen_okamoto(int m, int n) {
  const int cap = g_okamoto_cap;
  if (std::abs(m) > cap || std::abs(n) > cap) {
    throw Error(ErrorCode::CapExceeded, "Okamoto index beyond cap " + std::to_string(cap));
  }
  ExactPoly out;
  out.family = PolyFamily::Okamoto;
  out.m = m;
  out.n = n;
  out.scale = Scale::Sqrt2;
  if ((m == 0 && n == 0) || (m == 1 && n == 0) || (m == 0 && n == 1)) {
    out.coeffs = one();
  } else if (m == 1 && n == 1) {
    out.coeffs = ident();
  } else {
    out.coeffs = okamoto_raw(m, n);
  }
  return out;
}

ExactPoly exact_divide(const ExactPoly& a, const ExactPoly& b) {
  if (a.scale != b.scale) throw Error(ErrorCode::InvalidArgument, "operands use different variable scalings");
  ExactPoly out;
  out.scale = a.scale;
  out.coeffs = exact_divide(a.coeffs, b.coeffs);
  return out;
}

ExactPoly poly_gcd(const ExactPoly& a, const ExactPoly& b) {
  if (a.scale != b.scale) throw Error(ErrorCode::InvalidArgument, "operands use different variable scalings");
  ExactPoly out;
  out.scale = a.scale;
  out.coeffs = gcd(a.coeffs, b.coeffs);
  return out;
}

ExactPoly make_poly(IntPoly p) {
  ExactPoly out;
  out.coeffs = std::move(p);
  return out;
}

}  // namespace pivroots
