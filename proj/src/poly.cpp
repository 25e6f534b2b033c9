#include "pivroots/poly.hpp"

#include <cstdlib>

namespace pivroots {

namespace {

constexpr std::size_t kKroneckerThreshold = 24;

std::size_t bits_of(const mpz_class& v) { return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

// Evaluate at 2^b.  Signed coefficients are fine; the value is an ordinary integer.
mpz_class pack(const IntPoly& p, std::size_t b) {
  mpz_class acc = 0;
  for (int k = p.degree(); k >= 0; --k) {
    mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), b);
    acc += p[static_cast<std::size_t>(k)];
  }
  return acc;
}

// Inverse of pack for coefficients with |c| < 2^(b-1).
std::vector<mpz_class> unpack(mpz_class v, std::size_t b, std::size_t max_terms) {
  std::vector<mpz_class> out;
  out.reserve(max_terms);
  mpz_class half = 1;
  mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), b - 1);
  mpz_class full = half * 2;
  mpz_class low;
  while (sgn(v) != 0) {
    if (out.size() >= max_terms) {
      out.clear();
      return out;
    }
    mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), b);
    if (low >= half) low -= full;
    v -= low;
    mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), b);
    out.push_back(low);
  }
  return out;
}

IntPoly multiply_schoolbook(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

std::size_t bit_length(std::size_t v) {
  std::size_t n = 0;
  while (v) {
    ++n;
    v >>= 1;
  }
  return n;
}

IntPoly exact_divide_schoolbook(const IntPoly& a, const IntPoly& b) {
  const int db = b.degree();
  std::vector<mpz_class> r(a.coeffs());
  std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db) + 1);
  const mpz_class& lb = b.lead();
  const bool unit = (lb == 1);
  for (int k = a.degree(); k >= db; --k) {
    mpz_class& top = r[static_cast<std::size_t>(k)];
    if (sgn(top) == 0) continue;
    mpz_class f;
    if (unit) {
      f = top;
    } else {
      if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) {
        throw Error(ErrorCode::DivisionNotExact, "leading coefficient not divisible");
      }
      mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    }
    for (int i = 0; i <= db; ++i) {
      mpz_submul(r[static_cast<std::size_t>(k - db + i)].get_mpz_t(), f.get_mpz_t(),
                 b[static_cast<std::size_t>(i)].get_mpz_t());
    }
    q[static_cast<std::size_t>(k - db)] = std::move(f);
  }
  for (int k = 0; k < db; ++k) {
    if (sgn(r[static_cast<std::size_t>(k)]) != 0) {
      throw Error(ErrorCode::DivisionNotExact, "nonzero remainder");
    }
  }
  return IntPoly(std::move(q));
}

}  // namespace

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (std::min(a.size(), b.size()) < kKroneckerThreshold) return multiply_schoolbook(a, b);
  const std::size_t slot = max_bits(a) + max_bits(b) + bit_length(std::min(a.size(), b.size())) + 2;
  mpz_class prod = pack(a, slot) * pack(b, slot);
  auto coeffs = unpack(std::move(prod), slot, a.size() + b.size());
  return IntPoly(std::move(coeffs));
}

IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw Error(ErrorCode::DivisionNotExact, "divisor degree exceeds dividend degree");
  if (b.degree() == 0) return exact_divide(a, b[0]);
  if (std::min<std::size_t>(b.size(), a.size() - b.size() + 1) < kKroneckerThreshold) {
    return exact_divide_schoolbook(a, b);
  }
  // Any integer factor of a has coefficients below 2^deg(a) * ||a||_2 (Mignotte), which
  // bounds the slot width needed to read the quotient back from a(2^s) / b(2^s).
  const std::size_t slot = max_bits(a) + static_cast<std::size_t>(a.degree()) + bit_length(a.size()) + 2;
  mpz_class num = pack(a, slot);
  mpz_class den = pack(b, slot);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw Error(ErrorCode::DivisionNotExact, "packed dividend not divisible");
  }
  mpz_class quo;
  mpz_divexact(quo.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  IntPoly q(unpack(std::move(quo), slot, a.size() - b.size() + 1));
  if (q.degree() != a.degree() - b.degree() || multiply(q, b) != a) {
    throw Error(ErrorCode::DivisionNotExact, "quotient does not reproduce the dividend");
  }
  return q;
}

IntPoly exact_divide(const IntPoly& a, const mpz_class& d) {
  if (sgn(d) == 0) throw Error(ErrorCode::InvalidArgument, "division by zero constant");
  std::vector<mpz_class> out(a.coeffs());
  for (auto& v : out) {
    if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
      throw Error(ErrorCode::DivisionNotExact, "coefficient not divisible by " + d.get_str());
    }
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& v : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  mpz_class g = content(p);
  if (sgn(p.lead()) < 0) g = -g;
  if (g == 1) return p;
  return exact_divide(p, g);
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "pseudo-remainder by zero");
  const int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<mpz_class> r(a.coeffs());
  const mpz_class& lb = b.lead();
  for (int k = a.degree(); k >= db; --k) {
    mpz_class top = r[static_cast<std::size_t>(k)];
    for (int i = 0; i <= k; ++i) r[static_cast<std::size_t>(i)] *= lb;
    for (int i = 0; i <= db; ++i) {
      mpz_submul(r[static_cast<std::size_t>(k - db + i)].get_mpz_t(), top.get_mpz_t(),
                 b[static_cast<std::size_t>(i)].get_mpz_t());
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return IntPoly(std::move(r));
}

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  if (a0.is_zero() && b0.is_zero()) throw Error(ErrorCode::InvalidArgument, "gcd(0, 0)");
  IntPoly a = primitive_part(a0);
  IntPoly b = primitive_part(b0);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return IntPoly::constant(1);
    IntPoly r = primitive_part(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive_part(a);
}

std::vector<IntPoly> sturm_sequence(const IntPoly& p) {
  std::vector<IntPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(primitive_part(p) * mpz_class(sgn(p.lead())));
  IntPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(primitive_part(d) * mpz_class(sgn(d.lead())));
  while (true) {
    const IntPoly& a = seq[seq.size() - 2];
    const IntPoly& b = seq.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem = lc(b)^(delta+1) * rem; keep the sign of -rem.
    const int delta = a.degree() - b.degree();
    const bool flips = sgn(b.lead()) < 0 && ((delta + 1) % 2 == 1);
    mpz_class g = content(r);
    IntPoly next = exact_divide(r, g);
    if (!flips) next = -next;
    seq.push_back(std::move(next));
    if (seq.back().degree() == 0) break;
  }
  return seq;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_at(const IntPoly& p, const mpq_class& x) {
  mpq_class v = 0;
  for (int k = p.degree(); k >= 0; --k) v = v * x + mpq_class(p[static_cast<std::size_t>(k)]);
  return sgn(v);
}

}  // namespace

int count_real_roots(const IntPoly& p) {
  auto seq = sturm_sequence(p);
  std::vector<int> at_neg, at_pos;
  for (const auto& s : seq) {
    const int lead = sgn(s.lead());
    at_pos.push_back(lead);
    at_neg.push_back(s.degree() % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

int count_real_roots(const IntPoly& p, const mpq_class& lo, const mpq_class& hi) {
  auto seq = sturm_sequence(p);
  std::vector<int> at_lo, at_hi;
  for (const auto& s : seq) {
    at_lo.push_back(sign_at(s, lo));
    at_hi.push_back(sign_at(s, hi));
  }
  return sign_changes(at_lo) - sign_changes(at_hi);
}

RatPoly to_rational(const IntPoly& p) {
  std::vector<mpq_class> c;
  c.reserve(p.size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

Sqrt2Poly to_sqrt2(const IntPoly& p) {
  std::vector<QSqrt2> c;
  c.reserve(p.size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return Sqrt2Poly(std::move(c));
}

std::size_t max_bits(const IntPoly& p) {
  std::size_t b = 0;
  for (const auto& v : p.coeffs()) b = std::max(b, bits_of(v));
  return b;
}

}  // namespace pivroots
