#include "pivroots/rational_pw.hpp"

#include <numeric>

namespace pivroots {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::HI: return "HI";
    case Family::HII: return "HII";
    case Family::HIII: return "HIII";
    case Family::OK: return "OK";
  }
  return "HI";
}

Family parse_solution_family(std::string_view s) {
  if (s == "HI" || s == "hermite1" || s == "I") return Family::HI;
  if (s == "HII" || s == "hermite2" || s == "II") return Family::HII;
  if (s == "HIII" || s == "hermite3" || s == "III") return Family::HIII;
  if (s == "OK" || s == "okamoto") return Family::OK;
  throw Error(ErrorCode::InvalidArgument, "unknown solution family: " + std::string(s));
}

std::string_view to_string(PointKind k) {
  switch (k) {
    case PointKind::Zero: return "ZERO";
    case PointKind::Pole: return "POLE";
    case PointKind::Regular: return "REGULAR";
  }
  return "REGULAR";
}

RationalSolution build_rational(Family family, int m, int n) {
  RationalSolution s;
  s.family = family;
  s.m = m;
  s.n = n;
  switch (family) {
    case Family::HI:
    case Family::HII:
    case Family::HIII:
      if (m < 0 || n < 0) throw Error(ErrorCode::InvalidArgument, "Hermite family indices must be nonnegative");
      break;
    case Family::OK:
      break;
  }
  switch (family) {
    case Family::HI:
      s.num = gen_hermite(m + 1, n);
      s.den = gen_hermite(m, n);
      s.drift = 0;
      s.theta = {mp::ratio(n, 2), mp::ratio(2 * m + n + 2, 2)};
      break;
    case Family::HII:
      s.num = gen_hermite(m, n);
      s.den = gen_hermite(m, n + 1);
      s.drift = 0;
      s.theta = {mp::ratio(m, 2), mp::ratio(-m - 2 * n, 2)};
      break;
    case Family::HIII:
      s.num = gen_hermite(m, n + 1);
      s.den = gen_hermite(m + 1, n);
      s.drift = -2;
      s.theta = {mp::ratio(m + n + 1, 2), mp::ratio(n - m + 1, 2)};
      break;
    case Family::OK:
      s.num = gen_okamoto(m + 1, n);
      s.den = gen_okamoto(m, n);
      s.drift = mp::ratio(-2, 3);
      s.theta = {mp::ratio(3 * n - 1, 6), mp::ratio(2 * m + n + 1, 2)};
      break;
  }
  return s;
}

namespace {

// U(w) = cw*w + num'/num - den'/den with omega(z) = sqrt(t) U(sqrt(t) z).
struct Frame {
  long t = 1;
  IntPoly num;
  IntPoly den;
  mpq_class cw;
};

IntPoly in_z_integer(const ExactPoly& p) {
  switch (p.scale) {
    case Scale::One: return p.coeffs;
    case Scale::Two: return p.coeffs.scaled(mpz_class(2));
    case Scale::Sqrt2: break;
  }
  throw Error(ErrorCode::InvalidArgument, "no integer form in z");
}

Frame frame_of(const RationalSolution& s) {
  const bool root2 = s.num.scale == Scale::Sqrt2;
  if (root2 != (s.den.scale == Scale::Sqrt2)) {
    throw Error(ErrorCode::InvalidArgument, "numerator and denominator use incompatible scalings");
  }
  Frame f;
  if (root2) {
    f.t = 2;
    f.num = s.num.coeffs;
    f.den = s.den.coeffs;
    f.cw = s.drift / 2;
  } else {
    f.num = in_z_integer(s.num);
    f.den = in_z_integer(s.den);
    f.cw = s.drift;
  }
  return f;
}

IntPoly shift_up(const IntPoly& p) {
  if (p.is_zero()) return p;
  std::vector<mpz_class> c(p.size() + 1);
  for (std::size_t k = 0; k < p.size(); ++k) c[k + 1] = p[k];
  return IntPoly(std::move(c));
}

template <class R>
Poly<R> shift_up(const Poly<R>& p) {
  if (p.is_zero()) return p;
  std::vector<R> c(p.size() + 1);
  for (std::size_t k = 0; k < p.size(); ++k) c[k + 1] = p[k];
  return Poly<R>(std::move(c));
}

// U = N/D in lowest terms up to a constant.
template <class R>
std::pair<Poly<R>, Poly<R>> as_fraction(const Poly<R>& num, const Poly<R>& den, const R& p, const R& q) {
  Poly<R> nd = num * den;
  Poly<R> d = nd * q;
  Poly<R> n = shift_up(nd) * p + (num.derivative() * den - num * den.derivative()) * q;
  return {n, d};
}

// L * [t^2 (2 N (A'D - 2 A D') - A^2 - 3 N^4) - 8 t w N^3 D - 4 (w^2 + t(1 - 2 thInf)) N^2 D^2 + 16 th0^2 D^4].
template <class R>
Poly<R> residual_core(const Poly<R>& N, const Poly<R>& D, const R& c_t2, const R& c_8t, const R& c_4, const R& c_lin,
                      const R& c_th0) {
  Poly<R> dN = N.derivative();
  Poly<R> dD = D.derivative();
  Poly<R> A = dN * D - N * dD;
  Poly<R> dA = dN.derivative() * D - N * dD.derivative();
  Poly<R> N2 = N * N;
  Poly<R> D2 = D * D;
  Poly<R> N2D2 = N2 * D2;
  Poly<R> inner = (N * (dA * D - A * dD * R(2))) * R(2) - A * A - N2 * N2 * R(3);
  Poly<R> r = inner * c_t2;
  r -= shift_up(N2 * N * D) * c_8t;
  r -= shift_up(shift_up(N2D2)) * c_4;
  r -= N2D2 * c_lin;
  r += D2 * D2 * c_th0;
  return r;
}

mpz_class lcm_den(std::initializer_list<mpq_class> vals) {
  mpz_class l = 1;
  for (const auto& v : vals) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

mpz_class as_int(const mpq_class& v) {
  if (v.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "expected an integer");
  return v.get_num();
}

std::pair<IntPoly, IntPoly> frame_fraction(const Frame& f) {
  return as_fraction(f.num, f.den, mpz_class(f.cw.get_num()), mpz_class(f.cw.get_den()));
}

}  // namespace

ExactPoly piv_residual(const RationalSolution& sol) {
  Frame f = frame_of(sol);
  auto [N, D] = frame_fraction(f);
  if (N.is_zero()) throw Error(ErrorCode::OmegaIdenticallyZero, "omega vanishes identically");
  const mpq_class t(f.t);
  const mpq_class lin = 4 * t * (1 - 2 * sol.theta.thetaInf);
  const mpq_class th0 = 16 * sol.theta.theta0 * sol.theta.theta0;
  const mpz_class L = lcm_den({lin, th0});
  IntPoly r = residual_core<mpz_class>(N, D, L * f.t * f.t, L * 8 * f.t, L * 4, as_int(lin * L), as_int(th0 * L));
  ExactPoly out;
  out.scale = f.t == 2 ? Scale::Sqrt2 : Scale::One;
  out.coeffs = std::move(r);
  return out;
}

Sqrt2Poly piv_residual_sqrt2(const RationalSolution& sol) {
  Sqrt2Poly num = sol.num.in_z_sqrt2();
  Sqrt2Poly den = sol.den.in_z_sqrt2();
  auto [N, D] = as_fraction(num, den, QSqrt2(sol.drift), QSqrt2(1));
  if (N.is_zero()) throw Error(ErrorCode::OmegaIdenticallyZero, "omega vanishes identically");
  const mpq_class lin = 4 * (1 - 2 * sol.theta.thetaInf);
  const mpq_class th0 = 16 * sol.theta.theta0 * sol.theta.theta0;
  return residual_core<QSqrt2>(N, D, QSqrt2(1), QSqrt2(8), QSqrt2(4), QSqrt2(lin), QSqrt2(th0));
}

bool same_solution(const RationalSolution& a, const RationalSolution& b) {
  if (a.theta.theta0 != b.theta.theta0 || a.theta.thetaInf != b.theta.thetaInf) return false;
  Frame fa = frame_of(a);
  Frame fb = frame_of(b);
  if (fa.t != fb.t) return false;
  auto [Na, Da] = frame_fraction(fa);
  auto [Nb, Db] = frame_fraction(fb);
  return Na * Db == Nb * Da;
}

std::optional<FamilyIndex> backlund_target(int i, Family family, int m, int n) {
  static const int shift[4][4][2] = {
      // HI          HII          HIII         OK
      {{+1, -1}, {-1, 0}, {-1, 0}, {+1, -1}},  // R1
      {{-1, +1}, {+1, 0}, {+1, 0}, {-1, +1}},  // R2
      {{0, +1}, {+1, -1}, {0, +1}, {0, +1}},   // R3
      {{0, -1}, {-1, +1}, {0, -1}, {0, -1}},   // R4
  };
  if (i < 1 || i > 4) throw Error(ErrorCode::InvalidArgument, "Backlund index must be 1..4");
  const int col = static_cast<int>(family);
  FamilyIndex out{family, m + shift[i - 1][col][0], n + shift[i - 1][col][1]};
  if (family != Family::OK && (out.m < 0 || out.n < 0)) return std::nullopt;
  return out;
}

Theta backlund_theta(int i, const Theta& th) {
  const mpq_class half(1, 2);
  switch (i) {
    case 1: return {th.theta0 - half, th.thetaInf + half};
    case 2: return {th.theta0 + half, th.thetaInf - half};
    case 3: return {th.theta0 + half, th.thetaInf + half};
    case 4: return {th.theta0 - half, th.thetaInf - half};
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "Backlund index must be 1..4");
}

RationalSolution backlund(int i, const RationalSolution& sol) {
  auto target = backlund_target(i, sol.family, sol.m, sol.n);
  if (!target) {
    throw Error(ErrorCode::DegenerateTransform, "R" + std::to_string(i) + " leaves the index range of " +
                                                    std::string(to_string(sol.family)));
  }
  // omega^(i) = [(w' + a 4th0)^2 + 8 kappa w^2 - w^2 (w + 2z)^2] / [2 w (w^2 + 2 z w + b w' + c 4th0)]
  static const int sa[4] = {+1, -1, -1, +1};
  static const int sb[4] = {-1, +1, -1, +1};
  static const int sc[4] = {-1, -1, +1, +1};
  const mpq_class& th0 = sol.theta.theta0;
  const mpq_class& thi = sol.theta.thetaInf;
  mpq_class kappa = thi + th0 * sc[i - 1];
  if (i == 2 || i == 4) kappa -= 1;

  Frame f = frame_of(sol);
  auto [N, D] = frame_fraction(f);
  if (N.is_zero()) throw Error(ErrorCode::DegenerateTransform, "omega vanishes identically");
  const long t = f.t;
  const mpq_class a0q = 4 * th0 * sa[i - 1];
  const mpq_class c0q = 4 * th0 * sc[i - 1];
  const mpq_class k0q = 8 * t * kappa;
  const mpz_class L = lcm_den({a0q, k0q});
  const mpz_class a0 = as_int(a0q * L);
  const mpz_class c0 = as_int(c0q * L);
  const mpz_class k0 = as_int(k0q * L * L);

  IntPoly A = N.derivative() * D - N * D.derivative();
  IntPoly N2 = N * N;
  IntPoly D2 = D * D;
  IntPoly ND = N * D;
  IntPoly head = A * mpz_class(L * t) + D2 * a0;
  IntPoly tail = N * mpz_class(t) + shift_up(D) * mpz_class(2);
  IntPoly num = head * head + N2 * D2 * k0 - N2 * (tail * tail) * mpz_class(L * L);
  IntPoly g = N2 * mpz_class(L * t) + shift_up(ND) * mpz_class(2 * L) + A * mpz_class(L * t * sb[i - 1]) + D2 * c0;
  if (g.is_zero()) throw Error(ErrorCode::DegenerateTransform, "R" + std::to_string(i) + " denominator vanishes");
  IntPoly den = ND * g * mpz_class(2 * t * L);

  RationalSolution out = build_rational(target->family, target->m, target->n);
  Frame ft = frame_of(out);
  if (ft.t != t) throw Error(ErrorCode::BacklundMismatch, "target lives in a different frame");
  auto [Nt, Dt] = frame_fraction(ft);
  Theta shifted = backlund_theta(i, sol.theta);
  if (shifted.theta0 != out.theta.theta0 || shifted.thetaInf != out.theta.thetaInf) {
    throw Error(ErrorCode::BacklundMismatch, "shifted parameters disagree with the target family");
  }
  if (num * Dt != den * Nt) {
    throw Error(ErrorCode::BacklundMismatch, "R" + std::to_string(i) + "(" + std::string(to_string(sol.family)) + "_{" +
                                                 std::to_string(sol.m) + "," + std::to_string(sol.n) +
                                                 "}) differs from the tabulated image");
  }
  return out;
}

SingularityDictionary singularity_dictionary(Family family, int m, int n) {
  const PolyFamily H = PolyFamily::Hermite;
  switch (family) {
    case Family::HI: return {{H, m + 1, n - 1}, {H, m, n + 1}, {H, m + 1, n}, {H, m, n}};
    case Family::HII: return {{H, m - 1, n + 1}, {H, m + 1, n}, {H, m, n}, {H, m, n + 1}};
    case Family::HIII: return {{H, m, n}, {H, m + 1, n + 1}, {H, m, n + 1}, {H, m + 1, n}};
    case Family::OK: {
      const PolyFamily Q = PolyFamily::Okamoto;
      return {{Q, m + 1, n - 1}, {Q, m, n + 1}, {Q, m + 1, n}, {Q, m, n}};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

ExactPoly dictionary_poly(const DictEntry& e) {
  if (e.poly == PolyFamily::Okamoto) return gen_okamoto(e.m, e.n);
  if (e.m < 0 || e.n < 0) throw Error(ErrorCode::InvalidArgument, "dictionary entry has a negative Hermite index");
  return gen_hermite(e.m, e.n);
}

namespace {

using mp::Complex;
using mp::Real;

std::vector<Real> z_coeffs(const ExactPoly& p) {
  Real s = scale_value(p.scale);
  Real pw(1L);
  std::vector<Real> out;
  out.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs.coeffs()) {
    out.push_back(Real(c) * pw);
    pw *= s;
  }
  return out;
}

// First `count` Taylor coefficients of the polynomial at a.
std::vector<Complex> taylor(const std::vector<Real>& c, const Complex& a, int count) {
  std::vector<Complex> b;
  b.reserve(c.size());
  for (const auto& v : c) b.emplace_back(v);
  std::vector<Complex> out;
  for (int j = 0; j < count; ++j) {
    if (b.empty()) {
      out.emplace_back(0L);
      continue;
    }
    // Synthetic division by (z - a): remainder is the value, quotient carries on.
    for (std::size_t k = b.size() - 1; k > 0; --k) b[k - 1] += b[k] * a;
    out.push_back(b.front());
    b.erase(b.begin());
  }
  return out;
}

// Series of g'/g, powers 0..order, from Taylor coefficients of g with g_0 != 0.
std::vector<Complex> log_derivative(const std::vector<Complex>& g, int order) {
  std::vector<Complex> q;
  for (int k = 0; k <= order; ++k) {
    Complex acc = g[static_cast<std::size_t>(k + 1)] * static_cast<long>(k + 1);
    for (int i = 1; i <= k; ++i) acc -= g[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(k - i)];
    q.push_back(acc / g[0]);
  }
  return q;
}

Real step_tolerance(const Complex& a) {
  return mp::ldexp(mp::max(Real(1L), abs(a)), -(mp::default_precision() - 12));
}

Real near_tolerance(const Complex& a) { return mp::max(Real(1L), abs(a)) * Real(1e-6); }

// Newton step f/f' for the polynomial with coefficients c.
Complex newton_step(const std::vector<Real>& c, const Complex& a) {
  auto t = taylor(c, a, 2);
  return t[0] / t[1];
}

Complex polish_root(const std::vector<Real>& c, Complex a) {
  for (int it = 0; it < 200; ++it) {
    Complex step = newton_step(c, a);
    a -= step;
    if (abs(step) <= step_tolerance(a)) return a;
  }
  throw Error(ErrorCode::PrecisionInsufficient, "Newton polishing of the expansion point did not settle");
}

// Laurent series of omega at a; root_num / root_den say whether a is a root.
std::vector<Complex> omega_series(const RationalSolution& sol, const std::vector<Real>& cn, const std::vector<Real>& cd,
                                  const Complex& a, bool root_num, bool root_den, int order) {
  std::vector<Complex> out(static_cast<std::size_t>(order) + 2, Complex(0L));
  auto add = [&](const std::vector<Real>& c, bool root, long sign) {
    auto t = taylor(c, a, order + 3);
    if (root) {
      t.erase(t.begin());
      out[0] += Complex(sign);
    }
    auto q = log_derivative(t, order);
    for (int k = 0; k <= order; ++k) {
      if (sign > 0) {
        out[static_cast<std::size_t>(k + 1)] += q[static_cast<std::size_t>(k)];
      } else {
        out[static_cast<std::size_t>(k + 1)] -= q[static_cast<std::size_t>(k)];
      }
    }
  };
  add(cn, root_num, +1);
  add(cd, root_den, -1);
  Real drift(sol.drift);
  out[1] += a * drift;
  if (order >= 1) out[2] += Complex(drift);
  return out;
}

}  // namespace

mp::Complex RationalSolution::omega(const mp::Complex& z) const {
  auto cn = z_coeffs(num);
  auto cd = z_coeffs(den);
  auto tn = taylor(cn, z, 2);
  auto td = taylor(cd, z, 2);
  return z * Real(drift) + tn[1] / tn[0] - td[1] / td[0];
}

LaurentData laurent_at(const RationalSolution& sol, const mp::Complex& a0, int order) {
  if (order < 2) order = 2;
  auto cn = z_coeffs(sol.num);
  auto cd = z_coeffs(sol.den);
  LaurentData out;
  out.precision_bits = mp::default_precision();
  Complex a = a0;
  bool root_num = false;
  bool root_den = false;
  if (sol.num.degree() > 0 && abs(newton_step(cn, a)) <= near_tolerance(a)) {
    a = polish_root(cn, a);
    root_num = true;
  } else if (sol.den.degree() > 0 && abs(newton_step(cd, a)) <= near_tolerance(a)) {
    a = polish_root(cd, a);
    root_den = true;
  }
  if (!root_num && !root_den) {
    // Possibly a zero of omega: Newton on omega itself.
    auto s = omega_series(sol, cn, cd, a, false, false, 1);
    if (!s[2].re.is_zero() || !s[2].im.is_zero()) {
      if (abs(s[1] / s[2]) <= near_tolerance(a)) {
        for (int it = 0;; ++it) {
          if (it == 200) throw Error(ErrorCode::PrecisionInsufficient, "Newton polishing of a zero did not settle");
          auto t = omega_series(sol, cn, cd, a, false, false, 1);
          Complex step = t[1] / t[2];
          a -= step;
          if (abs(step) <= step_tolerance(a)) break;
        }
        out.kind = PointKind::Zero;
      }
    }
  } else {
    out.kind = PointKind::Pole;
  }
  out.center = a;
  out.coeffs = omega_series(sol, cn, cd, a, root_num, root_den, order);
  out.value = Complex(0L);
  out.constraint_error = Real(0L);
  switch (out.kind) {
    case PointKind::Pole: {
      out.eps = root_num ? 1 : -1;
      const long e = out.eps;
      Complex w1 = (a * a - Complex(2L) + Complex(Real(sol.theta.thetaInf - e) * 4L)) * Real(mpq_class(mpz_class(e), mpz_class(3)));
      out.omega1 = w1;
      out.b = out.coeff(2);
      out.constraint_error = mp::max(abs(out.coeff(0) + a), abs(out.coeff(1) - w1));
      out.constraint_error = mp::max(out.constraint_error, abs(out.coeff(-1) - Complex(e)));
      break;
    }
    case PointKind::Zero: {
      const Real lead(sol.theta.theta0 * 4);
      if (!lead.is_zero()) {
        Complex ratio = out.coeff(1) / lead;
        out.eps = ratio.re.sign() >= 0 ? 1 : -1;
        out.constraint_error = mp::max(abs(out.coeff(0)), abs(out.coeff(1) - Complex(lead * static_cast<long>(out.eps))));
      } else {
        out.constraint_error = abs(out.coeff(0));
      }
      out.b = out.coeff(2);
      break;
    }
    case PointKind::Regular:
      out.value = out.coeff(0);
      break;
  }
  return out;
}

}  // namespace pivroots
