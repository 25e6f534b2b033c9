#include "pivroots/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pivroots/error.hpp"

namespace pivroots {

using mp::Complex;
using mp::Real;

namespace {

Real default_tol() { return mp::ldexp(Real(1L), -(mp::default_precision() - 8)); }

void check_j(int n, int j) {
  if (n < 1 || j < -n + 1 || j > n - 1 || (j + n - 1) % 2 != 0) {
    throw Error(ErrorCode::Domain, "j=" + std::to_string(j) + " is not in J_" + std::to_string(n));
  }
}

void check_k(const BulkParams& p, const mpq_class& k) {
  if (!p.valid_k(k)) throw Error(ErrorCode::Domain, "k=" + k.get_str() + " is off the grid for m=" + std::to_string(p.m));
}

mpz_class factorial(long a) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(a));
  return r;
}

// Gamma(h/2) / sqrt(pi)^[h odd], exactly.
mpq_class half_gamma(long h) {
  if (h % 2 == 0) return mpq_class(factorial(h / 2 - 1));
  // Gamma(r + 1/2) = (2r)! / (4^r r!) sqrt(pi)
  long r = (h - 1) / 2;
  mpz_class den = factorial(r);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(2 * r));
  mpq_class q(factorial(2 * r), den);
  q.canonicalize();
  return q;
}

// j log(2 (1 - a^2)^(3/4) sqrt E) - log(F)/2
Complex log_term(const Complex& a, int E, int n, int j) {
  Complex one_minus = Complex(1L) - a * a;
  Complex l = mp::log(one_minus) * Real(mp::ratio(3, 4));
  l.re += mp::log(Real(2L)) + mp::log(Real(static_cast<long>(E))) / 2L;
  l *= static_cast<long>(j);
  l.re -= mp::log(gamma_ratio(n, j)) / 2L;
  return l;
}

}  // namespace

bool BulkParams::has_j(int j) const { return std::find(J.begin(), J.end(), j) != J.end(); }

bool BulkParams::valid_k(const mpq_class& k) const {
  mpq_class twice = 2 * k;
  if (twice.get_den() != 1) return false;
  bool odd = mpz_odd_p(twice.get_num().get_mpz_t()) != 0;
  if (odd != half_integer_k()) return false;
  return 4 * abs(k) <= E;
}

BulkParams bulk_params(int m, int n) {
  if (m < 0 || n < 1) throw Error(ErrorCode::Domain, "bulk parameters need m >= 0 and n >= 1");
  BulkParams p;
  p.m = m;
  p.n = n;
  p.E = 2 * m + n;
  for (int j = -n + 1; j <= n - 1; j += 2) p.J.push_back(j);
  return p;
}

std::string_view to_string(RegimeKind k) { return k == RegimeKind::Bulk ? "bulk" : "edge"; }

Real Regime::k_bound(int E) const {
  Real e(static_cast<long>(E));
  if (kind == RegimeKind::Bulk) {
    if (!(sigma > 0 && sigma < 0.25)) throw Error(ErrorCode::Domain, "sigma must lie in (0, 1/4)");
    return Real(sigma) * e;
  }
  if (!(delta > 1.0 / 3.0 && delta <= 1.0) || !(s > 0)) throw Error(ErrorCode::Domain, "edge regime needs 1/3 < delta <= 1 and s > 0");
  Real shrink = Real(s) * mp::pow(e, Real(-1.5 * (1.0 - delta)));
  return (Real(mp::ratio(1, 4)) - shrink) * e;
}

Real f_map(const Real& x) {
  if (x < Real(-1L) || x > Real(1L)) throw Error(ErrorCode::Domain, "f is defined on [-1, 1]");
  Real r = (x * mp::sqrt(Real(1L) - x * x) - mp::acos(x)) / 2L;
  return r + Real::pi() / 4L;
}

Complex f_map(const Complex& x) {
  Complex r = x * mp::sqrt(Complex(1L) - x * x) - mp::acos(x);
  r /= 2L;
  r.re += Real::pi() / 4L;
  return r;
}

Real f_inverse(const Real& y, const Real& tol_in) {
  Real quarter = Real::pi() / 4L;
  if (y < -quarter || y > quarter) throw Error(ErrorCode::Domain, "f_inverse needs |y| <= pi/4");
  Real tol = tol_in.is_zero() ? default_tol() : tol_in;
  Real lo(-1L), hi(1L);
  Real x = y;  // f'(0) = 1
  for (int it = 0; it < 2000; ++it) {
    Real fx = f_map(x) - y;
    if (abs(fx) <= tol) return x;
    if (fx.sign() < 0) lo = x; else hi = x;
    if (hi - lo <= tol) return x;
    Real d = mp::sqrt(Real(1L) - x * x);
    Real next = d.is_zero() ? lo : x - fx / d;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2L;
    x = next;
  }
  throw Error(ErrorCode::Nonconvergence, "f_inverse did not converge");
}

mpq_class gamma_ratio_exact(int n, int j) {
  check_j(n, j);
  mpq_class r = half_gamma(1 + n + j) / half_gamma(1 + n - j);
  return r;
}

Real gamma_ratio(int n, int j) { return Real(gamma_ratio_exact(n, j)); }

Real g_map(int j, int E, int n, const Real& x) {
  if (!(abs(x) < Real(1L))) throw Error(ErrorCode::Domain, "g is defined on (-1, 1)");
  Real w = Real(1L) - x * x;
  Real inner = Real(2L) * mp::sqrt(Real(static_cast<long>(E))) * mp::pow(w, Real(0.75));
  Real num = Real(2L * j) * mp::log(inner) - mp::log(gamma_ratio(n, j));
  return num / (Real(2L * E) * mp::sqrt(w));
}

Complex alpha_jk(int j, const mpq_class& k, const BulkParams& p) {
  check_j(p.n, j);
  check_k(p, k);
  Real ar = f_inverse(Real::pi() * Real(k) / static_cast<long>(p.E));
  if (!(abs(ar) < Real(1L))) throw Error(ErrorCode::Domain, "alpha_R reaches the edge at |k| = E/4");
  return {ar, g_map(j, p.E, p.n, ar)};
}

std::vector<mpq_class> k_grid(const BulkParams& p, const Real& bound, bool floor_k) {
  std::vector<mpq_class> ks;
  mpq_class start = p.half_integer_k() ? mp::ratio(1, 2) : mpq_class(0);
  for (mpq_class k = start; 4 * k < p.E; k += 1) {
    mpz_class whole = k.get_num() / k.get_den();
    if (Real(floor_k ? mpq_class(whole) : k) > bound) break;
    if (k != 0) ks.push_back(-k);
    ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

LatticePrediction lattice(const BulkParams& p, const Regime& regime) {
  LatticePrediction out;
  out.params = p;
  out.regime = regime;
  std::vector<mpq_class> ks = k_grid(p, regime.k_bound(p.E), regime.kind == RegimeKind::Edge);
  for (int j : p.J) {
    for (const mpq_class& k : ks) out.entries.push_back({j, k, alpha_jk(j, k, p)});
  }
  return out;
}

Complex phase_phi(const Complex& alpha, int E, int n, int j) {
  check_j(n, j);
  Complex one_minus = Complex(1L) - alpha * alpha;
  if (one_minus.re.is_zero() && one_minus.im.is_zero()) throw Error(ErrorCode::BranchPoint, "phase is singular at alpha = +-1");
  Complex phi = -alpha * mp::sqrt(one_minus) + mp::acos(alpha);
  phi *= Real(mp::ratio(E, 2));
  phi.re -= Real::pi() * static_cast<long>(2 + n) / 4L;
  Complex l = log_term(alpha, E, n, j);
  phi += Complex(-l.im, l.re);
  return phi;
}

Complex refined_alpha(int j, const mpq_class& k, const BulkParams& p) {
  Complex a = alpha_jk(j, k, p);
  Real target = Real::pi() * Real(k) / static_cast<long>(p.E);
  Real eps = mp::ldexp(Real(1L), -(mp::default_precision() - 12));
  const long E = p.E;
  for (int it = 0; it < 100; ++it) {
    Complex l = log_term(a, p.E, p.n, j);
    // h = f(a) - i l / E - pi k / E
    Complex h = f_map(a) - Complex(-l.im, l.re) / E;
    h.re -= target;
    Complex one_minus = Complex(1L) - a * a;
    Complex dh = mp::sqrt(one_minus) + Complex::i() * a * static_cast<long>(3 * j) / (one_minus * (2 * E));
    Complex step = h / dh;
    a -= step;
    if (abs(step) <= eps * mp::max(abs(a), Real(1L))) return a;
  }
  throw Error(ErrorCode::Nonconvergence, "refined_alpha: Newton did not converge");
}

Real semicircle_mass(const Real& A, const Real& B, int n) {
  auto prim = [](Real x) {
    x = mp::max(Real(-1L), mp::min(Real(1L), x));
    return x * mp::sqrt(Real(1L) - x * x) + mp::asin(x);
  };
  if (B <= A) return Real(0L);
  return (prim(B) - prim(A)) * static_cast<long>(n) / Real::pi();
}

std::pair<Real, Real> semicircle_compare(const RootSet& rescaled, const Real& A, const Real& B, int n, int m) {
  if (B < A) throw Error(ErrorCode::Domain, "semicircle_compare needs A <= B");
  if (m <= 0) throw Error(ErrorCode::Domain, "semicircle_compare needs m >= 1");
  long count = 0;
  for (const Complex& z : rescaled.roots) {
    if (z.re >= A && z.re <= B) ++count;
  }
  return {Real(count) / static_cast<long>(m), semicircle_mass(A, B, n)};
}

}  // namespace pivroots
