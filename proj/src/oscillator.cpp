#include "pivroots/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "pivroots/error.hpp"

namespace pivroots {

using mp::Complex;
using mp::Real;

namespace {

using CPoly = std::vector<Complex>;  // ascending powers of b

void add_scaled(CPoly& acc, const CPoly& p, const Complex& c) {
  if (acc.size() < p.size()) acc.resize(p.size(), Complex(0L));
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i] * c;
}

// (c + x) * p
CPoly times_linear(const CPoly& p, const Complex& c) {
  CPoly out(p.size() + 1, Complex(0L));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += p[i] * c;
    out[i + 1] += p[i];
  }
  return out;
}

Complex horner(const CPoly& p, const Complex& x) {
  Complex acc(0L);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Complex horner_d(const CPoly& p, const Complex& x) {
  Complex acc(0L);
  for (std::size_t i = p.size(); i-- > 1;) acc = acc * x + p[i] * static_cast<long>(i);
  return acc;
}

Real relative_value(const CPoly& p, const Complex& x) {
  Real scale(0L), ax = abs(x), power(1L);
  for (const Complex& c : p) {
    scale += abs(c) * power;
    power *= ax;
  }
  // Floored at 1: near a = 0 every coefficient can vanish together.
  return abs(horner(p, x)) / mp::max(scale, Real(1L));
}

// Banded system coefficients: row k reads L_k p_{k-1} + (D_k + b) p_k + U_k p_{k+1}.
struct Band {
  std::vector<Complex> D;
  std::vector<Real> U;
  std::vector<Real> L;
};

Band band(const Theta& th, const Ansatz& ans, const Complex& a) {
  Band out;
  const int d = ans.degree;
  mpq_class two_s = 2 * ans.s;
  for (int k = 0; k <= d + 1; ++k) {
    mpq_class dk = 2 * ans.sigma * k + two_s * ans.sigma + 2 * th.thetaInf - mp::ratio(1, 2);
    out.D.push_back(a * Real(dk));
    out.U.emplace_back(mpq_class((k + 1) * (k + two_s)));
    mpq_class lk = 2 * ans.sigma * (k - 1) + ans.sigma * (1 + two_s) - 2 * (1 - th.thetaInf);
    out.L.emplace_back(lk);
  }
  return out;
}

CPoly characteristic(const Band& bd, int d) {
  CPoly prev{Complex(1L)};
  CPoly cur = times_linear(prev, bd.D[0]);
  for (int k = 1; k <= d; ++k) {
    CPoly next = times_linear(cur, bd.D[k]);
    add_scaled(next, prev, Complex(-(bd.U[k - 1] * bd.L[k])));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Leftover Frobenius equation at the resonant index of the small exponent.
CPoly no_log_poly(const Theta& th, const Complex& a) {
  mpq_class twice = 2 * th.theta0;
  if (twice.get_den() != 1) throw Error(ErrorCode::Domain, "theta0 is not a half-integer");
  const long N = twice.get_num().get_si();
  Complex B0 = a * Real(mpq_class(2 * th.thetaInf - mp::ratio(1, 2)));
  Complex v0 = a * a + Complex(Real(mpq_class(2 * (1 - th.thetaInf))));
  std::vector<CPoly> g{CPoly{Complex(1L)}};
  auto rhs = [&](long k) {
    CPoly r;
    if (k - 1 >= 0) {
      CPoly t = times_linear(g[k - 1], B0);
      add_scaled(r, t, Complex(-1L));
    }
    if (k - 2 >= 0) add_scaled(r, g[k - 2], v0);
    if (k - 3 >= 0) add_scaled(r, g[k - 3], a * 2L);
    if (k - 4 >= 0) add_scaled(r, g[k - 4], Complex(1L));
    return r;
  };
  for (long k = 1; k < N; ++k) {
    CPoly r = rhs(k);
    Real inv = Real(1L) / Real(k * (k - N));
    for (auto& c : r) c *= inv;
    g.push_back(std::move(r));
  }
  return rhs(N);
}

Complex determinant(std::vector<std::vector<Complex>> M) {
  const std::size_t n = M.size();
  Complex det(1L);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    Real best = abs(M[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      Real v = abs(M[r][c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best.is_zero()) return Complex(0L);
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Complex f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return det;
}

Complex resultant(CPoly P, CPoly Q) {
  while (P.size() > 1 && P.back().re.is_zero() && P.back().im.is_zero()) P.pop_back();
  while (Q.size() > 1 && Q.back().re.is_zero() && Q.back().im.is_zero()) Q.pop_back();
  const std::size_t dp = P.size() - 1, dq = Q.size() - 1;
  const std::size_t n = dp + dq;
  if (n == 0) return Complex(1L);
  std::vector<std::vector<Complex>> M(n, std::vector<Complex>(n, Complex(0L)));
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::size_t i = 0; i <= dp; ++i) M[r][r + i] = P[dp - i];
  }
  for (std::size_t r = 0; r < dp; ++r) {
    for (std::size_t i = 0; i <= dq; ++i) M[dq + r][r + i] = Q[dq - i];
  }
  return determinant(std::move(M));
}

std::vector<Complex> poly_roots(const std::function<CPoly(long)>& make, long prec) {
  CPoly c = make(prec);
  while (c.size() > 1 && c.back().re.is_zero() && c.back().im.is_zero()) c.pop_back();
  if (c.size() <= 1) return {};
  if (c.size() == 2) return {-c[0] / c[1]};
  RootOptions opts;
  opts.precision_bits = prec;
  opts.max_precision_bits = 4 * prec;
  try {
    return find_roots(CoeffSource(make), opts).roots;
  } catch (const Error& e) {
    throw Error(ErrorCode::SingularSystem, std::string("eigenvalues of the ansatz system: ") + e.what());
  }
}

std::vector<Complex> solve_coeffs(const Band& bd, int d, const Complex& b) {
  std::vector<Complex> p{Complex(1L)};
  for (int k = 0; k < d; ++k) {
    Complex next = (bd.D[k] + b) * p[k];
    if (k > 0) next += p[k - 1] * bd.L[k];
    if (bd.U[k].is_zero()) throw Error(ErrorCode::SingularSystem, "vanishing pivot in the ansatz recursion");
    p.push_back(-next / bd.U[k]);
  }
  return p;
}

Complex newton_root(const CPoly& p, Complex x) {
  for (int it = 0; it < 60; ++it) {
    Complex d = horner_d(p, x);
    if (d.re.is_zero() && d.im.is_zero()) break;
    Complex step = horner(p, x) / d;
    x -= step;
    if (abs(step) <= mp::ldexp(mp::max(abs(x), Real(1L)), -(mp::default_precision() - 8))) break;
  }
  return x;
}

void require_family(Family f, int m, int n) {
  if (f == Family::OK) throw Error(ErrorCode::InvalidArgument, "the oscillator route covers the Hermite families only");
  if (m < 1 || n < 1) throw Error(ErrorCode::Domain, "the oscillator route needs m, n >= 1");
}

CPoly companion_poly(Family family, int m, int n, const Complex& a, const Theta& th) {
  if (family == Family::HIII) {
    Ansatz q = qes_ansatz(family, m, n, 1);
    return characteristic(band(th, q, a), q.degree);
  }
  return no_log_poly(th, a);
}

}  // namespace

Complex OscillatorSpec::potential(const Complex& l) const {
  Complex v = l * l + a * l * 2L + a * a + Complex(Real(mpq_class(2 * (1 - theta.thetaInf))));
  Complex B = b + a * Real(mpq_class(2 * theta.thetaInf - mp::ratio(1, 2)));
  v -= B / l;
  v += Complex(Real(mpq_class(theta.theta0 * theta.theta0 - mp::ratio(1, 4)))) / (l * l);
  return v;
}

Theta qes_theta(Family family, int m, int n) {
  switch (family) {
    case Family::HI: return {mp::ratio(n, 2), mp::ratio(2 * m + 2 + n, 2)};
    case Family::HII: return {mp::ratio(m, 2), mp::ratio(2 - m - 2 * n, 2)};
    case Family::HIII: return {mp::ratio(m + n, 2), mp::ratio(n - m + 2, 2)};
    case Family::OK: break;
  }
  throw Error(ErrorCode::InvalidArgument, "the oscillator route covers the Hermite families only");
}

Ansatz qes_ansatz(Family family, int m, int n, int which) {
  switch (family) {
    case Family::HI: return {-1, mp::ratio(n + 1, 2), m - 1};
    case Family::HII: return {1, mp::ratio(m + 1, 2), n - 1};
    case Family::HIII:
      if (which == 0) return {-1, mp::ratio(1 - m - n, 2), n - 1};
      return {1, mp::ratio(1 - m - n, 2), m - 1};
    case Family::OK: break;
  }
  throw Error(ErrorCode::InvalidArgument, "the oscillator route covers the Hermite families only");
}

std::vector<Complex> qes_equations(const OscillatorSpec& osc, const Ansatz& ans, const std::vector<Complex>& p) {
  const int d = static_cast<int>(p.size()) - 1;
  Band bd = band(osc.theta, Ansatz{ans.sigma, ans.s, d}, osc.a);
  auto at = [&](int k) { return (k < 0 || k > d) ? Complex(0L) : p[k]; };
  std::vector<Complex> eq;
  for (int k = 0; k <= d + 1; ++k) {
    eq.push_back(at(k + 1) * bd.U[k] + (bd.D[k] + osc.b) * at(k) + at(k - 1) * bd.L[k]);
  }
  return eq;
}

QesCertificate qes_solve(Family family, int m, int n, const Complex& a, double tol) {
  require_family(family, m, n);
  const long prec = std::max(mp::default_precision(), a.precision());
  mp::PrecisionScope scope(prec);
  QesCertificate cert;
  cert.family = family;
  cert.m = m;
  cert.n = n;
  cert.a = a;
  Theta th = qes_theta(family, m, n);
  Ansatz ans = qes_ansatz(family, m, n, 0);
  Band bd = band(th, ans, a);
  auto make = [&](long bits) {
    mp::PrecisionScope inner(bits);
    Complex aa = a;
    aa.round_to(std::max(bits, a.precision()));
    return characteristic(band(th, ans, aa), ans.degree);
  };
  std::vector<Complex> bs = poly_roots(make, prec);
  CPoly other = companion_poly(family, m, n, a, th);
  bool first = true;
  for (const Complex& b : bs) {
    Real r = relative_value(other, b);
    if (first || r < cert.residual) {
      cert.residual = r;
      cert.b = b;
      first = false;
    }
  }
  cert.p_coeffs = solve_coeffs(bd, ans.degree, cert.b);
  if (family == Family::HIII) {
    Ansatz q = qes_ansatz(family, m, n, 1);
    Band bq = band(th, q, a);
    cert.b_q = newton_root(other, cert.b);
    cert.q_coeffs = solve_coeffs(bq, q.degree, cert.b_q);
  }
  cert.certified = cert.residual <= Real(tol);
  return cert;
}

Complex qes_resultant(Family family, int m, int n, const Complex& a) {
  require_family(family, m, n);
  Theta th = qes_theta(family, m, n);
  Ansatz ans = qes_ansatz(family, m, n, 0);
  return resultant(characteristic(band(th, ans, a), ans.degree), companion_poly(family, m, n, a, th));
}

QesRoots roots_via_qes(Family family, int m, int n, const std::vector<Complex>& seeds, double tol) {
  require_family(family, m, n);
  const long prec = mp::default_precision();
  QesRoots out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    Complex a = seeds[i];
    a.round_to(prec);
    bool converged = false;
    for (int it = 0; it < 100 && !converged; ++it) {
      Real h = mp::ldexp(mp::max(abs(a), Real(1L)), -prec / 3);
      Complex hc(h, Real(0L));
      Complex g = qes_resultant(family, m, n, a);
      if (g.re.is_zero() && g.im.is_zero()) {
        converged = true;
        break;
      }
      Complex dg = (qes_resultant(family, m, n, a + hc) - qes_resultant(family, m, n, a - hc)) / (h * 2L);
      if (dg.re.is_zero() && dg.im.is_zero()) break;
      Complex step = g / dg;
      a -= step;
      converged = abs(step) <= mp::ldexp(mp::max(abs(a), Real(1L)), -(prec - 24));
    }
    if (!converged) {
      out.failed_seeds.push_back(i);
      continue;
    }
    bool duplicate = false;
    for (const auto& c : out.roots) {
      duplicate = duplicate || abs(c.a - a) <= mp::ldexp(mp::max(abs(a), Real(1L)), -prec / 2);
    }
    if (duplicate) continue;
    QesCertificate cert = qes_solve(family, m, n, a, tol);
    if (cert.certified) {
      out.roots.push_back(std::move(cert));
    } else {
      out.failed_seeds.push_back(i);
    }
  }
  return out;
}

std::vector<Complex> no_log_constraint(int n, const Complex& alpha, double E) {
  if (n < 1) throw Error(ErrorCode::Domain, "no_log_betas needs n >= 1");
  Complex w = Complex(1L) - alpha * alpha;
  if (w.re.is_zero() && w.im.is_zero()) throw Error(ErrorCode::Domain, "alpha = +-1 is excluded");
  if (!(E > 0)) throw Error(ErrorCode::Domain, "E must be positive");
  Complex c1(0L), c2(0L);
  if (!std::isinf(E)) {
    Complex root = mp::sqrt(w);
    c1 = alpha * 2L / (w * root) / Real(E);
    c2 = Complex(1L) / (w * w) / (Real(E) * Real(E));
  }
  std::vector<CPoly> g{CPoly{Complex(1L)}};
  auto rhs = [&](int k) {
    CPoly r;
    if (k - 1 >= 0) {
      CPoly t(g[k - 1].size() + 1, Complex(0L));
      for (std::size_t i = 0; i < g[k - 1].size(); ++i) t[i + 1] = -g[k - 1][i];
      add_scaled(r, t, Complex(1L));
    }
    if (k - 2 >= 0) add_scaled(r, g[k - 2], Complex(-1L));
    if (k - 3 >= 0) add_scaled(r, g[k - 3], c1);
    if (k - 4 >= 0) add_scaled(r, g[k - 4], c2);
    return r;
  };
  for (int k = 1; k < n; ++k) {
    CPoly r = rhs(k);
    Real inv = Real(1L) / Real(static_cast<long>(k) * (k - n));
    for (auto& c : r) c *= inv;
    g.push_back(std::move(r));
  }
  return rhs(n);
}

NoLogBranch no_log_betas(int n, const Complex& alpha, double E) {
  NoLogBranch out;
  out.n = n;
  out.alpha = alpha;
  out.E = E;
  const long prec = std::max(mp::default_precision(), alpha.precision());
  auto make = [&](long bits) {
    mp::PrecisionScope inner(bits);
    Complex al = alpha;
    al.round_to(std::max(bits, alpha.precision()));
    return no_log_constraint(n, al, E);
  };
  CPoly c = make(prec);
  if (n == 1) {
    out.betas_scaled = {Complex(0L)};
  } else {
    RootOptions opts;
    opts.precision_bits = prec;
    opts.max_precision_bits = 4 * prec;
    RootSet rs = find_roots(CoeffSource(make), opts);
    std::vector<std::size_t> order(rs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rs.roots[x].im < rs.roots[y].im; });
    for (std::size_t i : order) out.betas_scaled.push_back(rs.roots[i]);
    if (std::isinf(E)) {
      // The limit is the Whittaker spectrum {j i : j in J_n}; snap after checking.
      for (std::size_t i = 0; i < order.size(); ++i) {
        Complex exact(Real(0L), Real(static_cast<long>(-n + 1 + 2 * static_cast<int>(i))));
        if (abs(out.betas_scaled[i] - exact) > rs.cert_radius[order[i]] + mp::ldexp(Real(1L), -(prec / 2))) {
          throw Error(ErrorCode::Nonconvergence, "limit constraint roots differ from j i");
        }
        out.betas_scaled[i] = exact;
      }
    }
  }
  Complex root = mp::sqrt(Complex(1L) - alpha * alpha);
  for (const Complex& b : out.betas_scaled) out.betas.push_back(b * root);
  return out;
}

}  // namespace pivroots
