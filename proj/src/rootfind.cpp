#include "pivroots/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace pivroots {

using mp::Complex;
using mp::Real;

RootSet RootSet::scaled(const Real& factor) const {
  RootSet out = *this;
  for (auto& r : out.roots) r *= factor;
  for (auto& r : out.cert_radius) r *= factor;
  return out;
}

Real RootSet::max_radius() const {
  Real best(0L);
  for (const auto& r : cert_radius) best = mp::max(best, r);
  return best;
}

int count_real_roots(const ExactPoly& p) { return count_real_roots(p.coeffs); }

namespace {

// Arithmetic modulo a 61-bit prime for the squarefree pre-check.
struct ModP {
  std::uint64_t p;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

void trim(std::vector<std::uint64_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Degree of gcd(a, b) over F_p.
int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, const ModP& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = f.inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t c = f.mul(a.back(), inv);
      const std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = f.sub(a[off + i], f.mul(c, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

std::vector<std::uint64_t> reduce(const IntPoly& p, std::uint64_t prime) {
  std::vector<std::uint64_t> out;
  out.reserve(p.size());
  for (const auto& c : p.coeffs()) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), prime));
  return out;
}

}  // namespace

bool is_squarefree(const IntPoly& p) {
  if (p.degree() <= 1) return true;
  constexpr std::uint64_t primes[] = {2305843009213693951ULL, 4611686018427387847ULL, 1152921504606846883ULL};
  for (std::uint64_t prime : primes) {
    // A prime dividing the leading coefficient can drop the degree; skip it.
    if (mpz_fdiv_ui(p.lead().get_mpz_t(), prime) == 0) continue;
    ModP f{prime};
    auto a = reduce(p, prime);
    auto b = reduce(p.derivative(), prime);
    trim(b);
    if (static_cast<int>(b.size()) - 1 != p.degree() - 1) continue;
    if (gcd_degree_mod(a, b, f) == 0) return true;
    break;
  }
  return gcd(p, p.derivative()).degree() == 0;
}

namespace {

// p(z) and p'(z) by Horner.
void horner2(const std::vector<Complex>& c, const Complex& z, Complex& v, Complex& d) {
  const long prec = z.precision();
  v = Complex(Real::with_precision(prec), Real::with_precision(prec));
  d = Complex(Real::with_precision(prec), Real::with_precision(prec));
  for (std::size_t k = c.size(); k-- > 0;) {
    d = d * z + v;
    v = v * z + c[k];
  }
}

// |p(z)| together with sum |c_k| |z|^k.
void horner_abs(const std::vector<Complex>& c, const Complex& z, Real& value, Real& magnitude) {
  Complex v(Real::with_precision(z.precision()), Real::with_precision(z.precision()));
  Real az = abs(z);
  Real s = Real::with_precision(z.precision());
  for (std::size_t k = c.size(); k-- > 0;) {
    v = v * z + c[k];
    s = s * az + abs(c[k]);
  }
  value = abs(v);
  magnitude = s;
}

double log_abs(const Complex& c) {
  long e1 = 0, e2 = 0;
  double a = mpfr_get_d_2exp(&e1, c.re.raw(), MPFR_RNDN);
  double b = mpfr_get_d_2exp(&e2, c.im.raw(), MPFR_RNDN);
  if (c.re.is_zero()) return std::log(std::abs(b)) + e2 * std::numbers::ln2;
  if (c.im.is_zero()) return std::log(std::abs(a)) + e1 * std::numbers::ln2;
  const long e = std::max(e1, e2);
  const double x = std::ldexp(a, static_cast<int>(e1 - e));
  const double y = std::ldexp(b, static_cast<int>(e2 - e));
  return 0.5 * std::log(x * x + y * y) + e * std::numbers::ln2;
}

bool is_zero(const Complex& c) { return c.re.is_zero() && c.im.is_zero(); }

// Starting points on circles read off the upper convex hull of (k, log|c_k|).
std::vector<Complex> initial_points(const std::vector<Complex>& c, std::mt19937_64& rng) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<std::pair<int, double>> pts;
  for (int k = 0; k <= d; ++k) {
    if (!is_zero(c[static_cast<std::size_t>(k)])) pts.emplace_back(k, log_abs(c[static_cast<std::size_t>(k)]));
  }
  std::vector<std::pair<int, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  const double two_pi = 2 * std::numbers::pi;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int i = hull[s].first;
    const int j = hull[s + 1].first;
    const int cnt = j - i;
    const double log_r = (hull[s].second - hull[s + 1].second) / cnt;
    smallest = std::min(smallest, log_r);
    const double offset = unit(rng) * two_pi / cnt;
    for (int l = 0; l < cnt; ++l) {
      const double ang = offset + two_pi * l / cnt + 0.1 * (unit(rng) - 0.5) / cnt;
      const double rad = std::exp(log_r) * (1.0 + 0.01 * (unit(rng) - 0.5));
      out.emplace_back(Real(rad * std::cos(ang)), Real(rad * std::sin(ang)));
    }
  }
  // Roots at the origin from vanishing low-order coefficients.
  const int low = hull.empty() ? 0 : hull.front().first;
  const double tiny = std::isfinite(smallest) ? std::exp(smallest) * 1e-3 : 1e-3;
  for (int l = 0; l < low; ++l) {
    const double ang = two_pi * (l + unit(rng)) / std::max(low, 1);
    out.emplace_back(Real(tiny * std::cos(ang)), Real(tiny * std::sin(ang)));
  }
  return out;
}

struct AberthResult {
  std::vector<Complex> roots;
  bool converged = false;
  int sweeps = 0;
};

AberthResult aberth(const std::vector<Complex>& c, long prec, std::mt19937_64& rng, int max_sweeps) {
  mp::PrecisionScope scope(prec);
  const std::size_t d = c.size() - 1;
  AberthResult res;
  res.roots = initial_points(c, rng);
  for (auto& z : res.roots) z.round_to(prec);
  std::vector<bool> done(d, false);
  std::size_t remaining = d;
  const Real noise = mp::ldexp(Real(static_cast<long>(4 * d + 8)), -prec);

  mpfr_t dx, dy, nrm, t, sr, si;
  for (auto* v : {&dx, &dy, &nrm, &t, &sr, &si}) mpfr_init2(*v, prec);
  Complex v, dv;
  for (int sweep = 0; sweep < max_sweeps && remaining > 0; ++sweep) {
    res.sweeps = sweep + 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      Complex& zi = res.roots[i];
      horner2(c, zi, v, dv);
      Real value, magnitude;
      horner_abs(c, zi, value, magnitude);
      // Once |p| sits at the rounding level the iterate cannot improve further.
      if (is_zero(v) || value <= magnitude * noise) {
        done[i] = true;
        --remaining;
        continue;
      }
      mpfr_set_zero(sr, 1);
      mpfr_set_zero(si, 1);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        const Complex& zj = res.roots[j];
        mpfr_sub(dx, zi.re.raw(), zj.re.raw(), MPFR_RNDN);
        mpfr_sub(dy, zi.im.raw(), zj.im.raw(), MPFR_RNDN);
        mpfr_sqr(nrm, dx, MPFR_RNDN);
        mpfr_sqr(t, dy, MPFR_RNDN);
        mpfr_add(nrm, nrm, t, MPFR_RNDN);
        mpfr_div(t, dx, nrm, MPFR_RNDN);
        mpfr_add(sr, sr, t, MPFR_RNDN);
        mpfr_div(t, dy, nrm, MPFR_RNDN);
        mpfr_sub(si, si, t, MPFR_RNDN);
      }
      Complex sum(Real::with_precision(prec), Real::with_precision(prec));
      mpfr_set(sum.re.raw(), sr, MPFR_RNDN);
      mpfr_set(sum.im.raw(), si, MPFR_RNDN);
      Complex ratio = v / dv;
      Complex w = ratio / (Complex(1L) - ratio * sum);
      zi -= w;
      Real scale = mp::max(abs(zi), mp::ldexp(Real(1L), -prec / 2));
      if (abs(w) <= mp::ldexp(scale, -(prec - 24))) {
        done[i] = true;
        --remaining;
      }
    }
  }
  for (auto* v : {&dx, &dy, &nrm, &t, &sr, &si}) mpfr_clear(*v);
  res.converged = remaining == 0;
  return res;
}

void polish(const std::vector<Complex>& c, std::vector<Complex>& roots, long prec) {
  mp::PrecisionScope scope(prec);
  Complex v, dv;
  for (auto& z : roots) {
    z.round_to(prec);
    for (int it = 0; it < 12; ++it) {
      horner2(c, z, v, dv);
      if (is_zero(v) || is_zero(dv)) break;
      Complex step = v / dv;
      z -= step;
      Real scale = mp::max(abs(z), mp::ldexp(Real(1L), -prec / 2));
      if (abs(step) <= mp::ldexp(scale, -(prec - 8))) break;
    }
  }
}

// Inclusion radii n |p(z_i)| / |lc prod (z_i - z_j)| with a rounding allowance;
// empty if the discs are not pairwise disjoint.
std::vector<Real> certify(const std::vector<Complex>& c, const std::vector<Complex>& roots, long prec) {
  mp::PrecisionScope scope(prec);
  const std::size_t d = roots.size();
  std::vector<Real> radius(d);
  if (d == 0) return radius;
  Real lc = abs(c.back());
  const Real unit = mp::ldexp(Real(1L), -prec);
  std::vector<Real> prod(d, lc);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      Real dist = abs(roots[i] - roots[j]);
      prod[i] *= dist;
      prod[j] *= dist;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    Real value, magnitude;
    horner_abs(c, roots[i], value, magnitude);
    Real err = magnitude * unit * static_cast<long>(4 * d + 8);
    radius[i] = (value + err) * static_cast<long>(d) / prod[i];
    radius[i] *= Real(1.0 + 1e-6);
    radius[i] = mp::max(radius[i], unit * mp::max(abs(roots[i]), Real(1L)));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (abs(roots[i] - roots[j]) <= radius[i] + radius[j]) return {};
    }
  }
  return radius;
}

}  // namespace

RootSet find_roots(const CoeffSource& source, const RootOptions& opts) {
  long prec = std::max<long>(opts.precision_bits, 64);
  std::mt19937_64 rng(opts.seed);
  for (;;) {
    std::vector<Complex> c = source(prec);
    while (!c.empty() && is_zero(c.back())) c.pop_back();
    if (c.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no root set");
    RootSet out;
    out.precision_bits = prec;
    out.seed = opts.seed;
    const std::size_t d = c.size() - 1;
    if (d == 0) return out;
    const int max_sweeps = opts.max_sweeps > 0 ? opts.max_sweeps : 200 + 2 * static_cast<int>(d);
    AberthResult res = aberth(c, prec, rng, max_sweeps);
    if (res.converged) {
      std::vector<Complex> fine = source(2 * prec);
      while (!fine.empty() && is_zero(fine.back())) fine.pop_back();
      polish(fine, res.roots, 2 * prec);
      std::vector<Real> radius = certify(fine, res.roots, 2 * prec);
      if (!radius.empty()) {
        out.roots = std::move(res.roots);
        out.cert_radius = std::move(radius);
        out.sweeps = res.sweeps;
        return out;
      }
    }
    if (prec * 2 > opts.max_precision_bits) {
      throw Error(ErrorCode::Nonconvergence, std::string(res.converged ? "certification discs overlap" : "Aberth iteration stalled") +
                                                 " at " + std::to_string(prec) + " bits after " +
                                                 std::to_string(res.sweeps) + " sweeps");
    }
    prec *= 2;
  }
}

RootSet find_roots(const ExactPoly& p, const RootOptions& opts) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no root set");
  if (!is_squarefree(p.coeffs)) throw Error(ErrorCode::NotSquarefree, "gcd(p, p') is not constant");
  CoeffSource source = [&p](long prec) {
    mp::PrecisionScope scope(prec);
    std::vector<Complex> c;
    c.reserve(p.coeffs.size());
    for (const auto& v : p.coeffs.coeffs()) c.emplace_back(Real(v), Real::with_precision(prec));
    return c;
  };
  RootSet out = find_roots(source, opts);
  out.family = p.family;
  out.m = p.m;
  out.n = p.n;
  if (p.scale != Scale::One) {
    const long prec = out.roots.empty() ? out.precision_bits : out.roots.front().precision();
    mp::PrecisionScope scope(prec);
    Real inv = Real(1L) / scale_value(p.scale);
    for (auto& r : out.roots) r *= inv;
    for (auto& r : out.cert_radius) r *= inv;
  }
  return out;
}

RootSet find_roots(const ExactPoly& p, long precision_bits) {
  RootOptions opts;
  opts.precision_bits = precision_bits;
  opts.max_precision_bits = std::max(opts.max_precision_bits, precision_bits);
  return find_roots(p, opts);
}

MatchReport match_roots(const RootSet& roots, const std::vector<PredictedPoint>& preds, const Real& radius) {
  MatchReport rep;
  rep.radius = radius;
  rep.max_distance = Real(0L);
  if (radius.sign() > 0 && roots.size() > 0 && !(roots.max_radius() < radius)) {
    throw Error(ErrorCode::PrecisionInsufficient, "matching radius does not exceed the certification radii");
  }
  const std::size_t P = preds.size();
  const std::size_t R = roots.size();
  std::vector<std::size_t> nearest_root(P, R);
  std::vector<std::size_t> nearest_pred(R, P);
  std::vector<Real> root_best(R);
  rep.nearest.resize(P);
  for (std::size_t i = 0; i < P; ++i) {
    std::size_t inside = 0;
    for (std::size_t r = 0; r < R; ++r) {
      Real dist = abs(preds[i].value - roots.roots[r]);
      if (dist <= radius) ++inside;
      if (nearest_root[i] == R || dist < rep.nearest[i]) {
        nearest_root[i] = r;
        rep.nearest[i] = dist;
      }
      if (nearest_pred[r] == P || dist < root_best[r]) {
        nearest_pred[r] = i;
        root_best[r] = dist;
      }
    }
    if (inside == 1) {
      rep.satisfied.push_back(i);
    } else if (inside > 1) {
      rep.ambiguous.push_back(i);
    } else {
      rep.unmatched_predictions.push_back(i);
    }
    if (nearest_root[i] != R) rep.max_distance = mp::max(rep.max_distance, rep.nearest[i]);
  }
  std::vector<bool> used(R, false);
  for (std::size_t i = 0; i < P; ++i) {
    const std::size_t r = nearest_root[i];
    if (r != R && nearest_pred[r] == i) {
      rep.pairs.push_back({i, r, rep.nearest[i]});
      used[r] = true;
    }
  }
  for (std::size_t r = 0; r < R; ++r) {
    if (!used[r]) rep.unmatched_roots.push_back(r);
  }
  return rep;
}

void require_unambiguous(const MatchReport& report) {
  if (!report.ambiguous.empty()) {
    throw Error(ErrorCode::AmbiguousMatch,
                std::to_string(report.ambiguous.size()) + " prediction discs contain more than one root");
  }
}

}  // namespace pivroots
