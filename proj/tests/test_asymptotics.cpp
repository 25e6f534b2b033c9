#include "doctest.h"

#include <cmath>

#include "pivroots/asymptotics.hpp"
#include "pivroots/error.hpp"

using namespace pivroots;
using mp::Complex;
using mp::Real;

namespace {

double d(const Real& x) { return x.to_double(); }

}  // namespace

TEST_CASE("f and its inverse") {
  mp::PrecisionScope prec(200);
  CHECK(abs(f_map(Real(0L))).to_double() < 1e-55);
  CHECK(abs(f_map(Real(1L)) - Real::pi() / 4L).to_double() < 1e-55);
  CHECK(abs(f_map(Real(-1L)) + Real::pi() / 4L).to_double() < 1e-55);
  CHECK_THROWS_AS(f_map(Real(1.5)), Error);

  CHECK(abs(f_inverse(Real::pi() / 4L) - Real(1L)).to_double() < 1e-25);
  CHECK(abs(f_inverse(Real(0L))).to_double() < 1e-55);
  CHECK(abs(f_inverse(f_map(Real(0.37))) - Real(0.37)).to_double() < 1e-50);

  Real quarter = Real::pi() / 4L;
  Real prev(-2L);
  for (int i = 0; i <= 1000; ++i) {
    Real y = -quarter + quarter * Real(static_cast<long>(2 * i)) / 1000L;
    Real x = f_inverse(y);
    CHECK(abs(f_map(x) - y).to_double() < 1e-50);
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("gamma ratios") {
  CHECK(gamma_ratio_exact(5, 0) == 1);
  CHECK(gamma_ratio_exact(5, 4) == 24);
  for (int n = 1; n <= 8; ++n) {
    for (int j = -n + 1; j <= n - 1; j += 2) {
      CAPTURE(n);
      CAPTURE(j);
      double oracle = std::tgamma(0.5 * (1 + n + j)) / std::tgamma(0.5 * (1 + n - j));
      CHECK(gamma_ratio(n, j).to_double() == doctest::Approx(oracle).epsilon(1e-13));
      CHECK(gamma_ratio_exact(n, -j) * gamma_ratio_exact(n, j) == 1);
    }
  }
  CHECK_THROWS_AS(gamma_ratio_exact(5, 1), Error);
}

TEST_CASE("g map") {
  mp::PrecisionScope prec(200);
  Real oracle("0.12068758145909532331794325255295480662310517515985");
  CHECK(abs(g_map(4, 85, 5, Real("0.3")) - oracle).to_double() < 1e-45);
  CHECK(g_map(0, 85, 5, Real(0.4)).is_zero());
  Real at0 = (Real(8L) * mp::log(Real(2L) * mp::sqrt(Real(85L))) - mp::log(Real(24L))) / 170L;
  CHECK(abs(g_map(4, 85, 5, Real(0L)) - at0).to_double() < 1e-50);
}

TEST_CASE("approximate roots") {
  mp::PrecisionScope prec(200);
  BulkParams p = bulk_params(8, 5);
  CHECK(p.E == 21);
  CHECK(p.J == std::vector<int>{-4, -2, 0, 2, 4});
  CHECK(p.half_integer_k());
  CHECK_THROWS_AS(alpha_jk(0, mpq_class(1), p), Error);

  Complex a = alpha_jk(4, mpq_class(5, 2), p);
  CHECK(abs(a.re - Real("0.38362844130195594269820432280459702909987859386281")).to_double() < 1e-45);
  CHECK(abs(a.im - Real("0.3503808256282635546298812756490249870461472201763")).to_double() < 1e-45);

  BulkParams q = bulk_params(9, 3);
  Complex z = alpha_jk(0, mpq_class(0), q);
  CHECK(z.re.is_zero());
  CHECK(z.im.is_zero());
  for (int k = -5; k <= 5; ++k) {
    Complex up = alpha_jk(2, mpq_class(k), q);
    Complex down = alpha_jk(-2, mpq_class(k), q);
    CHECK(up.re == down.re);
    CHECK(abs(up.im + down.im).to_double() < 1e-30);
    CHECK(up.re == alpha_jk(0, mpq_class(k), q).re);
  }
}

TEST_CASE("lattice enumeration") {
  mp::PrecisionScope prec(128);
  BulkParams p = bulk_params(40, 5);
  LatticePrediction L = lattice(p, Regime::bulk(0.2));
  // half-integers with |k| <= 17
  CHECK(L.entries.size() == 5 * 34);
  for (std::size_t i = 1; i < L.entries.size(); ++i) {
    if (L.entries[i].j == L.entries[i - 1].j) CHECK(L.entries[i].value.re > L.entries[i - 1].value.re);
  }
  LatticePrediction one = lattice(bulk_params(7, 1), Regime::bulk(0.2));
  for (const auto& e : one.entries) {
    CHECK(e.j == 0);
    CHECK(e.value.im.is_zero());
  }
  LatticePrediction edge = lattice(bulk_params(144, 5), Regime::edge(2.0 / 3.0, 1.0));
  int E = 293;
  mpq_class k_edge(static_cast<long>(std::floor(E / 4.0 - std::sqrt(static_cast<double>(E)))));
  k_edge += mpq_class(1, 2);
  bool found = false;
  for (const auto& e : edge.entries) found = found || (e.j == 4 && e.k == k_edge);
  CHECK(found);
  CHECK_THROWS_AS(lattice(p, Regime::bulk(0.3)), Error);
  CHECK_THROWS_AS(lattice(p, Regime::edge(0.2, 1.0)), Error);
}

TEST_CASE("lattice limit for fixed k") {
  mp::PrecisionScope prec(200);
  double prev = -1;
  for (int E : {52, 100, 200, 400}) {
    BulkParams p = bulk_params((E - 4) / 2, 4);
    mpq_class k(7, 2);
    Complex a = alpha_jk(3, k, p);
    Real lr = Real::pi() * Real(k) / static_cast<long>(E);
    Real li = (Real(3L) * mp::log(Real(2L) * mp::sqrt(Real(static_cast<long>(E)))) - mp::log(gamma_ratio(4, 3)) / 2L) / static_cast<long>(E);
    double ratio = d(abs(a - Complex(lr, li))) * E * E;
    CHECK(ratio < 50.0);
    if (prev > 0) CHECK(ratio < 3 * prev);
    prev = ratio;
  }
}

TEST_CASE("phase") {
  mp::PrecisionScope prec(200);
  Complex phi = phase_phi(Complex(0L), 101, 3, 0);
  Real expect = Real::pi() * 101L / 4L - Real::pi() * 5L / 4L;
  CHECK(abs(phi - Complex(expect)).to_double() < 1e-50);
  CHECK(phase_phi(Complex(0.4), 101, 3, 0).im.is_zero());
  CHECK_THROWS_AS(phase_phi(Complex(1L), 101, 3, 0), Error);

  BulkParams p = bulk_params(40, 5);
  Complex r = refined_alpha(4, mpq_class(7, 2), p);
  CHECK(abs(mp::sin(phase_phi(r, p.E, p.n, 4))).to_double() < 1e-40);
  CHECK(abs(r - alpha_jk(4, mpq_class(7, 2), p)).to_double() < 1e-2);

  Complex real_root = refined_alpha(0, mpq_class(0), bulk_params(11, 3));
  CHECK(abs(real_root.im).to_double() < 1e-50);
}

TEST_CASE("semicircle mass") {
  mp::PrecisionScope prec(128);
  CHECK(abs(semicircle_mass(Real(-1L), Real(1L), 4) - Real(4L)).to_double() < 1e-30);
  CHECK(semicircle_mass(Real(0L), Real(0L), 4).is_zero());
  // (2n/pi) * integral of sqrt(1-x^2) over [-0.5, 0.5], by Simpson's rule
  double h = 1e-4, s = 0;
  for (int i = 0; i <= 10000; ++i) {
    double x = -0.5 + i * h;
    double w = (i == 0 || i == 10000) ? 1 : (i % 2 ? 4 : 2);
    s += w * std::sqrt(1 - x * x);
  }
  s *= h / 3 * 2 * 4 / M_PI;
  CHECK(semicircle_mass(Real(-0.5), Real(0.5), 4).to_double() == doctest::Approx(s).epsilon(1e-12));
}
