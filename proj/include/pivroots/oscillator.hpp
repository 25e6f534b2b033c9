#pragma once

#include <vector>

#include "pivroots/mp.hpp"
#include "pivroots/rational_pw.hpp"
#include "pivroots/rootfind.hpp"

namespace pivroots {

/// psi'' = V psi with
/// V = l^2 + 2a l + a^2 + 2(1 - thInf) - [b + (2 thInf - 1/2) a] / l + (th0^2 - 1/4) / l^2.
struct OscillatorSpec {
  mp::Complex a;
  mp::Complex b;
  Theta theta;

  mp::Complex potential(const mp::Complex& lambda) const;
};

/// psi = l^s exp(sigma (l^2/2 + a l)) p(l) with deg p = degree.
struct Ansatz {
  int sigma = -1;
  mpq_class s;
  int degree = 0;
};

/// Oscillator parameters attached to H_{m,n} by the three Hermite families.
Theta qes_theta(Family family, int m, int n);
/// The ansatz for family; HIII has two (which = 0 for p, 1 for q).
Ansatz qes_ansatz(Family family, int m, int n, int which = 0);

/// Values of the matched coefficient equations for powers l^0 .. l^(deg p + 1):
/// (psi'' - V psi) l^(1-s) exp(-sigma g) = sum_k eq[k] l^k.
std::vector<mp::Complex> qes_equations(const OscillatorSpec& osc, const Ansatz& ans, const std::vector<mp::Complex>& p);

struct QesCertificate {
  Family family = Family::HI;
  int m = 0;
  int n = 0;
  mp::Complex a;
  mp::Complex b;
  std::vector<mp::Complex> p_coeffs;
  std::vector<mp::Complex> q_coeffs;  // HIII only
  mp::Complex b_q;                    // b recovered from the q system (HIII only)
  mp::Real residual;
  bool certified = false;
};

inline constexpr double kQesTolerance = 1e-20;

/// Solves the ansatz system at a and reports the leftover equation's relative size.
QesCertificate qes_solve(Family family, int m, int n, const mp::Complex& a, double tol = kQesTolerance);

/// Resultant in b of the square system and the leftover equation: an analytic
/// function of a vanishing at the roots of H_{m,n}.
mp::Complex qes_resultant(Family family, int m, int n, const mp::Complex& a);

struct QesRoots {
  std::vector<QesCertificate> roots;
  std::vector<std::size_t> failed_seeds;
};

/// Newton on qes_resultant from each seed, deduplicated and certified.
QesRoots roots_via_qes(Family family, int m, int n, const std::vector<mp::Complex>& seeds, double tol = kQesTolerance);

struct NoLogBranch {
  int n = 0;
  mp::Complex alpha;
  double E = 0;  // may be infinite
  std::vector<mp::Complex> betas_scaled;  // sorted by imaginary part
  std::vector<mp::Complex> betas;         // betas_scaled * sqrt(1 - alpha^2)
};

/// Coefficients (ascending in beta~) of the no-logarithm constraint.
std::vector<mp::Complex> no_log_constraint(int n, const mp::Complex& alpha, double E);

NoLogBranch no_log_betas(int n, const mp::Complex& alpha, double E);

}  // namespace pivroots
