#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pivroots/exact_poly.hpp"
#include "pivroots/mp.hpp"

namespace pivroots {

enum class Family { HI, HII, HIII, OK };

std::string_view to_string(Family f);
Family parse_solution_family(std::string_view s);

struct Theta {
  mpq_class theta0;
  mpq_class thetaInf;
};

/// omega(z) = drift*z + num'/num - den'/den.
struct RationalSolution {
  Family family = Family::HI;
  int m = 0;
  int n = 0;
  Theta theta;
  mpq_class drift;
  ExactPoly num;
  ExactPoly den;

  mp::Complex omega(const mp::Complex& z) const;
};

RationalSolution build_rational(Family family, int m, int n);

/// Both operands describe the same function and parameters.
bool same_solution(const RationalSolution& a, const RationalSolution& b);

/// Numerator of 2*omega*(omega'' - RHS) after clearing denominators.  Hermite
/// families are handled in z; the Okamoto family in w = sqrt(2) z, where all
/// coefficients are integers.  Zero exactly when omega solves P_IV(theta).
ExactPoly piv_residual(const RationalSolution& sol);

/// The same residual computed over Q(sqrt 2) directly in z.  Slow; intended
/// as an independent check of the integer route for small indices.
Sqrt2Poly piv_residual_sqrt2(const RationalSolution& sol);

struct FamilyIndex {
  Family family;
  int m;
  int n;
};

/// Table of Backlund actions on the four families; nullopt when the target
/// index leaves the family's index range.
std::optional<FamilyIndex> backlund_target(int i, Family family, int m, int n);

/// Shifted parameters theta^{(i)}.
Theta backlund_theta(int i, const Theta& theta);

/// Applies R_i and returns the target solution after checking that the
/// transformed function equals it exactly.
RationalSolution backlund(int i, const RationalSolution& sol);

struct DictEntry {
  PolyFamily poly;
  int m;
  int n;
};

struct SingularityDictionary {
  DictEntry zeros_plus;
  DictEntry zeros_minus;
  DictEntry poles_plus;
  DictEntry poles_minus;
};

SingularityDictionary singularity_dictionary(Family family, int m, int n);

/// Polynomial named by a dictionary entry.
ExactPoly dictionary_poly(const DictEntry& e);

enum class PointKind { Zero, Pole, Regular };

std::string_view to_string(PointKind k);

struct LaurentData {
  mp::Complex center;
  PointKind kind = PointKind::Regular;
  int eps = 0;
  /// coeffs[k] multiplies (z - a)^(k - 1).
  std::vector<mp::Complex> coeffs;
  mp::Complex value;
  mp::Complex omega1;
  mp::Complex b;
  /// Largest deviation of the coefficients fixed by the local expansion theory.
  mp::Real constraint_error;
  long precision_bits = 0;

  const mp::Complex& coeff(int power) const { return coeffs.at(static_cast<std::size_t>(power + 1)); }
};

/// Expands omega about a point within reach of a zero or pole (polished
/// there first), or about a regular point.
LaurentData laurent_at(const RationalSolution& sol, const mp::Complex& a, int order = 4);

}  // namespace pivroots
