#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "pivroots/mp.hpp"
#include "pivroots/rootfind.hpp"

namespace pivroots {

struct BulkParams {
  int m = 0;
  int n = 0;
  int E = 0;
  std::vector<int> J;  // -n+1, -n+3, ..., n-1

  /// k runs over half-integers when m is even.
  bool half_integer_k() const { return m % 2 == 0; }
  bool has_j(int j) const;
  /// k on the right grid with |k| <= E/4.
  bool valid_k(const mpq_class& k) const;
};

BulkParams bulk_params(int m, int n);

enum class RegimeKind { Bulk, Edge };

struct Regime {
  RegimeKind kind = RegimeKind::Bulk;
  double sigma = 0.2;
  double delta = 2.0 / 3.0;
  double s = 1.0;

  static Regime bulk(double sigma) { return {RegimeKind::Bulk, sigma, 2.0 / 3.0, 1.0}; }
  static Regime edge(double delta, double s) { return {RegimeKind::Edge, 0.2, delta, s}; }
  /// Largest |k| admitted by the regime.
  mp::Real k_bound(int E) const;
};

std::string_view to_string(RegimeKind k);

struct LatticePrediction {
  BulkParams params;
  Regime regime;
  std::vector<PredictedPoint> entries;  // sorted by j, then k
};

mp::Real f_map(const mp::Real& x);
mp::Complex f_map(const mp::Complex& x);
/// Solves f(x) = y; tol = 0 means a few bits above working precision.
mp::Real f_inverse(const mp::Real& y, const mp::Real& tol = mp::Real(0L));

mpq_class gamma_ratio_exact(int n, int j);
mp::Real gamma_ratio(int n, int j);

mp::Real g_map(int j, int E, int n, const mp::Real& x);

mp::Complex alpha_jk(int j, const mpq_class& k, const BulkParams& p);

/// k values on the grid of p with |k| <= bound, ascending.  With floor_k the
/// test is floor(|k|) <= bound, which admits the half-integer just past an
/// edge bound.
std::vector<mpq_class> k_grid(const BulkParams& p, const mp::Real& bound, bool floor_k = false);

LatticePrediction lattice(const BulkParams& p, const Regime& regime);

/// Phase whose zeros of sin select the refined roots.
mp::Complex phase_phi(const mp::Complex& alpha, int E, int n, int j);

/// Root of the unlinearised phase equation near alpha_jk.
mp::Complex refined_alpha(int j, const mpq_class& k, const BulkParams& p);

/// Fraction of rescaled roots with real part in [A, B] against the semicircle law.
std::pair<mp::Real, mp::Real> semicircle_compare(const RootSet& rescaled, const mp::Real& A, const mp::Real& B, int n, int m);

/// Integral of (2n/pi) sqrt(1 - x^2) over [A, B] intersected with [-1, 1].
mp::Real semicircle_mass(const mp::Real& A, const mp::Real& B, int n);

}  // namespace pivroots
