#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pivroots/exact_poly.hpp"
#include "pivroots/mp.hpp"

namespace pivroots {

inline constexpr std::uint64_t kDefaultSeed = 20180801;

struct RootSet {
  std::vector<mp::Complex> roots;
  /// Each disc |z - roots[i]| <= cert_radius[i] holds exactly one root.
  std::vector<mp::Real> cert_radius;
  PolyFamily family = PolyFamily::Generic;
  int m = 0;
  int n = 0;
  long precision_bits = 0;
  std::uint64_t seed = kDefaultSeed;
  int sweeps = 0;

  std::size_t size() const { return roots.size(); }
  /// Roots and radii multiplied by a positive factor.
  RootSet scaled(const mp::Real& factor) const;
  mp::Real max_radius() const;
};

struct RootOptions {
  long precision_bits = 256;
  long max_precision_bits = 1024;
  std::uint64_t seed = kDefaultSeed;
  int max_sweeps = 0;  // 0 picks a default from the degree
};

/// Certified roots of an exact polynomial, reported in z.
RootSet find_roots(const ExactPoly& p, const RootOptions& opts = {});
RootSet find_roots(const ExactPoly& p, long precision_bits);

/// Certified roots of a polynomial whose coefficients are produced on demand
/// at any requested precision (ascending order).
using CoeffSource = std::function<std::vector<mp::Complex>(long precision_bits)>;
RootSet find_roots(const CoeffSource& coeffs, const RootOptions& opts = {});

/// Exact number of distinct real roots.
int count_real_roots(const ExactPoly& p);

/// True when gcd(p, p') is constant.  Large inputs are settled by a gcd
/// modulo a prime, which can only err towards "not squarefree"; in that case
/// the exact integer gcd decides.
bool is_squarefree(const IntPoly& p);

struct PredictedPoint {
  int j = 0;
  mpq_class k;
  mp::Complex value;
};

struct MatchPair {
  std::size_t prediction;
  std::size_t root;
  mp::Real distance;
};

struct MatchReport {
  std::vector<MatchPair> pairs;  // mutual nearest neighbours
  std::vector<std::size_t> satisfied;
  std::vector<std::size_t> ambiguous;
  std::vector<std::size_t> unmatched_predictions;
  std::vector<std::size_t> unmatched_roots;
  /// Distance from each prediction to its nearest root.
  std::vector<mp::Real> nearest;
  mp::Real radius;
  mp::Real max_distance;

  bool all_satisfied() const { return ambiguous.empty() && unmatched_predictions.empty(); }
};

/// A prediction is satisfied iff exactly one root lies within radius of it.
MatchReport match_roots(const RootSet& rescaled, const std::vector<PredictedPoint>& preds, const mp::Real& radius);

/// Throws AMBIGUOUS_MATCH if any disc holds more than one root.
void require_unambiguous(const MatchReport& report);

}  // namespace pivroots
