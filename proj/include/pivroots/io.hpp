#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pivroots/exact_poly.hpp"
#include "pivroots/oscillator.hpp"
#include "pivroots/rootfind.hpp"

namespace pivroots {

/// Shortest decimal that parses back to the same double.
std::string shortest(double x);

/// digits == 0 exports through double; otherwise that many significant digits.
std::string format_real(const mp::Real& x, int digits = 0);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string roots_csv(const RootSet& roots, int digits = 0);
std::string lattice_csv(const std::vector<PredictedPoint>& entries, int digits = 0);

struct CurveSample {
  int j;
  mp::Real x;
  mp::Real y;
};
std::string curves_csv(const std::vector<CurveSample>& samples, int digits = 0);

std::string betas_csv(const std::vector<NoLogBranch>& branches, int digits = 0);

/// Hermite polynomials are written in z; Okamoto polynomials as the integer
/// coefficients of P(w), w = sqrt(2) z, with scale "sqrt2".
std::string poly_json(const ExactPoly& p);

std::string report_json(const MatchReport& report, std::string_view regime, long precision_bits, std::uint64_t seed);

std::string certificate_json(const QesCertificate& cert, int digits = 0);

}  // namespace pivroots
