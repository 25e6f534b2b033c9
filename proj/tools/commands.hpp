#pragma once

#include <climits>
#include <cstdint>
#include <string>

namespace pivroots::cli {

inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kInvariant = 3;

struct RunConfig {
  std::string family = "hermite";
  int m = INT_MIN;  // INT_MIN: not given
  int n = INT_MIN;
  long precision_bits = 256;
  double sigma = 0.2;
  double delta = 2.0 / 3.0;
  double s = 1.0;
  double radius_const = 0;  // 0 picks the figure's own constant
  int j = 4;
  std::string format;
  std::string out;
  int digits = 0;
  std::uint64_t seed = 20180801;
  int max_m = 12;
  int max_n = 6;
  int max_index = -1;  // -1 picks the suite's default
  std::string which;
};

/// Throws pivroots::Error(InvalidArgument) on out-of-range parameters.
void validate(const RunConfig& cfg);

int cmd_poly(const RunConfig& cfg);
int cmd_figure(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

}  // namespace pivroots::cli
