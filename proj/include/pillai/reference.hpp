#ifndef PILLAI_REFERENCE_HPP
#define PILLAI_REFERENCE_HPP

// Published results the verification compares against: the small solutions
// with n1 <= 150 and the per-round reduction table.

#include <array>

namespace pillai::reference {

struct Solution {
  int n1, n2;
  long b;
  int m1, m2;
  long c;
};

inline constexpr std::array<Solution, 14> kSmallSolutions{{
    {4, 3, 2, 2, 1, 0},
    {5, 2, 2, 3, 1, -1},
    {5, 2, 3, 2, 1, -2},
    {6, 2, 2, 4, 2, -3},
    {6, 5, 2, 3, 1, 5},
    {6, 5, 3, 2, 1, 4},
    {7, 4, 5, 2, 1, -1},
    {8, 3, 7, 2, 1, -5},
    {8, 7, 5, 2, 1, 19},
    {11, 3, 17, 2, 1, -15},
    {12, 4, 5, 4, 3, -121},
    {12, 7, 2, 9, 5, -8},
    {15, 11, 54, 2, 1, 220},
    {23, 12, 641, 2, 1, -137},
}};

inline constexpr int kSmallSolutionsMaxN = 150;

struct StepARow {
  long n1n2_max, n2n3_max, logb;
};
struct StepBRow {
  long n1n2_max, logb;
};

inline constexpr std::array<StepARow, 4> kStepA{{{617, 617, 377}, {292, 292, 179}, {288, 288, 176}, {288, 288, 176}}};
inline constexpr std::array<StepBRow, 4> kStepB{{{1539, 939}, {729, 445}, {719, 439}, {715, 437}}};
inline constexpr std::array<long, 4> kStepC{940, 447, 441, 438};

inline constexpr const char* kStepA_delta_min = "4.4e-82";
inline constexpr const char* kInitialBoundLow = "4.9e80";
inline constexpr const char* kInitialBoundHigh = "5.1e80";
inline constexpr const char* kStepB_round1_low = "1e-330";
inline constexpr const char* kStepB_round1_high = "1e-320";
inline constexpr double kStepB_tolerance = 0.05;
inline constexpr int kStepB_max_attempts = 3;
inline constexpr long kFinalLogB = 438;
inline constexpr const char* kFinalN1 = "1.1e37";
inline constexpr long kFinalLogB_limit = 450;
inline constexpr const char* kFinalN1_limit = "1.3e37";

}  // namespace pillai::reference

#endif  // PILLAI_REFERENCE_HPP
