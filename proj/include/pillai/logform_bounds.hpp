#ifndef PILLAI_LOGFORM_BOUNDS_HPP
#define PILLAI_LOGFORM_BOUNDS_HPP

// Lower bounds for linear forms in logarithms (Matveev for t logarithms,
// Laurent for two), the audit of the explicit constants C100..C107 used to
// bound n1, and a bisection solver for n = C (log n)^k.

#include "pillai/hp_arith.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pillai {

/// Numeric constants of the Tribonacci bound, kept in one place so that the
/// audit and the reduction pipeline read the same values. Decimal strings are
/// parsed at whatever precision is active.
namespace proof_constants {

// Stated values of the audited constants.
inline constexpr std::string_view kC100 = "2.6e13";
inline constexpr std::string_view kC101 = "1.1e14";
inline constexpr std::string_view kC102 = "7.8e27";
inline constexpr std::string_view kC103 = "2778";
inline constexpr std::string_view kC104 = "4.3e13";
inline constexpr std::string_view kC105 = "3.3e17";
inline constexpr std::string_view kC106 = "2.1e17";
inline constexpr std::string_view kC107 = "3.5e62";

// Matveev parameters for the Step 1/2/4 linear forms.
inline constexpr std::string_view kA_log_alpha = "0.7";  // A >= log alpha
inline constexpr std::string_view kA_log_b = "3";        // A = 3 log b, log b factored out
inline constexpr std::string_view kA_height_a = "3.8";   // A >= log 44 = 3 h(a)
inline constexpr std::string_view kA_step2 = "14.7";     // A_3 = 14.7 (n1 - n2)
inline constexpr std::string_view kA_step4 = "2.7";      // A_3 = 2.7 (n2 - n3)
inline constexpr std::string_view kLogB_step1 = "1.2";   // 1 + log n1 <= 1.2 log n1 for n1 > 150
inline constexpr std::string_view kLogB_step4 = "2.2";   // 1 + log n1^2 <= 2.2 log n1

// Laurent: max(log b' + 0.38, 18/D, 1) <= 2 log n1.
inline constexpr std::string_view kLaurentMaxFactor = "2";
inline constexpr std::string_view kLaurentLogA1 = "1";
inline constexpr std::string_view kLaurentLogA2 = "3.8";

// Step 3 -> n2 - n3 <= 4563 (log n1)^2.
inline constexpr std::string_view kStep3Factor = "4563";

// Reduction-step constants.
inline constexpr std::string_view kStepA_factor = "20.6";   // |Lambda_3'| <= 20.6 n1 max(...)
inline constexpr std::string_view kStepB_factor = "18.8";   // |Lambda_4'| <= 18.8 n1 max(...)
inline constexpr std::string_view kStepC_offset = "2.1";    // n log alpha <= m log b + 2.1
inline constexpr std::string_view kStepD_factor = kC102;    // n1 <= C102 (log b)^2 (log n1)^2
inline constexpr unsigned kInitialBoundPower = 8;           // n1 <= C107 (log n1)^8

inline Real value(std::string_view v) { return to_real(v); }

}  // namespace proof_constants

struct MatveevParams {
  unsigned t = 1;
  unsigned D = 1;
  Real B;
  std::vector<Real> A;
};

struct LaurentParams {
  unsigned D = 1;
  Real b_prime;
  Real logA1;
  Real logA2;
};

struct ConstantAudit {
  std::string name;
  Real stated;
  Real recomputed;
  bool ok = false;  // stated > recomputed
  std::string formula;
};

/// 1.4 * 30^(t+3) * t^4.5 * D^2 (1 + log D) * log_factor * A_1 ... A_t
inline Real matveev_constant(unsigned t, unsigned D, const Real& log_factor, const std::vector<Real>& A) {
  Real out = Real("1.4") * pow(Real(30), Real(t + 3)) * pow(Real(t), Real("4.5")) * Real(D) * Real(D) *
             (1 + log(Real(D))) * log_factor;
  for (const auto& ai : A) out *= ai;
  return out;
}

/// Lower bound for log|Lambda| with Lambda = sum b_i log eta_i.
inline Real matveev_lower_bound(const MatveevParams& p) {
  if (p.t < 1 || p.D < 1) throw InvalidArgument("Matveev bound needs t >= 1 and D >= 1");
  if (p.B < 1) throw InvalidArgument("Matveev bound needs B >= 1");
  if (p.A.size() != p.t) throw InvalidArgument("Matveev bound needs exactly t values A_i");
  for (const auto& ai : p.A) {
    if (ai < Real("0.16")) throw InvalidArgument("Matveev bound needs A_i >= 0.16");
  }
  return -matveev_constant(p.t, p.D, 1 + log(p.B), p.A);
}

/// 20.3 * D^2 * max_factor^2 * log A_1 * log A_2
inline Real laurent_constant(unsigned D, const Real& max_factor, const Real& logA1, const Real& logA2) {
  return Real("20.3") * Real(D) * Real(D) * max_factor * max_factor * logA1 * logA2;
}

/// max(log b' + 0.38, 18/D, 1)
inline Real laurent_max_factor(const LaurentParams& p) {
  return max(max(log(p.b_prime) + Real("0.38"), Real(18) / Real(p.D)), Real(1));
}

inline Real laurent_lower_bound(const LaurentParams& p) {
  if (p.D < 1) throw InvalidArgument("Laurent bound needs D >= 1");
  if (p.logA1 < 1 || p.logA2 < 1) throw InvalidArgument("Laurent bound needs log A_i >= 1");
  if (p.b_prime <= 0) throw InvalidArgument("Laurent bound needs b' > 0");
  return -laurent_constant(p.D, laurent_max_factor(p), p.logA1, p.logA2);
}

/// Recomputes C100..C107 from the factors printed next to each of them.
/// Derived constants (C102, C105, C106, C107) use the stated values of the
/// constants they are built from.
inline std::vector<ConstantAudit> audit_constants(const AlgebraicConstants& consts) {
  namespace pc = proof_constants;
  ScopedPrecision guard(consts.ctx);
  const Real log_alpha = consts.log_alpha;
  const Real C100 = pc::value(pc::kC100);
  const Real C101 = pc::value(pc::kC101);
  const Real C102 = pc::value(pc::kC102);
  const Real C104 = pc::value(pc::kC104);
  const Real C105 = pc::value(pc::kC105);
  const Real C106 = pc::value(pc::kC106);

  std::vector<ConstantAudit> out;
  auto add = [&](std::string name, std::string_view stated, Real recomputed, std::string formula) {
    ConstantAudit a;
    a.name = std::move(name);
    a.stated = pc::value(stated);
    a.recomputed = std::move(recomputed);
    a.ok = a.stated > a.recomputed;
    a.formula = std::move(formula);
    out.push_back(std::move(a));
  };

  add("C100", pc::kC100,
      matveev_constant(3, 3, pc::value(pc::kLogB_step1),
                       {pc::value(pc::kA_log_alpha), pc::value(pc::kA_log_b), pc::value(pc::kA_height_a)}),
      "1.4*30^6*3^4.5*3^2*(1+log 3)*1.2*0.7*3*3.8");
  add("C101", pc::kC101,
      matveev_constant(3, 3, pc::value(pc::kLogB_step1),
                       {pc::value(pc::kA_log_alpha), pc::value(pc::kA_log_b), pc::value(pc::kA_step2)}),
      "1.4*30^6*3^4.5*3^2*(1+log 3)*1.2*0.7*3*14.7");
  add("C102", pc::kC102, C100 * C101 / (log_alpha * log_alpha), "C100*C101/(log alpha)^2");
  add("C103", pc::kC103,
      laurent_constant(3, pc::value(pc::kLaurentMaxFactor), pc::value(pc::kLaurentLogA1),
                       pc::value(pc::kLaurentLogA2)),
      "20.3*3^2*2^2*1*3.8");
  add("C104", pc::kC104,
      matveev_constant(3, 3, pc::value(pc::kLogB_step4),
                       {pc::value(pc::kA_height_a), pc::value(pc::kA_log_alpha), pc::value(pc::kA_step4)}),
      "1.4*30^6*3^4.5*3^2*(1+log 3)*2.2*3.8*0.7*2.7");
  add("C105", pc::kC105, C104 * pc::value(pc::kStep3Factor) / log_alpha, "C104*4563/log alpha");
  add("C106", pc::kC106, C105 * log_alpha, "C105*log alpha");
  add("C107", pc::kC107, C102 * C106 * C106, "C102*C106^2");
  return out;
}

/// Largest root of n = C (log n)^k, by bisection of g(n) = n - C (log n)^k on
/// [C, C^2] down to relative width 1e-6. Returns the upper end of the final
/// bracket, so g(result) >= 0 up to rounding.
inline Real solve_n_log_power(const Real& C_in, unsigned k, const PrecisionContext& ctx) {
  if (k == 0) throw InvalidArgument("solve_n_log_power needs k >= 1");
  ScopedPrecision guard(ctx);
  const Real C = C_in;
  if (C <= 1) throw InvalidArgument("solve_n_log_power needs C > 1");
  auto g = [&](const Real& n) { return n - C * pow(log(n), Real(k)); };

  Real lo = C;
  Real hi = C * C;
  // Treat a residual at rounding level as zero so that exact fixed points on
  // the lower end (C = e, k = 1) still bracket.
  const Real slack = pow10(-static_cast<long>(ctx.digits) / 2) * lo;
  if (!(g(lo) <= slack && g(hi) > 0)) {
    throw InvalidArgument("no sign change of n - C (log n)^k on [C, C^2]");
  }
  const Real rel_tol("1e-6");
  for (int iter = 0; iter < 100000 && hi - lo > rel_tol * lo; ++iter) {
    const Real mid = (lo + hi) / 2;
    if (g(mid) > 0) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace pillai

#endif  // PILLAI_LOGFORM_BOUNDS_HPP
