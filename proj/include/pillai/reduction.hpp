#ifndef PILLAI_REDUCTION_HPP
#define PILLAI_REDUCTION_HPP

// Reduction of the bound on n1: a continued-fraction step (A), an LLL step
// over every admissible n2 - n3 (B), the log b bound that follows (C), and the
// new bound on n1 from n1 <= C102 (log b)^2 (log n1)^2 (D). The driver
// repeats A..D while the bound keeps improving.

#include "pillai/hp_arith.hpp"
#include "pillai/lattice.hpp"
#include "pillai/logform_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pillai {

struct Convergent {
  Int p;
  Int q;
  std::size_t index = 0;
};

/// Convergents of x up to and including the first with q >= q_min.
/// Partial quotients come from the floor/reciprocal iteration; the working
/// precision must leave 10 q_min^2 below 10^(digits - guard).
inline std::vector<Convergent> continued_fraction_convergents(const Real& x_in, const Int& q_min,
                                                              const PrecisionContext& ctx) {
  if (q_min < 1) throw InvalidArgument("q_min must be at least 1");
  const Int needed = 10 * q_min * q_min;
  if (ctx.digits <= ctx.guard_digits ||
      needed >= int_pow10(ctx.digits - ctx.guard_digits)) {
    throw PrecisionFailure("continued fraction up to q >= " + q_min.str() +
                           " needs a larger context than " + std::to_string(ctx.digits) + " digits");
  }
  ScopedPrecision guard(ctx);
  Real x = x_in;
  Int p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  Int a = floor_to_int(x);
  Int p = a, q = 1;
  std::vector<Convergent> out{{p, q, 0}};
  std::size_t index = 0;
  const Real negligible = pow10(-static_cast<long>(ctx.digits - ctx.guard_digits));
  while (q < q_min) {
    const Real frac = x - to_real(a);
    if (frac <= negligible) throw PrecisionFailure("continued fraction terminated: x is rational at working precision");
    x = 1 / frac;
    a = floor_to_int(x);
    const Int p_next = a * p + p_prev;
    const Int q_next = a * q + q_prev;
    // p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1)
    const Int det = p_next * q - p * q_next;
    if (det != 1 && det != -1) throw PrecisionFailure("convergent determinant identity violated");
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    ++index;
    out.push_back({p, q, index});
  }
  return out;
}

inline Convergent continued_fraction_first_convergent(const Real& x, const Int& q_min, const PrecisionContext& ctx) {
  return continued_fraction_convergents(x, q_min, ctx).back();
}

// ---------------------------------------------------------------------------
// Bound state and per-step results

struct BoundState {
  Real n1_bound;
  std::optional<long> n1n2_max;
  std::optional<long> n2n3_max;
  std::optional<Real> logb_max;
};

/// Which quantity a case of the three-way split bounds.
enum class CaseQuantity { n1_minus_n2, n2_minus_n3, log_b };

struct CaseBound {
  CaseQuantity quantity;
  Real value;
};

struct StepAResult {
  Convergent convergent;
  Real delta;        // |p log alpha - q log a|
  Real lower_bound;  // delta / (20.6 n1)
  long n1n2_max = 0;
  long n2n3_max = 0;
  Real logb;  // -log(lower_bound)
  std::vector<CaseBound> cases;
  BoundState state;
};

struct StepBResult {
  Real min_bound;   // min over k of the LLL lower bound for |Lambda_4'|
  long argmin_k = 0;
  int max_attempts = 0;
  Real lower_bound; // min_bound / (18.8 n1)
  long n1n2_max = 0;
  Real logb;
  std::vector<CaseBound> cases;
  BoundState state;
};

struct StepTimings {
  double a = 0, b = 0, c = 0, d = 0;
};

struct RoundReport {
  int round_index = 0;
  Real n1_bound_in;
  StepAResult stepA;
  StepBResult stepB;
  Real stepC_logb;
  Real stepD_logb_max;
  Real stepD_n1_bound;  // root of n = C102 logb_max^2 (log n)^2
  Real n1_bound_next;   // rounded up; the input of the next round
  StepTimings timings;
};

struct ReductionOptions {
  Rational delta = Rational(99, 100);
  unsigned c_growth = 10;
  int max_retries = 35;
  unsigned threads = 0;            // 0 = hardware concurrency
  double min_improvement = 0.01;   // stop once a round gains less than this
  int round_up_digits = 2;         // significant digits kept for the next round; 0 keeps the raw bound
};

namespace detail {

inline Real as_real(std::string_view v) { return to_real(v); }

inline long floor_over_log_alpha(const Real& v, const AlgebraicConstants& consts) {
  return floor_to_int(v / consts.log_alpha).convert_to<long>();
}

}  // namespace detail

/// Continued-fraction step: the first convergent p/q of log a / log alpha with
/// q >= n1 bounds |Lambda_3'| from below by |p log alpha - q log a|.
inline StepAResult reduction_step_A(const BoundState& state, const AlgebraicConstants& consts,
                                    const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  StepAResult r;
  const Real x = consts.log_a / consts.log_alpha;
  r.convergent = continued_fraction_first_convergent(x, ceil_to_int(state.n1_bound), ctx);
  r.delta = abs(to_real(r.convergent.p) * consts.log_alpha - to_real(r.convergent.q) * consts.log_a);
  r.lower_bound = r.delta / (detail::as_real(proof_constants::kStepA_factor) * state.n1_bound);
  const Real neg_log = -log(r.lower_bound);
  r.n1n2_max = detail::floor_over_log_alpha(neg_log, consts);
  r.n2n3_max = r.n1n2_max;
  r.logb = neg_log;
  r.cases = {{CaseQuantity::n1_minus_n2, Real(r.n1n2_max)},
             {CaseQuantity::n2_minus_n3, Real(r.n2n3_max)},
             {CaseQuantity::log_b, r.logb}};
  r.state = state;
  r.state.n1n2_max = r.n1n2_max;
  r.state.n2n3_max = r.n2n3_max;
  r.state.logb_max = r.logb;
  return r;
}

struct StepBInstanceResult {
  Real bound;
  int attempts = 0;
};

/// LLL step for one k = n2 - n3 with logs (log a, log alpha, log(alpha^k - 1)).
inline StepBInstanceResult reduction_step_B_instance(long k, const Int& M, const Int& C_first,
                                                     const AlgebraicConstants& consts, const ReductionOptions& opt) {
  LinFormInstance inst;
  inst.log_gammas = {consts.log_a, consts.log_alpha, log(pow(consts.alpha, Real(k)) - 1)};
  inst.M = M;
  inst.C = C_first;
  const auto r = linform_lower_bound_with_retry(inst, opt.delta, opt.c_growth, opt.max_retries);
  return {r.bound, r.attempts};
}

/// Scaling constants for Step B: M = ceil(n1^2), C0 = 10^floor(3 log10 M),
/// first attempt C0 * growth (the first power of ten above M^3).
inline std::pair<Int, Int> step_B_scaling(const Real& n1_bound, unsigned growth) {
  const Int M = ceil_to_int(n1_bound * n1_bound);
  const long e = floor_to_int(3 * log10(to_real(M))).convert_to<long>();
  Int C = int_pow10(static_cast<unsigned>(e)) * growth;
  return {M, C};
}

inline StepBResult reduction_step_B(const BoundState& state, const AlgebraicConstants& consts,
                                    const PrecisionContext& ctx, const ReductionOptions& opt = {}) {
  if (!state.n2n3_max || *state.n2n3_max < 1) throw InvalidArgument("Step B needs the n2 - n3 bound from Step A");
  ScopedPrecision guard(ctx);
  const long k_max = *state.n2n3_max;
  const auto [M, C_first] = step_B_scaling(state.n1_bound, opt.c_growth);

  std::vector<std::optional<StepBInstanceResult>> results(static_cast<std::size_t>(k_max) + 1);
  std::atomic<long> next{1};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (long k = next++; k <= k_max; k = next++) {
      try {
        results[static_cast<std::size_t>(k)] = reduction_step_B_instance(k, M, C_first, consts, opt);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = k_max + 1;
      }
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, k_max));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  StepBResult r;
  r.min_bound = results[1]->bound;
  r.argmin_k = 1;
  for (long k = 1; k <= k_max; ++k) {
    const auto& res = *results[static_cast<std::size_t>(k)];
    if (res.bound < r.min_bound) {
      r.min_bound = res.bound;
      r.argmin_k = k;
    }
    r.max_attempts = std::max(r.max_attempts, res.attempts);
  }
  r.lower_bound = r.min_bound / (detail::as_real(proof_constants::kStepB_factor) * state.n1_bound);
  r.logb = -log(r.lower_bound);
  r.n1n2_max = detail::floor_over_log_alpha(r.logb, consts);
  r.cases = {{CaseQuantity::n1_minus_n2, Real(r.n1n2_max)}, {CaseQuantity::log_b, r.logb}};
  r.state = state;
  r.state.n1n2_max = r.n1n2_max;
  r.state.logb_max = state.logb_max ? max(*state.logb_max, r.logb) : r.logb;
  return r;
}

/// log b <= (n1 - n2) log alpha + 2.1.
inline Real reduction_step_C(long n1n2_max, const AlgebraicConstants& consts) {
  if (n1n2_max < 1) throw InvalidArgument("Step C needs n1 - n2 bound >= 1");
  ScopedPrecision guard(consts.ctx);
  return Real(n1n2_max) * consts.log_alpha + detail::as_real(proof_constants::kStepC_offset);
}

/// New bound on n1 from the largest log b candidate.
inline Real reduction_step_D(const std::vector<Real>& logb_candidates, const PrecisionContext& ctx) {
  if (logb_candidates.empty()) throw InvalidArgument("Step D needs at least one log b bound");
  ScopedPrecision guard(ctx);
  Real logb_max = logb_candidates.front();
  for (const auto& v : logb_candidates) logb_max = max(logb_max, v);
  const Real C = detail::as_real(proof_constants::kStepD_factor) * logb_max * logb_max;
  return solve_n_log_power(C, 2, ctx);
}

struct InitialBoundOptions {
  std::string C = std::string(proof_constants::kC107);
  unsigned k = proof_constants::kInitialBoundPower;
};

/// Largest n with n <= C107 (log n)^8.
inline Real compute_initial_bound(const AlgebraicConstants& consts, const PrecisionContext& ctx,
                                  const InitialBoundOptions& opt = {}) {
  (void)consts;
  ScopedPrecision guard(ctx);
  return solve_n_log_power(to_real(opt.C), opt.k, ctx);
}

struct ReductionRun {
  Real initial_bound;
  std::vector<RoundReport> rounds;
  bool stopped_early = false;
  std::optional<std::string> failure;  // message of the error that ended the run
  bool precision_failure = false;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Runs up to `rounds` rounds of Steps A..D, seeded with the initial bound.
/// Each round's Step D bound, rounded up to opt.round_up_digits significant
/// digits, seeds the next round; the driver stops after a round whose
/// propagated bound improves by less than opt.min_improvement. Errors end the
/// run but keep the completed rounds.
inline ReductionRun run_reduction(int rounds, const AlgebraicConstants& consts, const PrecisionContext& ctx,
                                  const ReductionOptions& opt = {}) {
  if (rounds < 1) throw InvalidArgument("run_reduction needs rounds >= 1");
  ScopedPrecision guard(ctx);
  ReductionRun run;
  run.initial_bound = compute_initial_bound(consts, ctx);
  Real bound = opt.round_up_digits > 0 ? round_up_significant(run.initial_bound, opt.round_up_digits)
                                       : run.initial_bound;
  using clock = std::chrono::steady_clock;
  try {
    for (int round = 1; round <= rounds; ++round) {
      RoundReport rep;
      rep.round_index = round;
      rep.n1_bound_in = bound;
      BoundState state{bound, std::nullopt, std::nullopt, std::nullopt};

      auto t0 = clock::now();
      rep.stepA = reduction_step_A(state, consts, ctx);
      rep.timings.a = detail::seconds_since(t0);

      t0 = clock::now();
      rep.stepB = reduction_step_B(rep.stepA.state, consts, ctx, opt);
      rep.timings.b = detail::seconds_since(t0);

      t0 = clock::now();
      rep.stepC_logb = reduction_step_C(rep.stepB.n1n2_max, consts);
      rep.timings.c = detail::seconds_since(t0);

      t0 = clock::now();
      rep.stepD_logb_max = max(max(rep.stepA.logb, rep.stepB.logb), rep.stepC_logb);
      rep.stepD_n1_bound = reduction_step_D({rep.stepA.logb, rep.stepB.logb, rep.stepC_logb}, ctx);
      rep.timings.d = detail::seconds_since(t0);

      rep.n1_bound_next = opt.round_up_digits > 0 ? round_up_significant(rep.stepD_n1_bound, opt.round_up_digits)
                                                  : rep.stepD_n1_bound;
      if (rep.n1_bound_next > bound) rep.n1_bound_next = bound;
      const Real improvement = (bound - rep.n1_bound_next) / bound;
      run.rounds.push_back(rep);
      bound = rep.n1_bound_next;
      if (improvement < Real(opt.min_improvement)) {
        run.stopped_early = round < rounds;
        break;
      }
    }
  } catch (const PrecisionFailure& e) {
    run.failure = e.what();
    run.precision_failure = true;
  } catch (const ReductionFailure& e) {
    run.failure = e.what();
  }
  return run;
}

/// The proven bounds after the last completed round.
struct FinalBounds {
  Real logb;
  Real n1;
};

inline FinalBounds final_bounds(const ReductionRun& run) {
  if (run.rounds.empty()) throw InvalidArgument("no completed reduction round");
  const auto& last = run.rounds.back();
  return {last.stepD_logb_max, last.stepD_n1_bound};
}

}  // namespace pillai

#endif  // PILLAI_REDUCTION_HPP
