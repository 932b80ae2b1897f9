#include "pillai/reduction.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace pillai;
using pillai::test::constants2000;
using pillai::test::to_double;

namespace {

const ReductionRun& four_rounds() {
  static const ReductionRun run = [] {
    const auto& c = constants2000();
    ScopedPrecision g(c.ctx);
    return run_reduction(4, c, c.ctx);
  }();
  return run;
}

BoundState state_with(const char* n1) { return {to_real(n1), std::nullopt, std::nullopt, std::nullopt}; }

long ceil_long(const Real& x) { return ceil_to_int(x).convert_to<long>(); }

}  // namespace

TEST(Convergents, GoldenRatio) {
  const auto ctx = make_context(60);
  ScopedPrecision g(ctx);
  const Real phi = (1 + sqrt(Real(5))) / 2;
  const auto cv = continued_fraction_first_convergent(phi, Int(10), ctx);
  EXPECT_EQ(cv.p, 21);
  EXPECT_EQ(cv.q, 13);
}

TEST(Convergents, Pi) {
  const auto ctx = make_context(60);
  ScopedPrecision g(ctx);
  const Real pi = 4 * atan(Real(1));
  const auto cv = continued_fraction_first_convergent(pi, Int(100), ctx);
  EXPECT_EQ(cv.p, 333);
  EXPECT_EQ(cv.q, 106);
  EXPECT_EQ(continued_fraction_first_convergent(pi, Int(107), ctx).q, 113);
}

TEST(Convergents, RandomRealsIdentities) {
  const auto ctx = make_context(200);
  ScopedPrecision g(ctx);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-1000000000L, 1000000000L);
  const Int q_min = int_pow10(40);
  for (int i = 0; i < 100; ++i) {
    const Real x = log(Real(std::abs(num(rng)) + 2)) * Real(num(rng)) / Real(1000000007);
    const auto all = continued_fraction_convergents(x, q_min, ctx);
    ASSERT_GE(all.back().q, q_min);
    for (std::size_t k = 0; k < all.size(); ++k) {
      const auto& c = all[k];
      ASSERT_EQ(gcd(c.p, c.q), 1);
      ASSERT_LT(abs(x - to_real(c.p) / to_real(c.q)), 1 / (to_real(c.q) * to_real(c.q)));
      if (k > 0) {
        const Int det = c.p * all[k - 1].q - all[k - 1].p * c.q;
        ASSERT_TRUE(det == 1 || det == -1);
      }
      if (k + 1 < all.size()) {
        ASSERT_LT(c.q, q_min);
      }
    }
  }
}

TEST(Convergents, PrecisionTooLow) {
  const auto ctx = make_context(60);
  ScopedPrecision g(ctx);
  EXPECT_THROW(continued_fraction_first_convergent(sqrt(Real(2)), int_pow10(30), ctx), PrecisionFailure);
  EXPECT_THROW(continued_fraction_first_convergent(sqrt(Real(2)), Int(0), ctx), InvalidArgument);
}

TEST(Convergents, RationalInputTerminates) {
  const auto ctx = make_context(60);
  ScopedPrecision g(ctx);
  EXPECT_THROW(continued_fraction_first_convergent(Real(3) / 8, Int(100), ctx), PrecisionFailure);
}

TEST(StepA, FirstRound) {
  const auto& c = constants2000();
  const auto r = reduction_step_A(state_with("5e80"), c, c.ctx);
  ScopedPrecision g(c.ctx);
  EXPECT_EQ(r.n1n2_max, 617);
  EXPECT_EQ(r.n2n3_max, 617);
  EXPECT_EQ(ceil_long(r.logb), 377);
  EXPECT_GE(r.convergent.q, Int(5) * int_pow10(80));
  EXPECT_GE(r.delta, Real("4.4e-82"));
  EXPECT_GE(r.lower_bound, Real("4.2e-164"));
  ASSERT_EQ(r.cases.size(), 3u);
  std::set<CaseQuantity> tags;
  for (const auto& cb : r.cases) tags.insert(cb.quantity);
  EXPECT_EQ(tags.size(), 3u);
  EXPECT_EQ(r.state.n2n3_max, 617);
}

TEST(StepA, SecondAndFourthRoundInputs) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  const auto r2 = reduction_step_A(state_with("5.3e37"), c, c.ctx);
  EXPECT_EQ(r2.n1n2_max, 292);
  EXPECT_EQ(ceil_long(r2.logb), 179);
  const auto r4 = reduction_step_A(state_with("1.1e37"), c, c.ctx);
  EXPECT_EQ(r4.n1n2_max, 288);
  EXPECT_EQ(ceil_long(r4.logb), 176);
}

TEST(StepA, Deterministic) {
  const auto& c = constants2000();
  const auto x = reduction_step_A(state_with("5e80"), c, c.ctx);
  const auto y = reduction_step_A(state_with("5e80"), c, c.ctx);
  EXPECT_EQ(x.convergent.p, y.convergent.p);
  EXPECT_EQ(x.convergent.q, y.convergent.q);
  EXPECT_EQ(x.delta, y.delta);
}

TEST(StepB, ScalingAboveMCubed) {
  ScopedPrecision g(200u);
  const auto [M, C] = step_B_scaling(Real("5e80"), 10);
  EXPECT_EQ(M, Int(25) * int_pow10(160));
  EXPECT_EQ(C, int_pow10(485));
  EXPECT_GT(C, M * M * M);
}

TEST(StepB, RequiresStepA) {
  const auto& c = constants2000();
  EXPECT_THROW(reduction_step_B(state_with("5e80"), c, c.ctx), InvalidArgument);
}

TEST(StepB, SecondRoundInput) {
  const auto& c = constants2000();
  const auto a = reduction_step_A(state_with("5.3e37"), c, c.ctx);
  const auto b = reduction_step_B(a.state, c, c.ctx);
  ScopedPrecision g(c.ctx);
  EXPECT_NEAR(b.n1n2_max, 729, 0.05 * 729);
  EXPECT_NEAR(ceil_long(b.logb), 445, 0.05 * 445);
  EXPECT_LE(b.max_attempts, 3);
}

TEST(StepB, ScheduleIndependent) {
  const auto& c = constants2000();
  const auto a = reduction_step_A(state_with("1.1e37"), c, c.ctx);
  ReductionOptions one, many;
  one.threads = 1;
  many.threads = 3;
  const auto x = reduction_step_B(a.state, c, c.ctx, one);
  const auto y = reduction_step_B(a.state, c, c.ctx, many);
  EXPECT_EQ(x.min_bound, y.min_bound);
  EXPECT_EQ(x.argmin_k, y.argmin_k);
  EXPECT_EQ(x.n1n2_max, y.n1n2_max);
  EXPECT_NEAR(x.n1n2_max, 715, 0.05 * 715);
  ScopedPrecision g(c.ctx);
  EXPECT_NEAR(ceil_long(x.logb), 437, 0.05 * 437);
}

TEST(StepC, Examples) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  EXPECT_LE(reduction_step_C(1539, c), Real(940));
  EXPECT_EQ(ceil_long(reduction_step_C(1539, c)), 940);
  EXPECT_EQ(ceil_long(reduction_step_C(729, c)), 447);
  EXPECT_NEAR(to_double(reduction_step_C(1, c)), 2.71, 0.005);
  EXPECT_THROW(reduction_step_C(0, c), InvalidArgument);
}

TEST(StepD, Examples) {
  const auto ctx = make_context(200);
  ScopedPrecision g(ctx);
  // 940 -> 5.20e37: the published 5.3e37 rounds 7.8e27 * 940^2 up to 6.9e33 first.
  const Real d940 = reduction_step_D({Real(940)}, ctx);
  EXPECT_NEAR(to_double(d940 / Real("1e37")), 5.3, 0.15);
  EXPECT_EQ(round_up_significant(reduction_step_D({Real(447)}, ctx), 2), Real("1.2e37"));
  EXPECT_EQ(round_up_significant(reduction_step_D({Real(438)}, ctx), 2), Real("1.1e37"));
  EXPECT_EQ(reduction_step_D({Real(100), Real(438), Real(200)}, ctx), reduction_step_D({Real(438)}, ctx));
  EXPECT_THROW(reduction_step_D({}, ctx), InvalidArgument);
}

TEST(InitialBound, Default) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  const Real n = compute_initial_bound(c, c.ctx);
  EXPECT_GE(n, Real("4.9e80"));
  EXPECT_LE(n, Real("5.1e80"));
}

TEST(InitialBound, RecomputedC107) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  const Real stated = compute_initial_bound(c, c.ctx);
  const Real audited = compute_initial_bound(c, c.ctx, {"3.44e62", 8});
  EXPECT_LT(audited, stated);
  EXPECT_GT(audited, Real("1e80"));
}

TEST(InitialBound, FixedPoint) {
  const auto c = compute_constants(make_context(100));
  ScopedPrecision g(c.ctx);
  const Real e = exp(Real(1));
  const Real n = compute_initial_bound(c, c.ctx, {e.str(120), 1});
  EXPECT_LT(abs(n - e), Real("1e-5"));
}

TEST(RunReduction, FourRoundsReachFinalBounds) {
  const auto& run = four_rounds();
  ASSERT_FALSE(run.failure);
  ASSERT_EQ(run.rounds.size(), 4u);
  ScopedPrecision g(constants2000().ctx);
  const auto fb = final_bounds(run);
  EXPECT_EQ(ceil_long(fb.logb), 438);
  EXPECT_EQ(round_up_significant(fb.n1, 2), Real("1.1e37"));
  EXPECT_GT(fb.n1, 150);
}

TEST(RunReduction, StepAMatchesEveryRound) {
  const auto& run = four_rounds();
  const long expected[4][3] = {{617, 617, 377}, {292, 292, 179}, {288, 288, 176}, {288, 288, 176}};
  ScopedPrecision g(constants2000().ctx);
  for (std::size_t i = 0; i < run.rounds.size(); ++i) {
    const auto& a = run.rounds[i].stepA;
    EXPECT_EQ(a.n1n2_max, expected[i][0]) << i;
    EXPECT_EQ(a.n2n3_max, expected[i][1]) << i;
    EXPECT_EQ(ceil_long(a.logb), expected[i][2]) << i;
  }
}

TEST(RunReduction, FirstRoundColumn) {
  const auto& r = four_rounds().rounds.front();
  ScopedPrecision g(constants2000().ctx);
  EXPECT_EQ(r.n1_bound_in, Real("5e80"));
  EXPECT_NEAR(r.stepB.n1n2_max, 1539, 0.05 * 1539);
  EXPECT_NEAR(ceil_long(r.stepB.logb), 939, 0.05 * 939);
  EXPECT_GE(r.stepB.min_bound, Real("1e-330"));
  EXPECT_LE(r.stepB.min_bound, Real("1e-320"));
  EXPECT_LE(r.stepB.max_attempts, 3);
  EXPECT_EQ(ceil_long(r.stepC_logb), 940);
  EXPECT_NEAR(to_double(r.stepD_n1_bound / Real("1e37")), 5.3, 0.15);
}

TEST(RunReduction, MonotoneRounds) {
  const auto& run = four_rounds();
  ScopedPrecision g(constants2000().ctx);
  for (std::size_t i = 0; i < run.rounds.size(); ++i) {
    const auto& r = run.rounds[i];
    EXPECT_LT(r.stepD_n1_bound, r.n1_bound_in);
    if (i > 0) {
      EXPECT_LT(r.stepD_n1_bound, run.rounds[i - 1].stepD_n1_bound);
      EXPECT_LE(r.stepD_logb_max, run.rounds[i - 1].stepD_logb_max);
      EXPECT_EQ(r.n1_bound_in, run.rounds[i - 1].n1_bound_next);
    }
  }
}

TEST(RunReduction, StabilizesAfterFourRounds) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  const auto run = run_reduction(10, c, c.ctx);
  EXPECT_EQ(run.rounds.size(), 4u);
  EXPECT_TRUE(run.stopped_early);
}

TEST(RunReduction, RejectsZeroRounds) {
  const auto& c = constants2000();
  EXPECT_THROW(run_reduction(0, c, c.ctx), InvalidArgument);
}

TEST(RunReduction, LowPrecisionKeepsPartialReport) {
  const auto c = compute_constants(make_context(100));
  ScopedPrecision g(c.ctx);
  const auto run = run_reduction(2, c, c.ctx);
  EXPECT_TRUE(run.failure);
  EXPECT_TRUE(run.precision_failure);
  EXPECT_TRUE(run.rounds.empty());
  EXPECT_THROW(final_bounds(run), InvalidArgument);
}

TEST(RunReduction, RetryExhaustionIsReported) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  ReductionOptions opt;
  opt.max_retries = 1;  // round-1 instances need up to three attempts
  const auto run = run_reduction(1, c, c.ctx, opt);
  EXPECT_TRUE(run.failure);
  EXPECT_FALSE(run.precision_failure);
}
