#include "pillai/lattice.hpp"
#include "lattice_oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pillai;
using namespace pillai::test;

namespace {

::testing::AssertionResult is_lll_reduced(const LatticeBasis& b, const Rational& delta) {
  const std::string v = lll_violation(b, delta);
  if (v.empty()) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << v;
}

}  // namespace

TEST(Lll, IdentityUnchanged) {
  const auto id = LatticeBasis::identity(3);
  EXPECT_EQ(lll_reduce(id), id);
}

TEST(Lll, ThreeByThreeExample) {
  const auto b = basis({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
  const auto r = lll_reduce(b);
  EXPECT_EQ(abs(determinant(b)), 3);
  EXPECT_EQ(abs(determinant(r)), 3);
  EXPECT_TRUE(is_lll_reduced(r, Rational(99, 100)));
  EXPECT_EQ(norm2(r.rows[0]), brute_force_shortest(b, 5));
}

TEST(Lll, TwoByTwoExample) {
  const auto r = lll_reduce(basis({{1, 0}, {1000000, 1}}));
  bool found = false;
  for (const auto& row : r.rows) found = found || row == Row{0, 1} || row == Row{0, -1};
  EXPECT_TRUE(found);
  EXPECT_TRUE(is_lll_reduced(r, Rational(99, 100)));
}

TEST(Lll, RejectsSingularAndBadDelta) {
  EXPECT_THROW(lll_reduce(basis({{1, 2}, {2, 4}})), InvalidArgument);
  EXPECT_THROW(lll_reduce(basis({{1, 2, 3}, {1, 2}})), InvalidArgument);
  EXPECT_THROW(lll_reduce(LatticeBasis::identity(2), Rational(1, 4)), InvalidArgument);
  EXPECT_THROW(lll_reduce(LatticeBasis::identity(2), Rational(1)), InvalidArgument);
}

TEST(Lll, RandomBasesProperties) {
  // 200 random bases: |det| preserved, independent size-reduction and Lovasz
  // check, and |b1|^2 <= (delta - 1/4)^-(n-1) lambda1^2, which is <= 2^(n-1)
  // for delta = 0.99 and n = 3.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-50, 50);
  int done = 0;
  while (done < 200) {
    LatticeBasis b;
    b.rows.assign(3, Row(3));
    for (auto& row : b.rows)
      for (auto& x : row) x = entry(rng);
    const Int det = determinant(b);
    if (det == 0) continue;
    Int r2 = norm2(b.rows[0]);
    for (const auto& row : b.rows) r2 = std::min(r2, norm2(row));
    const int box = coefficient_box(b, r2);
    if (box > 40) continue;  // keep the enumeration small
    ++done;
    const Int shortest = brute_force_shortest(b, box);
    for (const Rational& delta : {Rational(99, 100), Rational(3, 4)}) {
      const auto r = lll_reduce(b, delta);
      ASSERT_EQ(abs(determinant(r)), abs(det));
      ASSERT_TRUE(is_lll_reduced(r, delta));
      const Rational factor = 1 / ((delta - Rational(1, 4)) * (delta - Rational(1, 4)));
      ASSERT_LE(Rational(norm2(r.rows[0])), factor * Rational(shortest));
    }
    ASSERT_LE(norm2(lll_reduce(b).rows[0]), 2 * shortest);
  }
}

TEST(GramSchmidt, Identity) {
  ScopedPrecision g(60u);
  EXPECT_EQ(gram_schmidt_min_norm(LatticeBasis::identity(3), make_context(50)), Real(1));
}

TEST(GramSchmidt, HandExample) {
  const auto b = basis({{2, 1}, {0, 3}});
  // b2* = (-6/5, 12/5), |b2*|^2 = 36/5 > |b1|^2
  EXPECT_EQ(gram_schmidt_min_squared_norm(b), Rational(5));
  EXPECT_EQ(gram_schmidt_min_squared_norm(basis({{2, 1}, {0, 2}})), Rational(16, 5));
  const auto ctx = make_context(50);
  ScopedPrecision g(ctx);
  EXPECT_NEAR(to_double(gram_schmidt_min_norm(b, ctx)), std::sqrt(5.0), 1e-14);
}

TEST(GramSchmidt, Homogeneous) {
  const auto b = basis({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
  auto s = b;
  for (auto& row : s.rows)
    for (auto& x : row) x *= 7;
  EXPECT_EQ(gram_schmidt_min_squared_norm(s), 49 * gram_schmidt_min_squared_norm(b));
}

TEST(GramSchmidt, Singular) { EXPECT_THROW(gram_schmidt_min_norm(basis({{1, 1}, {2, 2}})), InvalidArgument); }

class LinForm : public ::testing::Test {
 protected:
  ScopedPrecision guard{120u};
  std::array<Real, 3> logs235() { return {log(Real(2)), log(Real(3)), log(Real(5))}; }
};

TEST_F(LinForm, BasisConstruction) {
  const LinFormInstance inst{logs235(), Int(10), Int(1001)};
  const auto b = linform_basis(inst);
  EXPECT_EQ(b.rows[0], (Row{1, 0, 694}));   // 1001 log 2 = 693.8
  EXPECT_EQ(b.rows[1], (Row{0, 1, 1100}));  // 1001 log 3 = 1099.7
  EXPECT_EQ(b.rows[2], (Row{0, 0, 1611}));  // 1001 log 5 = 1611.0
}

TEST_F(LinForm, ReturnedBoundSatisfiesCondition) {
  const LinFormInstance inst{logs235(), Int(10), Int(10010)};
  const auto r = linform_lower_bound(inst);
  ASSERT_TRUE(r.bound);
  EXPECT_GT(*r.bound, 0);
  EXPECT_GT(r.c_squared, r.T * r.T + r.S);
  EXPECT_EQ(r.S, Rational(200));
  EXPECT_EQ(r.T, Rational(31, 2));
  // The bound is valid: no |x_i| <= 10 makes |x1 log 2 + x2 log 3 + x3 log 5| smaller.
  Real smallest = -1;
  for (int x1 = -10; x1 <= 10; ++x1)
    for (int x2 = -10; x2 <= 10; ++x2)
      for (int x3 = -10; x3 <= 10; ++x3) {
        if (x1 == 0 && x2 == 0 && x3 == 0) continue;
        const Real v = abs(x1 * log(Real(2)) + x2 * log(Real(3)) + x3 * log(Real(5)));
        if (smallest < 0 || v < smallest) smallest = v;
      }
  EXPECT_LT(*r.bound, smallest);
}

TEST_F(LinForm, ConditionFailureNearM3) {
  const LinFormInstance inst{logs235(), Int(10), Int(1001)};
  const auto r = linform_lower_bound(inst);
  EXPECT_FALSE(r.bound);
  EXPECT_LE(r.c_squared, r.T * r.T + r.S);
}

TEST_F(LinForm, SucceedsOnSecondAttempt) {
  const LinFormInstance inst{logs235(), Int(10), Int(1001)};
  const auto r = linform_lower_bound_with_retry(inst, Rational(99, 100), 10, 35);
  EXPECT_EQ(r.attempts, 2);
  EXPECT_EQ(r.C, Int(10010));
  EXPECT_EQ(r.bound, *linform_lower_bound({logs235(), Int(10), Int(10010)}).bound);
}

TEST_F(LinForm, DegenerateInstanceExhaustsRetries) {
  const Real l1 = log(Real(2)), l2 = log(Real(3));
  const LinFormInstance inst{{l1, l2, l1 + l2}, Int(10), Int(1001)};
  try {
    linform_lower_bound_with_retry(inst, Rational(99, 100), 10, 6);
    FAIL() << "expected a reduction failure";
  } catch (const ReductionFailure& e) {
    EXPECT_EQ(e.last_C(), Int(1001) * 100000);
  }
}

TEST_F(LinForm, HomogeneousScaling) {
  const auto l = logs235();
  const LinFormInstance a{l, Int(10), Int(20020)};
  const LinFormInstance b{{2 * l[0], 2 * l[1], 2 * l[2]}, Int(10), Int(10010)};
  EXPECT_EQ(linform_basis(a), linform_basis(b));
}

TEST_F(LinForm, InvalidInstances) {
  EXPECT_THROW(linform_lower_bound({logs235(), Int(0), Int(10)}), InvalidArgument);
  EXPECT_THROW(linform_lower_bound({logs235(), Int(10), Int(1000)}), InvalidArgument);
  EXPECT_THROW(linform_lower_bound_with_retry({logs235(), Int(10), Int(1001)}, Rational(99, 100), 1), InvalidArgument);
  EXPECT_THROW(linform_lower_bound_with_retry({logs235(), Int(10), Int(1001)}, Rational(99, 100), 10, 0),
               InvalidArgument);
}

TEST(LinFormPrecision, RoundingNeedsEnoughDigits) {
  std::array<Real, 3> logs;
  {
    ScopedPrecision low(30u);
    logs = {log(Real(2)), log(Real(3)), log(Real(5))};
  }
  ScopedPrecision g(30u);
  const Int C = int_pow10(40);
  EXPECT_THROW(linform_lower_bound({logs, Int(1000), C}), PrecisionFailure);
}

TEST(LinFormStepB, FirstRoundInstance) {
  const auto& c = pillai::test::constants2000();
  ScopedPrecision g(c.ctx);
  const Int n1 = Int(5) * int_pow10(80);
  const Int M = n1 * n1;
  const Int C = int_pow10(485);
  ASSERT_GT(C, M * M * M);
  const LinFormInstance inst{{c.log_a, c.log_alpha, log(c.alpha - 1)}, M, C};
  const auto r = linform_lower_bound_with_retry(inst);
  EXPECT_GT(r.bound, 0);
  EXPECT_LE(r.attempts, 3);
  EXPECT_GT(r.bound, Real("1e-330"));
  EXPECT_LT(r.bound, Real("1e-320"));
}
