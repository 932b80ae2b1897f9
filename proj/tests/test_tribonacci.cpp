#include "pillai/tribonacci.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <thread>
#include <vector>

using namespace pillai;
using pillai::test::constants2000;

TEST(Tribonacci, InitialValues) {
  EXPECT_EQ(tribonacci(1), 1);
  EXPECT_EQ(tribonacci(2), 1);
  EXPECT_EQ(tribonacci(3), 2);
}

TEST(Tribonacci, KnownValues) {
  EXPECT_EQ(tribonacci(4), 4);
  EXPECT_EQ(tribonacci(8), 44);
  EXPECT_EQ(tribonacci(12), 504);
  EXPECT_EQ(tribonacci(23), 410744);
  EXPECT_EQ(tribonacci(23) - tribonacci(12), Int(641) * 640);
}

TEST(Tribonacci, RecurrenceAgainstIndependentLoop) {
  Int x = 1, y = 1, z = 2;  // T1, T2, T3
  for (std::size_t n = 4; n <= 400; ++n) {
    const Int next = x + y + z;
    x = y;
    y = z;
    z = next;
    ASSERT_EQ(tribonacci(n), z) << n;
  }
}

TEST(Tribonacci, ZeroRejected) { EXPECT_THROW(tribonacci(0), InvalidArgument); }

TEST(Tribonacci, StrictlyIncreasingFromThree) {
  for (std::size_t n = 3; n < 500; ++n) EXPECT_LT(tribonacci(n), tribonacci(n + 1)) << n;
}

TEST(Tribonacci, PrefixMatchesPointQueries) {
  const auto p = shared_tribonacci().prefix(60);
  ASSERT_EQ(p.size(), 60u);
  for (std::size_t n = 1; n <= 60; ++n) EXPECT_EQ(p[n - 1], tribonacci(n));
}

TEST(Tribonacci, ConcurrentReadersAgree) {
  TriboSequence seq;
  std::vector<Int> got(8);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < got.size(); ++i) {
      pool.emplace_back([&, i] { got[i] = seq.at(300 + i); });
    }
  }
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], tribonacci(300 + i));
}

TEST(Binet, FirstIndex) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  EXPECT_LE(binet_error(1, c), Real("0.52") * Real("0.74"));
}

TEST(Binet, FiftyAndHundredFifty) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  EXPECT_LE(binet_error(50, c), Real("0.52") * pow(Real("0.74"), Real(50)));
  const Real e150 = binet_error(150, c);
  EXPECT_LE(e150, Real("0.52") * pow(Real("0.74"), Real(150)));
  EXPECT_LT(e150, pow10(-19));
}

TEST(Binet, TwoHundredDigitContextAtN150) {
  const auto c = compute_constants(make_context(200));
  ScopedPrecision g(c.ctx);
  EXPECT_LE(binet_error(150, c), Real("0.52") * pow(Real("0.74"), Real(150)));
}

TEST(Binet, BoundHoldsUpTo500) {
  const auto& c = constants2000();
  ScopedPrecision g(c.ctx);
  for (std::size_t n = 1; n <= 500; ++n) {
    ASSERT_LE(binet_error(n, c), Real("0.52") * pow(Real("0.74"), Real(n))) << n;
  }
}

TEST(Binet, InsufficientPrecisionRejected) {
  const auto c = compute_constants(make_context(50));
  EXPECT_THROW(binet_error(500, c), PrecisionFailure);
  EXPECT_THROW(binet_error(0, c), InvalidArgument);
}
