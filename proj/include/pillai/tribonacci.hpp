#ifndef PILLAI_TRIBONACCI_HPP
#define PILLAI_TRIBONACCI_HPP

#include "pillai/hp_arith.hpp"

#include <cmath>
#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace pillai {

/// Memoized T_1 = T_2 = 1, T_3 = 2, T_n = T_{n-1} + T_{n-2} + T_{n-3}.
/// Lookups take a shared lock; growing the cache is serialized.
class TriboSequence {
 public:
  TriboSequence() : cache_{Int(1), Int(1), Int(2)} {}

  Int at(std::size_t n) const {
    if (n == 0) throw InvalidArgument("Tribonacci index starts at 1");
    {
      std::shared_lock lock(mutex_);
      if (n <= cache_.size()) return cache_[n - 1];
    }
    std::unique_lock lock(mutex_);
    while (cache_.size() < n) {
      const std::size_t k = cache_.size();
      cache_.push_back(cache_[k - 1] + cache_[k - 2] + cache_[k - 3]);
    }
    return cache_[n - 1];
  }

  /// T_1 .. T_n by value.
  std::vector<Int> prefix(std::size_t n) const {
    if (n > 0) at(n);
    std::shared_lock lock(mutex_);
    return {cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(n)};
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::vector<Int> cache_;
};

inline const TriboSequence& shared_tribonacci() {
  static const TriboSequence seq;
  return seq;
}

inline Int tribonacci(std::size_t n) { return shared_tribonacci().at(n); }

/// Decimal digits needed so that |T_n - a alpha^n| is resolved below
/// 0.52 * 0.74^n: log10(T_n) + n*log10(1/0.74) plus slack.
inline unsigned binet_required_digits(std::size_t n) {
  return static_cast<unsigned>(std::ceil(0.4 * static_cast<double>(n))) + 10;
}

/// |T_n - a alpha^n|.
inline Real binet_error(std::size_t n, const AlgebraicConstants& c) {
  if (n == 0) throw InvalidArgument("Tribonacci index starts at 1");
  if (c.ctx.digits < binet_required_digits(n)) {
    throw PrecisionFailure("binet_error(" + std::to_string(n) + ") needs at least " +
                           std::to_string(binet_required_digits(n)) + " digits, context has " +
                           std::to_string(c.ctx.digits));
  }
  ScopedPrecision guard(c.ctx);
  return abs(to_real(tribonacci(n)) - c.a * pow(c.alpha, Real(n)));
}

}  // namespace pillai

#endif  // PILLAI_TRIBONACCI_HPP
