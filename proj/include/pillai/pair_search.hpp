#ifndef PILLAI_PAIR_SEARCH_HPP
#define PILLAI_PAIR_SEARCH_HPP

// Exhaustive search for T_{n1} - T_{n2} = b^{m1} - b^{m2} with b >= 2,
// m1 > m2 >= 1 and 2 <= n2 < n1 <= n_max.
//
// Writing x = m2, y = m1 - m2 and s = x + y, f(b) = b^x (b^y - 1) is strictly
// increasing in b and satisfies (b-1)^s <= f(b) < b^s. For a difference N the
// only candidate base for a given s is therefore floor(N^(1/s)) + 1, and it is
// shared by every split of s into x + y.
//
// A base b = r^j with j >= 2 only restates a solution in base r with the
// exponents multiplied by j, so by default such bases are skipped and every
// equation is reported once, in its primitive base.

#include "pillai/hp_arith.hpp"
#include "pillai/tribonacci.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <ostream>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace pillai {

struct SolutionRecord {
  int n1 = 0;
  int n2 = 0;
  Int b;
  int m1 = 0;
  int m2 = 0;
  Int c;  // T_{n1} - b^{m1} = T_{n2} - b^{m2}

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

/// Lexicographic by (n1, n2, b, m2).
inline bool record_order(const SolutionRecord& x, const SolutionRecord& y) {
  return std::tie(x.n1, x.n2, x.b, x.m2) < std::tie(y.n1, y.n2, y.b, y.m2);
}

/// Exact re-validation of both defining identities and the index ranges.
inline bool is_valid(const SolutionRecord& r) {
  if (!(r.n2 >= 2 && r.n1 > r.n2 && r.m2 >= 1 && r.m1 > r.m2 && r.b >= 2)) return false;
  const Int t1 = tribonacci(static_cast<std::size_t>(r.n1));
  const Int t2 = tribonacci(static_cast<std::size_t>(r.n2));
  const Int p1 = int_pow(r.b, static_cast<unsigned>(r.m1));
  const Int p2 = int_pow(r.b, static_cast<unsigned>(r.m2));
  return t1 - t2 == p1 - p2 && r.c == t1 - p1 && r.c == t2 - p2;
}

struct MultiSolutionGroup {
  Int b;
  Int c;
  std::vector<std::pair<int, int>> solutions;  // (n, m), descending by n

  bool has_three_or_more() const { return solutions.size() >= 3; }
};

/// True iff b = r^j for some integers r >= 2, j >= 2.
inline bool is_perfect_power(const Int& b) {
  return b >= 4 && mpz_perfect_power_p(b.backend().data()) != 0;
}

/// f(b) = b^x (b^y - 1).
inline Int power_difference(const Int& b, unsigned x, unsigned y) {
  return int_pow(b, x) * (int_pow(b, y) - 1);
}

/// The scan visits (x, y) only when 2^(x+y-1) <= N; otherwise f(2) > N already.
inline bool exponent_pair_in_range(const Int& N, unsigned x, unsigned y) {
  return x >= 1 && y >= 1 && int_pow(Int(2), x + y - 1) <= N;
}

/// The unique b >= 2 with b^x (b^y - 1) = N, found by binary search on the
/// monotone f over [max(2, floor(N^(1/(x+y)))), floor(N^(1/x)) + 1].
inline std::optional<Int> solve_power_difference(const Int& N, unsigned x, unsigned y) {
  if (N < 1) throw InvalidArgument("solve_power_difference needs N >= 1");
  if (x == 0 || y == 0) throw InvalidArgument("solve_power_difference needs x, y >= 1");
  if (!exponent_pair_in_range(N, x, y)) return std::nullopt;
  Int lo = integer_root(N, x + y);
  if (lo < 2) lo = 2;
  Int hi = integer_root(N, x) + 1;
  while (lo <= hi) {
    const Int mid = (lo + hi) / 2;
    const Int f = power_difference(mid, x, y);
    if (f == N) return mid;
    if (f < N) lo = mid + 1; else hi = mid - 1;
  }
  return std::nullopt;
}

namespace detail {

/// All representations of N = T_{n1} - T_{n2}, ordered by (b, m2).
inline void representations_of(int n1, int n2, const Int& t1, const Int& t2, bool primitive_only,
                                std::vector<SolutionRecord>& out) {
  const Int N = t1 - t2;
  if (N < 2) return;
  const unsigned s_max = floor_log2(N) + 1;  // 2^(s-1) <= N
  std::vector<SolutionRecord> local;
  for (unsigned s = 2; s <= s_max; ++s) {
    const Int b = integer_root(N, s) + 1;
    Int rest = int_pow(b, s) - N;  // must equal b^x with 1 <= x <= s-1
    unsigned x = 0;
    while (rest > 1 && rest % b == 0) {
      rest /= b;
      ++x;
    }
    if (rest != 1 || x < 1 || x >= s) continue;
    if (primitive_only && is_perfect_power(b)) continue;
    SolutionRecord r;
    r.n1 = n1;
    r.n2 = n2;
    r.b = b;
    r.m2 = static_cast<int>(x);
    r.m1 = static_cast<int>(s);
    r.c = t2 - int_pow(b, x);
    local.push_back(std::move(r));
  }
  std::sort(local.begin(), local.end(), record_order);
  for (auto& r : local) out.push_back(std::move(r));
}

}  // namespace detail

/// Every representation with 2 <= n2 < n1 <= n_max (inclusive), sorted by
/// (n1, n2, b, m2). Work is split over n1 across `threads` workers; the
/// merged result does not depend on the schedule.
inline std::vector<SolutionRecord> find_representations(int n_max, unsigned threads = 0,
                                                        bool primitive_only = true) {
  if (n_max < 3) throw InvalidArgument("find_representations needs n_max >= 3");
  const std::vector<Int> t = shared_tribonacci().prefix(static_cast<std::size_t>(n_max));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<std::vector<SolutionRecord>> per_n1(static_cast<std::size_t>(n_max) + 1);
  std::atomic<int> next{3};
  auto worker = [&] {
    for (int n1 = next++; n1 <= n_max; n1 = next++) {
      auto& bucket = per_n1[static_cast<std::size_t>(n1)];
      for (int n2 = 2; n2 < n1; ++n2) {
        detail::representations_of(n1, n2, t[static_cast<std::size_t>(n1 - 1)],
                                   t[static_cast<std::size_t>(n2 - 1)], primitive_only, bucket);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<SolutionRecord> out;
  for (auto& bucket : per_n1) {
    for (auto& r : bucket) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), record_order);
  return out;
}

/// Groups records on identical (b, c) and lists the distinct (n, m) pairs.
inline std::vector<MultiSolutionGroup> detect_multi_solutions(const std::vector<SolutionRecord>& records) {
  std::map<std::pair<Int, Int>, std::vector<std::pair<int, int>>> groups;
  for (const auto& r : records) {
    auto& sols = groups[{r.b, r.c}];
    sols.emplace_back(r.n1, r.m1);
    sols.emplace_back(r.n2, r.m2);
  }
  std::vector<MultiSolutionGroup> out;
  for (auto& [key, sols] : groups) {
    std::sort(sols.begin(), sols.end(), std::greater<>());
    sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
    out.push_back({key.first, key.second, std::move(sols)});
  }
  return out;
}

inline constexpr int kOracleMaxN = 30;
inline constexpr int kOracleMaxB = 1000;
inline constexpr int kOracleMaxM = 20;

/// Independent nested-loop enumeration for small domains: every b <= b_max,
/// m2 < m1 <= m_max and every index pair, compared exactly. Stops increasing
/// m1 once b^m1 - b^m2 passes the largest possible difference.
inline std::vector<SolutionRecord> brute_force_oracle(int n_max, int b_max, int m_max, bool primitive_only = true) {
  if (n_max > kOracleMaxN || b_max > kOracleMaxB || m_max > kOracleMaxM) {
    throw InvalidArgument("brute_force_oracle domain too large (limits n<=30, b<=1000, m<=20)");
  }
  std::vector<SolutionRecord> out;
  if (n_max < 3 || b_max < 2 || m_max < 2) return out;

  std::vector<Int> t(static_cast<std::size_t>(n_max) + 1);
  for (int n = 1; n <= n_max; ++n) t[static_cast<std::size_t>(n)] = tribonacci(static_cast<std::size_t>(n));
  const Int max_diff = t[static_cast<std::size_t>(n_max)] - t[2];

  // Sieve of bases that are powers of a smaller base.
  std::vector<bool> power_base(static_cast<std::size_t>(b_max) + 1, false);
  for (long r = 2; r * r <= b_max; ++r) {
    for (long q = r * r; q <= b_max; q *= r) power_base[static_cast<std::size_t>(q)] = true;
  }

  for (int b = 2; b <= b_max; ++b) {
    if (primitive_only && power_base[static_cast<std::size_t>(b)]) continue;
    std::vector<Int> pw(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) pw[static_cast<std::size_t>(m)] = int_pow(Int(b), static_cast<unsigned>(m));
    for (int m2 = 1; m2 < m_max; ++m2) {
      for (int m1 = m2 + 1; m1 <= m_max; ++m1) {
        const Int& p1 = pw[static_cast<std::size_t>(m1)];
        const Int& p2 = pw[static_cast<std::size_t>(m2)];
        if (p1 - p2 > max_diff) break;
        for (int n1 = 3; n1 <= n_max; ++n1) {
          for (int n2 = 2; n2 < n1; ++n2) {
            if (t[static_cast<std::size_t>(n1)] - p1 == t[static_cast<std::size_t>(n2)] - p2) {
              out.push_back({n1, n2, Int(b), m1, m2, t[static_cast<std::size_t>(n2)] - p2});
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), record_order);
  return out;
}

/// CSV with header n1,n2,b,m1,m2,c.
inline void write_csv(std::ostream& os, const std::vector<SolutionRecord>& records) {
  os << "n1,n2,b,m1,m2,c\n";
  for (const auto& r : records) {
    os << r.n1 << ',' << r.n2 << ',' << r.b << ',' << r.m1 << ',' << r.m2 << ',' << r.c << '\n';
  }
}

}  // namespace pillai

#endif  // PILLAI_PAIR_SEARCH_HPP
