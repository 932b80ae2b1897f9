#ifndef PILLAI_LATTICE_HPP
#define PILLAI_LATTICE_HPP

// Exact lattice reduction for small dimensions and the LLL-based lower bound
// for |x1 log g1 + x2 log g2 + x3 log g3| with |x_i| <= M.
//
// Basis vectors are rows. The reduction is the integral LLL variant that keeps
// the Gram determinants d_i and the scaled coefficients lambda_ij = d_j mu_ij
// as integers, so no rational arithmetic is needed inside the main loop.

#include "pillai/hp_arith.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pillai {

/// All linear-form retries failed; carries the last scaling constant tried.
class ReductionFailure : public std::runtime_error {
 public:
  ReductionFailure(const std::string& what, Int last_C) : std::runtime_error(what), last_C_(std::move(last_C)) {}
  const Int& last_C() const { return last_C_; }

 private:
  Int last_C_;
};

struct LatticeBasis {
  std::vector<std::vector<Int>> rows;

  std::size_t dim() const { return rows.size(); }

  static LatticeBasis identity(std::size_t n) {
    LatticeBasis out;
    out.rows.assign(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) out.rows[i][i] = 1;
    return out;
  }

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

inline Int dot(const std::vector<Int>& x, const std::vector<Int>& y) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// Fraction-free (Bareiss) determinant.
inline Int determinant(const LatticeBasis& basis) {
  const std::size_t n = basis.dim();
  if (n == 0) return Int(1);
  std::vector<std::vector<Int>> m = basis.rows;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return Int(0);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace detail {

inline void require_square_nonsingular(const LatticeBasis& basis) {
  const std::size_t n = basis.dim();
  if (n < 2) throw InvalidArgument("lattice basis needs dimension >= 2");
  for (const auto& row : basis.rows) {
    if (row.size() != n) throw InvalidArgument("lattice basis must be square");
  }
  if (determinant(basis) == 0) throw InvalidArgument("lattice basis is singular");
}

/// Nearest integer to num/den for den > 0, ties rounded up.
inline Int round_div(const Int& num, const Int& den) {
  Int twice = 2 * num + den;
  Int den2 = 2 * den;
  Int q = twice / den2;
  if (twice % den2 != 0 && twice < 0) q -= 1;  // floor for negatives
  return q;
}

}  // namespace detail

/// LLL-reduces the rows of `basis` with Lovasz parameter delta in (1/4, 1).
/// The result is size-reduced (|mu_ij| <= 1/2) and satisfies
/// B_k >= (delta - mu_{k,k-1}^2) B_{k-1}.
inline LatticeBasis lll_reduce(const LatticeBasis& basis, const Rational& delta = Rational(99, 100)) {
  detail::require_square_nonsingular(basis);
  if (!(delta > Rational(1, 4) && delta < 1)) throw InvalidArgument("LLL delta must lie in (1/4, 1)");
  const Int dp = mp::numerator(delta);
  const Int dq = mp::denominator(delta);

  auto b = basis.rows;
  const std::size_t n = b.size();
  // 1-based bookkeeping: d[0] = 1, d[i] = Gram determinant of b_1..b_i.
  std::vector<Int> d(n + 1, Int(0));
  std::vector<std::vector<Int>> lam(n + 1, std::vector<Int>(n + 1, Int(0)));
  auto vec = [&](std::size_t i) -> std::vector<Int>& { return b[i - 1]; };

  d[0] = 1;
  d[1] = dot(vec(1), vec(1));
  std::size_t k = 2;
  std::size_t k_max = 1;

  auto red = [&](std::size_t kk, std::size_t l) {
    if (2 * abs(lam[kk][l]) <= d[l]) return;
    const Int r = detail::round_div(lam[kk][l], d[l]);
    auto& bk = vec(kk);
    const auto& bl = vec(l);
    for (std::size_t c = 0; c < n; ++c) bk[c] -= r * bl[c];
    lam[kk][l] -= r * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= r * lam[l][i];
  };

  auto swap_step = [&](std::size_t kk) {
    std::swap(vec(kk), vec(kk - 1));
    for (std::size_t j = 1; j + 2 <= kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    const Int l = lam[kk][kk - 1];
    const Int B = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (std::size_t i = kk + 1; i <= k_max; ++i) {
      const Int t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (B * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = B;
  };

  while (k <= n) {
    if (k > k_max) {
      k_max = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Int u = dot(vec(k), vec(j));
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) {
          lam[k][j] = u;
        } else {
          if (u == 0) throw InvalidArgument("lattice basis is singular");
          d[k] = u;
        }
      }
    }
    red(k, k - 1);
    if (dq * d[k] * d[k - 2] < dp * d[k - 1] * d[k - 1] - dq * lam[k][k - 1] * lam[k][k - 1]) {
      swap_step(k);
      if (k > 2) --k;
      continue;
    }
    for (std::size_t l = k - 1; l-- > 1;) red(k, l);
    ++k;
  }
  return LatticeBasis{std::move(b)};
}

/// Squared norms of the (unnormalized) Gram-Schmidt vectors, exactly.
inline std::vector<Rational> gram_schmidt_squared_norms(const LatticeBasis& basis) {
  detail::require_square_nonsingular(basis);
  const std::size_t n = basis.dim();
  std::vector<std::vector<Rational>> star(n);
  std::vector<Rational> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(basis.rows[i].begin(), basis.rows[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      Rational num = 0;
      for (std::size_t c = 0; c < n; ++c) num += Rational(basis.rows[i][c]) * star[j][c];
      const Rational mu = num / norms[j];
      for (std::size_t c = 0; c < n; ++c) v[c] -= mu * star[j][c];
    }
    Rational sq = 0;
    for (const auto& x : v) sq += x * x;
    norms[i] = sq;
    star[i] = std::move(v);
  }
  return norms;
}

inline Rational gram_schmidt_min_squared_norm(const LatticeBasis& basis) {
  const auto norms = gram_schmidt_squared_norms(basis);
  Rational best = norms.front();
  for (const auto& x : norms) {
    if (x < best) best = x;
  }
  return best;
}

/// Smallest Euclidean norm among the Gram-Schmidt vectors, rounded to `ctx`.
inline Real gram_schmidt_min_norm(const LatticeBasis& basis, const PrecisionContext& ctx = {}) {
  const Rational sq = gram_schmidt_min_squared_norm(basis);
  ScopedPrecision guard(ctx);
  return sqrt(to_real(sq));
}

// ---------------------------------------------------------------------------
// Lower bound for a three-term linear form in logarithms

struct LinFormInstance {
  std::array<Real, 3> log_gammas;
  Int M;  // |x_i| <= M
  Int C;  // scaling, C > M^3
};

struct LinFormResult {
  std::optional<Real> bound;  // set iff c^2 > T^2 + S
  Rational c_squared;
  Rational T;  // (1 + 3M) / 2
  Rational S;  // 2 M^2
  Int C;
  LatticeBasis reduced;

  bool condition_holds() const { return c_squared > T * T + S; }
};

namespace detail {

/// Decimal digits carried by a Real.
inline long real_digits(const Real& x) { return static_cast<long>(x.precision()); }

/// [C * log_gamma], refusing to round when the value is within the working
/// error of a half-integer. Runs at the current default precision.
inline Int certified_round(const Int& C, const Real& log_gamma) {
  const Real x = to_real(C) * log_gamma;
  const Real error = (abs(x) + 1) * pow10(-(real_digits(log_gamma) - 5));
  const Real shifted = x + Real(0.5);
  const Real frac = shifted - to_real(floor_to_int(shifted));
  if (error >= Real(1) / 4 || frac <= error || Real(1) - frac <= error) {
    throw PrecisionFailure("precision of the logarithms is too low to round C*log(gamma) at C ~ 10^" +
                           std::to_string(C.str().size() - 1));
  }
  return floor_to_int(shifted);
}

}  // namespace detail

inline LatticeBasis linform_basis(const LinFormInstance& inst) {
  LatticeBasis basis;
  basis.rows = {
      {Int(1), Int(0), detail::certified_round(inst.C, inst.log_gammas[0])},
      {Int(0), Int(1), detail::certified_round(inst.C, inst.log_gammas[1])},
      {Int(0), Int(0), detail::certified_round(inst.C, inst.log_gammas[2])},
  };
  return basis;
}

/// If c^2 > T^2 + S, |Lambda| > (sqrt(c^2 - S) - T) / C where c is the
/// smallest Gram-Schmidt norm of the reduced basis of linform_basis(inst).
/// A vanishing third entry makes the lattice singular; that is reported as a
/// failed condition. Reals are produced at the current default precision.
inline LinFormResult linform_lower_bound(const LinFormInstance& inst, const Rational& delta = Rational(99, 100)) {
  if (inst.M < 1) throw InvalidArgument("linear form bound needs M >= 1");
  if (inst.C <= inst.M * inst.M * inst.M) throw InvalidArgument("linear form bound needs C > M^3");

  LinFormResult out;
  out.C = inst.C;
  out.S = Rational(2 * inst.M * inst.M);
  out.T = Rational(1 + 3 * inst.M, Int(2));

  const LatticeBasis basis = linform_basis(inst);
  if (basis.rows[2][2] == 0) {
    out.c_squared = 0;
    return out;
  }
  out.reduced = lll_reduce(basis, delta);
  out.c_squared = gram_schmidt_min_squared_norm(out.reduced);
  if (out.condition_holds()) {
    out.bound = (sqrt(to_real(out.c_squared - out.S)) - to_real(out.T)) / to_real(inst.C);
  }
  return out;
}

struct LinFormRetryResult {
  Real bound;
  Int C;         // the scaling that succeeded
  int attempts;  // 1 = succeeded with the initial C
};

/// Tries C, C*growth, C*growth^2, ... for at most `max_attempts` attempts.
inline LinFormRetryResult linform_lower_bound_with_retry(LinFormInstance inst, const Rational& delta = Rational(99, 100),
                                                         unsigned growth = 10, int max_attempts = 35) {
  if (growth < 2) throw InvalidArgument("C growth factor must be at least 2");
  if (max_attempts < 1) throw InvalidArgument("max retries must be at least 1");
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    LinFormResult r = linform_lower_bound(inst, delta);
    if (r.bound) return {*r.bound, inst.C, attempt};
    if (attempt < max_attempts) inst.C *= growth;
  }
  throw ReductionFailure("LLL lower bound failed after " + std::to_string(max_attempts) + " attempts", inst.C);
}

}  // namespace pillai

#endif  // PILLAI_LATTICE_HPP
