#ifndef PILLAI_HP_ARITH_HPP
#define PILLAI_HP_ARITH_HPP

// Arbitrary-precision scalar types, the precision context, and the algebraic
// constants attached to the Tribonacci polynomial x^3 - x^2 - x - 1.
//
// Reals are MPFR numbers whose precision is taken from the process-wide
// default at the moment a value is produced. Every computation in this
// library therefore runs inside a ScopedPrecision guard. The default is a
// single global in Boost.Multiprecision, so the guard must only be changed
// from the orchestrating thread; worker threads inherit whatever is active.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <ios>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pillai {

namespace mp = boost::multiprecision;

using Int = mp::mpz_int;
using Rational = mp::mpq_rational;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

// Boost 1.74 only provides min/max for expression-template numbers.
inline Real max(const Real& x, const Real& y) { return x < y ? y : x; }
inline Real min(const Real& x, const Real& y) { return y < x ? y : x; }

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the working precision cannot certify a result.
class PrecisionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kMinDigits = 50;
inline constexpr unsigned kDefaultDigits = 2000;
inline constexpr unsigned kDefaultGuardDigits = 20;
// 20 extra decimal digits are ~66.4 bits, covering the 64-bit margin over
// ceil(digits * log2(10)).
inline constexpr unsigned kBinaryMarginDigits = 20;

struct PrecisionContext {
  unsigned digits = kDefaultDigits;
  unsigned guard_digits = kDefaultGuardDigits;

  /// Decimal precision handed to MPFR.
  unsigned working_digits() const { return digits + kBinaryMarginDigits; }

  /// The context used to certify results of this one.
  PrecisionContext widened() const { return {digits + guard_digits, guard_digits}; }
};

inline PrecisionContext make_context(unsigned digits, unsigned guard_digits = kDefaultGuardDigits) {
  if (digits < kMinDigits) {
    throw InvalidArgument("precision context needs at least " + std::to_string(kMinDigits) +
                          " digits, got " + std::to_string(digits));
  }
  if (guard_digits == 0) {
    throw InvalidArgument("guard digits must be positive");
  }
  return {digits, guard_digits};
}

/// Sets the MPFR default precision for the lifetime of the guard. Leaves the
/// global untouched when it already holds the requested value.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned decimal_digits) : saved_(Real::default_precision()) {
    if (saved_ != decimal_digits) Real::default_precision(decimal_digits);
  }
  explicit ScopedPrecision(const PrecisionContext& ctx) : ScopedPrecision(ctx.working_digits()) {}
  ~ScopedPrecision() {
    if (Real::default_precision() != saved_) Real::default_precision(saved_);
  }

  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

// ---------------------------------------------------------------------------
// Conversions and small helpers

inline Real to_real(const Int& v) { return Real(v); }
inline Real to_real(const Rational& v) { return Real(v); }
inline Real to_real(std::string_view decimal) { return Real(std::string(decimal)); }

inline Int floor_to_int(const Real& x) {
  Int out;
  mpfr_get_z(out.backend().data(), x.backend().data(), MPFR_RNDD);
  return out;
}

inline Int ceil_to_int(const Real& x) {
  Int out;
  mpfr_get_z(out.backend().data(), x.backend().data(), MPFR_RNDU);
  return out;
}

/// floor(x + 1/2).
inline Int nearest_int(const Real& x) { return floor_to_int(x + Real(0.5)); }

inline Real pow10(long exponent) { return pow(Real(10), Real(exponent)); }

inline Int int_pow(const Int& base, unsigned exponent) { return mp::pow(base, exponent); }

inline Int int_pow10(unsigned exponent) { return mp::pow(Int(10), exponent); }

/// floor(n^(1/k)) for n >= 0.
inline Int integer_root(const Int& n, unsigned k) {
  if (n < 0) throw InvalidArgument("integer_root of a negative number");
  if (k == 0) throw InvalidArgument("integer_root with k = 0");
  Int out;
  mpz_root(out.backend().data(), n.backend().data(), k);
  return out;
}

/// floor(log2 n) for n >= 1.
inline unsigned floor_log2(const Int& n) {
  return static_cast<unsigned>(mpz_sizeinbase(n.backend().data(), 2)) - 1;
}

/// Decimal exponent e with 10^e <= |x| < 10^(e+1); x must be nonzero.
inline long decimal_exponent(const Real& x) {
  return floor_to_int(log10(abs(x))).convert_to<long>();
}

/// Smallest value >= x with `sig` significant decimal digits (x > 0).
inline Real round_up_significant(const Real& x, int sig) {
  const long e = decimal_exponent(x) - (sig - 1);
  const Real scale = pow10(e);
  return to_real(ceil_to_int(x / scale)) * scale;
}

/// Scientific rendering with round-half-up at `sig` significant digits,
/// e.g. 5.26e37 -> "5.3e37".
inline std::string format_sci(const Real& x, int sig = 2) {
  if (x == 0) return "0";
  const bool negative = x < 0;
  const Real ax = abs(x);
  long e = decimal_exponent(ax);
  Int mantissa = nearest_int(ax / pow10(e - (sig - 1)));
  if (mantissa >= int_pow10(static_cast<unsigned>(sig))) {
    mantissa /= 10;
    ++e;
  }
  std::string digits = mantissa.str();
  std::string out = negative ? "-" : "";
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(e);
  return out;
}

/// Full scientific string with `sig` significant digits.
inline std::string to_string(const Real& x, int sig = 40) {
  return x.str(sig, std::ios_base::scientific);
}

/// True iff |x - y| <= 10^(-digits) * max(1, |x|, |y|).
inline bool agree_to_digits(const Real& x, const Real& y, unsigned digits) {
  Real scale = max(Real(1), max(abs(x), abs(y)));
  return abs(x - y) <= pow10(-static_cast<long>(digits)) * scale;
}

// ---------------------------------------------------------------------------
// Minimal complex numbers over Real; only what the conjugate roots need.

struct Complex {
  Real re;
  Real im;

  friend Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
  friend Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
  friend Complex operator*(const Complex& x, const Complex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend Complex operator*(const Real& s, const Complex& x) { return {s * x.re, s * x.im}; }
  friend Complex operator/(const Complex& x, const Complex& y) {
    const Real den = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / den, (x.im * y.re - x.re * y.im) / den};
  }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real abs(const Complex& z) { return sqrt(z.re * z.re + z.im * z.im); }

// ---------------------------------------------------------------------------
// Algebraic constants

struct AlgebraicConstants {
  PrecisionContext ctx;
  Real alpha;      // dominant root of x^3 - x^2 - x - 1
  Real a;          // 1 / (-alpha^2 + 4 alpha - 1)
  Real log_alpha;
  Real log_a;
  Complex beta;    // Im > 0
  Complex gamma;   // conj(beta)
  Complex b_coeff; // sigma(a), evaluated at beta
  Complex c_coeff; // sigma^2(a), evaluated at gamma
};

namespace detail {

inline Real tribonacci_poly(const Real& x) { return ((x - 1) * x - 1) * x - 1; }
inline Real tribonacci_poly_derivative(const Real& x) { return (3 * x - 2) * x - 1; }

inline Complex coefficient_at(const Complex& root) {
  const Complex one{Real(1), Real(0)};
  const Complex four{Real(4), Real(0)};
  const Complex den = four * root - root * root - one;
  return one / den;
}

inline AlgebraicConstants compute_constants_at(const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  // Stop a few digits inside the binary margin; the last ulp may never settle.
  const Real tol = pow10(-static_cast<long>(ctx.digits + 5));

  Real lo("1.8");
  Real hi("1.9");
  if (!(tribonacci_poly(lo) < 0 && tribonacci_poly(hi) > 0)) {
    throw PrecisionFailure("no sign change of the characteristic polynomial on [1.8, 1.9]");
  }
  // Newton from the bracket midpoint, falling back to bisection whenever an
  // iterate leaves the bracket.
  Real x = (lo + hi) / 2;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    const Real fx = tribonacci_poly(x);
    if (fx == 0) {
      converged = true;
      break;
    }
    if (fx < 0) lo = x; else hi = x;
    Real next = x - fx / tribonacci_poly_derivative(x);
    if (abs(next - x) <= tol * x) {
      x = next;
      converged = true;
      break;
    }
    if (next <= lo || next >= hi) next = (lo + hi) / 2;
    x = next;
  }
  if (!converged) {
    throw PrecisionFailure("root refinement did not converge at " + std::to_string(ctx.digits) +
                           " digits");
  }

  AlgebraicConstants c;
  c.ctx = ctx;
  c.alpha = x;
  c.a = 1 / (-x * x + 4 * x - 1);
  c.log_alpha = log(c.alpha);
  c.log_a = log(c.a);

  // x^3 - x^2 - x - 1 = (x - alpha)(x^2 + p x + q) with p = alpha - 1, q = 1/alpha.
  const Real p = x - 1;
  const Real q = 1 / x;
  const Real disc = 4 * q - p * p;
  if (disc <= 0) throw PrecisionFailure("deflated quadratic has no complex roots");
  c.beta = {-p / 2, sqrt(disc) / 2};
  c.gamma = conj(c.beta);
  c.b_coeff = coefficient_at(c.beta);
  c.c_coeff = coefficient_at(c.gamma);
  return c;
}

inline bool agree(const Complex& x, const Complex& y, unsigned digits) {
  return agree_to_digits(x.re, y.re, digits) && agree_to_digits(x.im, y.im, digits);
}

}  // namespace detail

/// Computes the constants at `ctx` and certifies them against a recomputation
/// at ctx.digits + ctx.guard_digits.
inline AlgebraicConstants compute_constants(const PrecisionContext& ctx) {
  AlgebraicConstants c = detail::compute_constants_at(ctx);
  const AlgebraicConstants wide = detail::compute_constants_at(ctx.widened());

  ScopedPrecision guard(ctx.widened());
  const unsigned d = ctx.digits;
  const bool ok = agree_to_digits(c.alpha, wide.alpha, d) && agree_to_digits(c.a, wide.a, d) &&
                  agree_to_digits(c.log_alpha, wide.log_alpha, d) &&
                  agree_to_digits(c.log_a, wide.log_a, d) && detail::agree(c.beta, wide.beta, d) &&
                  detail::agree(c.b_coeff, wide.b_coeff, d);
  if (!ok) {
    throw PrecisionFailure("constants at " + std::to_string(d) +
                           " digits disagree with the guard-digit recomputation");
  }
  if (abs(detail::tribonacci_poly(c.alpha)) >= pow10(-static_cast<long>(d) + 10)) {
    throw PrecisionFailure("alpha residual exceeds 10^-(digits-10)");
  }
  return c;
}

/// Checks N(a) = a * sigma(a) * sigma^2(a) = 1/44 and N(alpha) = alpha*beta*gamma = 1.
inline bool verify_norm_condition(const AlgebraicConstants& c) {
  ScopedPrecision guard(c.ctx);
  const Real tol = pow10(-static_cast<long>(c.ctx.digits / 2));
  const Complex a{c.a, Real(0)};
  const Complex alpha{c.alpha, Real(0)};
  const Complex norm_a = a * c.b_coeff * c.c_coeff;
  const Complex norm_alpha = alpha * c.beta * c.gamma;
  const Complex inv44{Real(1) / 44, Real(0)};
  const Complex one{Real(1), Real(0)};
  return abs(norm_a - inv44) < tol && abs(norm_alpha - one) < tol;
}

}  // namespace pillai

#endif  // PILLAI_HP_ARITH_HPP
