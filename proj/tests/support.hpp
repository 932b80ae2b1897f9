#ifndef PILLAI_TESTS_SUPPORT_HPP
#define PILLAI_TESTS_SUPPORT_HPP

#include "pillai/hp_arith.hpp"

namespace pillai::test {

// Constants at the default 2000 digits, computed once per test binary.
inline const AlgebraicConstants& constants2000() {
  static const AlgebraicConstants c = compute_constants(make_context(2000));
  return c;
}

inline double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace pillai::test

#endif
