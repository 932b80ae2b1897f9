#ifndef PILLAI_PILLAI_HPP
#define PILLAI_PILLAI_HPP

#include "pillai/hp_arith.hpp"
#include "pillai/tribonacci.hpp"
#include "pillai/pair_search.hpp"
#include "pillai/logform_bounds.hpp"
#include "pillai/lattice.hpp"
#include "pillai/reduction.hpp"
#include "pillai/reference.hpp"
#include "pillai/report.hpp"

#endif  // PILLAI_PILLAI_HPP
