#pragma once

#include "canard/bigreal.hpp"

#include <vector>

namespace canard {

// Partial exponential Bell polynomial B_{m,n}(x_1, ..., x_{m-n+1}).
// args must supply at least m-n+1 entries; 1 <= n <= m.
BigReal bell_polynomial(int m, int n, const std::vector<BigReal>& args);

// m-th derivative of outer(inner(.)) at a point, by the Faa di Bruno rule:
//   sum_{n=1}^{m} outer_derivs[n] * B_{m,n}(inner_derivs[1..m-n+1]).
// outer_derivs[n] is the n-th derivative of the outer function at inner's
// value; inner_derivs[j] the j-th derivative of the inner function at the
// point. Index 0 entries are ignored. Arrays must reach order m.
BigReal faa_di_bruno(const std::vector<BigReal>& outer_derivs,
                     const std::vector<BigReal>& inner_derivs, int m);

// Binomial coefficient as a BigReal at working precision.
BigReal binomial(int n, int k);

} // namespace canard
