#pragma once

#include "canard/bigreal.hpp"

#include <vector>

namespace canard {

// Univariate polynomials as coefficient vectors, c[i] the coefficient of x^i.
using Poly1 = std::vector<BigReal>;

BigReal poly_eval(const Poly1& p, const BigReal& x);
Poly1 poly_derive(const Poly1& p);
Poly1 poly_mul(const Poly1& a, const Poly1& b);
Poly1 poly_sub(const Poly1& a, const Poly1& b);

// Effective degree after dropping a zero tail; -1 for the zero polynomial.
int poly_degree(const Poly1& p);

// Number of exactly-zero leading (low-order) coefficients; degree+1 rules.
int poly_valuation(const Poly1& p);

// Divide by x^m (requires valuation >= m).
Poly1 poly_shift_down(const Poly1& p, int m);

// Count distinct real roots in (a, b] by Sturm's theorem. Coefficients below
// a relative cleanup threshold are treated as zero while building the
// remainder sequence.
int sturm_root_count(const Poly1& p, const BigReal& a, const BigReal& b);

} // namespace canard
