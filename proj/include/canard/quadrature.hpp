#pragma once

#include "canard/bigreal.hpp"

#include <functional>

namespace canard {

struct QuadratureOptions {
    int max_refinements = 22;
    int max_bisections = 24; // interval-splitting fallback depth
};

// Adaptive high-precision integral of a smooth integrand over [a, b] with
// |error| < tol. Tanh-sinh nodes at working precision; on a tolerance miss the
// interval is bisected and the halves retried. Throws QuadratureError carrying
// the best estimate and achieved tolerance when the subdivision budget runs
// out.
BigReal quadrature(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                   const BigReal& b, const BigReal& tol, const QuadratureOptions& opts = {});

} // namespace canard
