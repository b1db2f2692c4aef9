#include "canard/quadrature.hpp"

#include "canard/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace canard {

namespace {

struct Attempt {
    BigReal value;
    BigReal error;
};

Attempt tanh_sinh_once(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                       const BigReal& b, const BigReal& tol, int max_refinements) {
    // min_complement keeps the node generator away from the exponent overflow
    // that variable-precision mpfr otherwise triggers in the constructor.
    const BigReal min_complement = pow10(-2 * static_cast<long>(precision()) - 40);
    boost::math::quadrature::tanh_sinh<BigReal> integrator(static_cast<size_t>(max_refinements),
                                                           min_complement);
    Attempt r{BigReal(0), BigReal(0)};
    BigReal l1 = 0;
    r.value = integrator.integrate(f, a, b, tol, &r.error, &l1);
    r.error = abs(r.error);
    return r;
}

BigReal integrate_rec(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                      const BigReal& b, const BigReal& tol, const QuadratureOptions& opts,
                      int depth) {
    Attempt att = tanh_sinh_once(f, a, b, tol, opts.max_refinements);
    if (att.error <= tol)
        return att.value;
    if (depth >= opts.max_bisections)
        throw QuadratureError("subdivision budget exhausted on [" + to_decimal_string(a, 20) + ", " +
                                  to_decimal_string(b, 20) + "]",
                              to_decimal_string(att.value, 30), to_decimal_string(att.error, 5));
    const BigReal mid = (a + b) / 2;
    const BigReal half_tol = tol / 2;
    return integrate_rec(f, a, mid, half_tol, opts, depth + 1) +
           integrate_rec(f, mid, b, half_tol, opts, depth + 1);
}

} // namespace

BigReal quadrature(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                   const BigReal& b, const BigReal& tol, const QuadratureOptions& opts) {
    if (tol <= 0)
        throw ConfigError("quadrature tolerance must be positive");
    if (a == b)
        return BigReal(0);
    return integrate_rec(f, a, b, tol, opts, 0);
}

} // namespace canard
