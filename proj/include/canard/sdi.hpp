#pragma once

#include "canard/bigreal.hpp"
#include "canard/pws.hpp"
#include "canard/regfun.hpp"
#include "canard/series.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace canard {

enum class XiDirection {
    ForwardFromPositiveX, // xi(x): first return of the forward Z- orbit of (x, 0)
    XiMinusOfY,           // xi_-(y) < 0: forward Z- orbit of (0, y), y < 0
    XiPlusOfY             // xi_+(y) > 0: backward Z- orbit of (0, y), y < 0
};

// First intersection with the switching line along the lower field. Closed
// form for a linear symmetric Z- (parabolic orbits); otherwise high-precision
// integration with event detection at y = 0.
BigReal xi_map(const PWSSystem& sys, const BigReal& v, XiDirection dir);

// On-sigma data for the slow divergence-integral, L'Hospital-extended at the
// two-fold by cancelling the common factor of x.
struct SigmaData {
    Poly1 w_num, w_den; // w = -Y- / (Y+ - Y-)
    Poly1 h_num, h_den; // h = (Y+ - Y-)^2 / det Z
    BigReal p0;         // w(0) = -Y-'/(Y+' - Y-')

    BigReal w(const BigReal& u) const { return poly_eval(w_num, u) / poly_eval(w_den, u); }
    BigReal h(const BigReal& u) const { return poly_eval(h_num, u) / poly_eval(h_den, u); }
};

SigmaData build_sigma_data(const PWSSystem& sys);

// Taylor series of I about x = 0 from a regularization-function jet given as
// a Taylor series at y2c = phi^{-1}(p0): build the g- and h-series, compose
// into the integrand series, integrate termwise and evaluate the
// antiderivative between xi(x) = -x and x.
TruncatedSeries sdi_series_from_jet(const PWSSystem& sys, const TruncatedSeries& phi_at_y2c,
                                    int order);

// Same, extracting the jet from the regularization function. Requires the
// symmetry audit (xi(x) = -x).
TruncatedSeries sdi_series(const PWSSystem& sys, const RegularizationFunction& phi, int order);

// The slow divergence-integral I(x) over [xi(x), x] by adaptive quadrature.
// Near u = 0 the "0/0"-extended integrand is evaluated from its series.
BigReal sdi_quadrature(const PWSSystem& sys, const RegularizationFunction& phi, const BigReal& x,
                       const BigReal& tol);

// One-sided integrals I_-(y) and I_+(y) over [xi_-(y), 0] and [xi_+(y), 0].
std::pair<BigReal, BigReal> sdi_ipm(const PWSSystem& sys, const RegularizationFunction& phi,
                                    const BigReal& y, const BigReal& tol);

// I2(x2, delta) = delta^{-2k-1} x2^{-3} I(delta x2). Series path below
// delta = 1e-2 (raw values reach 1e-85); quadrature cross-path above.
BigReal scaled_I2(const PWSSystem& sys, const RegularizationFunction& phi, const BigReal& x2,
                  const BigReal& delta, int k, int order);
BigReal scaled_I2_from_series(const TruncatedSeries& I, const BigReal& x2, const BigReal& delta,
                              int k);

struct RootInfo {
    BigReal location;
    BigReal derivative; // I'(root)
    bool simple;
};

// Sign-change scan, bisection, then Newton polish on the series evaluation.
// A root is flagged simple when |I'| there clears a scale-relative threshold.
std::vector<RootInfo> find_simple_roots(const TruncatedSeries& I, const BigReal& lo,
                                        const BigReal& hi, const BigReal& tol, int scan_n = 4000);

// I on a grid plus its series expansion and located roots.
struct SDIProfile {
    std::vector<BigReal> grid;
    std::vector<BigReal> values;
    TruncatedSeries series{BigReal(0), {}};
    std::vector<RootInfo> roots;
};

SDIProfile sdi_profile(const PWSSystem& sys, const RegularizationFunction& phi, const BigReal& lo,
                       const BigReal& hi, int n, int order, const BigReal& tol);

} // namespace canard
