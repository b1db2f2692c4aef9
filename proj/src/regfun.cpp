#include "canard/regfun.hpp"

#include "canard/errors.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace canard {

using boost::multiprecision::abs;
using boost::multiprecision::atan;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;
using boost::multiprecision::tan;

// ---------------------------------------------------------------------------
// SmoothBump
// ---------------------------------------------------------------------------

namespace {

// exp(-1/x) for x > 0, exact 0 for x <= 0 or once the result underflows the
// working precision by a wide margin.
BigReal bump_b0(const BigReal& x) {
    if (x <= 0)
        return BigReal(0);
    const BigReal inv = 1 / x;
    const BigReal underflow_edge = BigReal(precision() + 10) * log(BigReal(10));
    if (inv > underflow_edge)
        return BigReal(0);
    return exp(-inv);
}

BigReal bump_b0_derivative(const BigReal& x) {
    if (x <= 0)
        return BigReal(0);
    const BigReal v = bump_b0(x);
    return v / (x * x);
}

// B1 = B0(t)/(B0(t)+B0(1-t)), the monotone step on [0, 1].
BigReal bump_b1(const BigReal& t) {
    if (t <= 0)
        return BigReal(0);
    if (t >= 1)
        return BigReal(1);
    const BigReal a = bump_b0(t);
    const BigReal b = bump_b0(1 - t);
    return a / (a + b);
}

BigReal bump_b1_derivative(const BigReal& t) {
    if (t <= 0 || t >= 1)
        return BigReal(0);
    const BigReal a = bump_b0(t);
    const BigReal b = bump_b0(1 - t);
    const BigReal ad = bump_b0_derivative(t);
    const BigReal bd = bump_b0_derivative(1 - t);
    const BigReal den = (a + b) * (a + b);
    return (ad * b + a * bd) / den;
}

BigReal bump_unscaled(const BigReal& x) { return 1 - bump_b1(x * x - 1); }

BigReal bump_unscaled_derivative(const BigReal& x) {
    return -bump_b1_derivative(x * x - 1) * 2 * x;
}

// series of exp(-1/s) at s0 > 0
TruncatedSeries b0_series(const BigReal& s0, int order) {
    TruncatedSeries s = TruncatedSeries::identity(order, s0);
    TruncatedSeries inv = TruncatedSeries::constant(BigReal(-1), order, s0) / s;
    return series_exp(inv);
}

} // namespace

SmoothBump::SmoothBump(BigReal upsilon) : upsilon_(std::move(upsilon)) {
    if (upsilon_ <= 0)
        throw ConfigError("bump half-width upsilon must be positive");
}

BigReal SmoothBump::eval(const BigReal& y, int n) const {
    const BigReal x = y / upsilon_;
    switch (n) {
    case 0:
        return bump_unscaled(x);
    case 1:
        return bump_unscaled_derivative(x) / upsilon_;
    default:
        throw Error("SmoothBump::eval supports n in {0, 1}");
    }
}

TruncatedSeries SmoothBump::unscaled_taylor_at(const BigReal& x0, int order) {
    const BigReal t0 = x0 * x0 - 1;
    if (t0 <= 0)
        return TruncatedSeries::constant(BigReal(1), order, x0); // plateau, flat
    if (t0 >= 1)
        return TruncatedSeries::constant(BigReal(0), order, x0); // outside support, flat
    // t(x) = x^2 - 1 as a series at x0
    std::vector<BigReal> tc(static_cast<size_t>(order) + 1, BigReal(0));
    tc[0] = t0;
    if (order >= 1)
        tc[1] = 2 * x0;
    if (order >= 2)
        tc[2] = 1;
    const TruncatedSeries t_of_x(x0, std::move(tc));

    // B1(t) = B0(t) / (B0(t) + B0(1-t)) as a series at t0 in (0, 1)
    const TruncatedSeries a = b0_series(t0, order); // exp(-1/s) at s = t0
    TruncatedSeries one_minus_t = TruncatedSeries::identity(order, t0);
    {
        std::vector<BigReal> c = one_minus_t.coeffs();
        c[0] = 1 - t0;
        for (size_t n = 1; n < c.size(); ++n)
            c[n] = -c[n];
        one_minus_t = TruncatedSeries(t0, std::move(c));
    }
    const TruncatedSeries b = series_compose(b0_series(1 - t0, order), one_minus_t);
    const TruncatedSeries b1 = a / (a + b);

    const TruncatedSeries b1_of_x = series_compose(b1, t_of_x);
    return TruncatedSeries::constant(BigReal(1), order, x0) - b1_of_x;
}

TruncatedSeries SmoothBump::taylor_at(const BigReal& y0, const BigReal& shift, int order) const {
    const BigReal x0 = (y0 - shift) / upsilon_;
    const TruncatedSeries inner = unscaled_taylor_at(x0, order);
    // rescale: d^n/dy^n = u^{-n} d^n/dx^n
    std::vector<BigReal> c(static_cast<size_t>(order) + 1);
    BigReal scale(1);
    for (int n = 0; n <= order; ++n) {
        c[static_cast<size_t>(n)] = inner[n] * scale;
        scale /= upsilon_;
    }
    return {y0, std::move(c)};
}

BigReal SmoothBump::sup_derivative() {
    // sup over the transition region 1 < x < sqrt(2); cached per precision.
    static thread_local unsigned cached_precision = 0;
    static thread_local BigReal cached_value;
    if (cached_precision == precision())
        return cached_value;
    const BigReal lo(1);
    const BigReal hi = sqrt(BigReal(2));
    const int n = 4000;
    BigReal best(0);
    for (int i = 1; i < n; ++i) {
        const BigReal x = lo + (hi - lo) * i / n;
        best = std::max(best, abs(bump_unscaled_derivative(x)));
    }
    cached_precision = precision();
    cached_value = best;
    return best;
}

// ---------------------------------------------------------------------------
// PsiJet
// ---------------------------------------------------------------------------

BigReal PsiJet::eval(const BigReal& y, int n) const {
    // psi^(n)(y) = sum_{i >= n} coeffs[i] i!/(i-n)! (y - center)^{i-n}, Horner form.
    const BigReal t = y - center;
    BigReal acc(0);
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= n; --i) {
        BigReal fall(1);
        for (int j = 0; j < n; ++j)
            fall *= i - j;
        acc = acc * t + fall * coeffs[static_cast<size_t>(i)];
    }
    return acc;
}

TruncatedSeries PsiJet::taylor_at(const BigReal& y0, int order) const {
    // exact recentering of the polynomial
    const BigReal t0 = y0 - center;
    std::vector<BigReal> c(static_cast<size_t>(order) + 1, BigReal(0));
    for (int n = 0; n <= order; ++n) {
        // c[n] = sum_{i>=n} coeffs[i] C(i,n) t0^{i-n}
        BigReal s(0);
        BigReal tp(1);
        for (int i = n; i < static_cast<int>(coeffs.size()); ++i) {
            BigReal binom(1);
            for (int j = 0; j < n; ++j) {
                binom *= i - j;
                binom /= j + 1;
            }
            s += coeffs[static_cast<size_t>(i)] * binom * tp;
            tp *= t0;
        }
        c[static_cast<size_t>(n)] = s;
    }
    return {y0, std::move(c)};
}

BigReal PsiJet::derivative_at_center(int n) const {
    if (n >= static_cast<int>(coeffs.size()))
        return BigReal(0);
    BigReal fact(1);
    for (int j = 2; j <= n; ++j)
        fact *= j;
    return coeffs[static_cast<size_t>(n)] * fact;
}

// ---------------------------------------------------------------------------
// RegularizationFunction
// ---------------------------------------------------------------------------

namespace {

BigReal arctan_value(const BigReal& y) { return BigReal(1) / 2 + atan(y) / big_pi(); }

// Taylor series of the reference arctan function at y0: integrate the series
// of 1/(pi (1 + y^2)).
TruncatedSeries arctan_taylor_at(const BigReal& y0, int order) {
    if (order == 0)
        return TruncatedSeries::constant(arctan_value(y0), 0, y0);
    std::vector<BigReal> den(static_cast<size_t>(order), BigReal(0));
    den[0] = 1 + y0 * y0;
    if (order >= 2)
        den[1] = 2 * y0;
    if (order >= 3)
        den[2] = 1;
    const TruncatedSeries dseries =
        TruncatedSeries::constant(BigReal(1), order - 1, y0) / TruncatedSeries(y0, std::move(den));
    std::vector<BigReal> c(static_cast<size_t>(order) + 1, BigReal(0));
    c[0] = arctan_value(y0);
    const BigReal pi = big_pi();
    for (int n = 1; n <= order; ++n)
        c[static_cast<size_t>(n)] = dseries[n - 1] / (pi * n);
    return {y0, std::move(c)};
}

} // namespace

RegularizationFunction RegularizationFunction::reference_arctan() {
    RegularizationFunction f;
    f.kind_ = RegKind::ReferenceArctan;
    return f;
}

RegularizationFunction RegularizationFunction::polynomial_jet(PsiJet jet) {
    RegularizationFunction f;
    f.kind_ = RegKind::PolynomialJet;
    f.jet_ = std::move(jet);
    return f;
}

RegularizationFunction RegularizationFunction::blended(RegularizationFunction base, PsiJet jet,
                                                       BigReal upsilon) {
    RegularizationFunction f;
    f.kind_ = RegKind::Blended;
    f.base_ = std::make_shared<RegularizationFunction>(std::move(base));
    f.jet_ = std::move(jet);
    f.upsilon_ = std::move(upsilon);
    return f;
}

std::string RegularizationFunction::kind_name() const {
    switch (kind_) {
    case RegKind::ReferenceArctan:
        return "reference-arctan";
    case RegKind::PolynomialJet:
        return "polynomial-jet";
    case RegKind::Blended:
        return "blended";
    }
    return "?";
}

BigReal RegularizationFunction::eval(const BigReal& y, int n) const {
    if (n < 0)
        throw Error("derivative order must be nonnegative");
    switch (kind_) {
    case RegKind::ReferenceArctan:
        if (n == 0)
            return arctan_value(y);
        return arctan_taylor_at(y, n).derivative_at_center(n);
    case RegKind::PolynomialJet:
        return jet_->eval(y, n);
    case RegKind::Blended: {
        const BigReal& c = jet_->center;
        const BigReal& u = *upsilon_;
        const BigReal t = abs(y - c) / u;
        if (t <= 1) // plateau: phi_k == psi exactly
            return jet_->eval(y, n);
        if (t * t >= 2) // outside the bump support: phi_k == phi exactly
            return base_->eval(y, n);
        if (n == 0) {
            const SmoothBump bump(u);
            const BigReal b = bump.eval(y - c, 0);
            return base_->eval(y, 0) * (1 - b) + jet_->eval(y, 0) * b;
        }
        return taylor_at(y, n).derivative_at_center(n);
    }
    }
    throw Error("unreachable");
}

TruncatedSeries RegularizationFunction::taylor_at(const BigReal& y0, int order) const {
    switch (kind_) {
    case RegKind::ReferenceArctan:
        return arctan_taylor_at(y0, order);
    case RegKind::PolynomialJet:
        return jet_->taylor_at(y0, order);
    case RegKind::Blended: {
        const BigReal& c = jet_->center;
        const BigReal& u = *upsilon_;
        const SmoothBump bump(u);
        const TruncatedSeries b = bump.taylor_at(y0, c, order);
        const TruncatedSeries phi_s = base_->taylor_at(y0, order);
        const TruncatedSeries psi_s = jet_->taylor_at(y0, order);
        const TruncatedSeries one = TruncatedSeries::constant(BigReal(1), order, y0);
        return phi_s * (one - b) + psi_s * b;
    }
    }
    throw Error("unreachable");
}

BigReal RegularizationFunction::invert(const BigReal& p) const {
    if (!(p > 0 && p < 1))
        throw Error("invert: p must lie in (0, 1), got " + to_decimal_string(p, 20));
    if (kind_ == RegKind::ReferenceArctan)
        return tan(big_pi() * (p - BigReal(1) / 2));

    // Safeguarded Newton with a bisection bracket. For the blended kind the
    // function agrees with the base outside the bump support, so the bracket
    // can always be anchored there.
    BigReal lo, hi;
    if (kind_ == RegKind::Blended) {
        const BigReal& c = jet_->center;
        const BigReal r = 2 * *upsilon_;
        lo = c - r;
        hi = c + r;
        const BigReal flo = eval(lo, 0), fhi = eval(hi, 0);
        if (!(flo < fhi))
            throw NonMonotoneError("blend zone edges out of order");
        if (p < flo)
            return base_->invert(p);
        if (p > fhi)
            return base_->invert(p);
    } else {
        lo = jet_->center;
        hi = jet_->center;
        BigReal step = std::max(BigReal(1), abs(jet_->center));
        for (int i = 0; i < 200 && eval(lo, 0) > p; ++i)
            lo -= step;
        for (int i = 0; i < 200 && eval(hi, 0) < p; ++i)
            hi += step;
        if (!(eval(lo, 0) <= p && p <= eval(hi, 0)))
            throw NonMonotoneError("failed to bracket the preimage");
    }

    BigReal y = (lo + hi) / 2;
    const BigReal tol = pow10(-(static_cast<long>(precision())) + 5) * std::max(BigReal(1), abs(y));
    for (int it = 0; it < 20000; ++it) {
        const BigReal fy = eval(y, 0) - p;
        if (fy > 0)
            hi = y;
        else
            lo = y;
        const BigReal dy = eval(y, 1);
        BigReal ynext;
        if (dy > 0) {
            ynext = y - fy / dy;
            if (!(ynext > lo && ynext < hi))
                ynext = (lo + hi) / 2;
        } else {
            ynext = (lo + hi) / 2;
        }
        if (abs(ynext - y) <= tol)
            return ynext;
        y = ynext;
    }
    return y;
}

RegularizationFunction blend(const RegularizationFunction& phi, const PsiJet& psi,
                             const BigReal& upsilon) {
    return RegularizationFunction::blended(phi, psi, upsilon);
}

MonotonicityReport monotonicity_audit(const RegularizationFunction& f, const BigReal& lo,
                                      const BigReal& hi, int grid_n) {
    if (grid_n < 1000)
        throw ConfigError("monotonicity audit needs at least 10^3 grid points");
    MonotonicityReport rep;
    rep.grid_min = f.eval(lo, 1);
    rep.grid_argmin = lo;
    for (int i = 1; i <= grid_n; ++i) {
        const BigReal y = lo + (hi - lo) * i / grid_n;
        const BigReal d = f.eval(y, 1);
        if (d < rep.grid_min) {
            rep.grid_min = d;
            rep.grid_argmin = y;
        }
    }
    bool bound_ok = true;
    if (f.kind() == RegKind::Blended) {
        const BigReal& c = f.jet()->center;
        const BigReal& u = *f.upsilon();
        const SmoothBump bump(u);
        const BigReal zone_lo = c - 2 * u, zone_hi = c + 2 * u;
        const int zn = std::max(grid_n, 2000);
        BigReal main_min = f.base()->eval(zone_lo, 1);
        BigReal diff_max(0);
        for (int i = 0; i <= zn; ++i) {
            const BigReal y = zone_lo + (zone_hi - zone_lo) * i / zn;
            const BigReal b = bump.eval(y - c, 0);
            const BigReal two_terms =
                f.base()->eval(y, 1) * (1 - b) + f.jet()->eval(y, 1) * b;
            main_min = std::min(main_min, two_terms);
            diff_max = std::max(diff_max, abs(f.jet()->eval(y, 0) - f.base()->eval(y, 0)));
        }
        rep.blend_zone_bound = main_min - SmoothBump::sup_derivative() / u * diff_max;
        bound_ok = *rep.blend_zone_bound > 0;
    }
    rep.pass = rep.grid_min > 0 && bound_ok;
    rep.detail = rep.pass ? "pass (numerical)"
                          : ("fail: min slope " + to_decimal_string(rep.grid_min, 10) + " at y = " +
                             to_decimal_string(rep.grid_argmin, 10));
    return rep;
}

} // namespace canard
