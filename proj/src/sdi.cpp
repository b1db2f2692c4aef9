#include "canard/sdi.hpp"

#include "canard/errors.hpp"
#include "canard/flow.hpp"
#include "canard/quadrature.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace canard {

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

// ---------------------------------------------------------------------------
// xi maps
// ---------------------------------------------------------------------------

namespace {

// Z- with constant X-component and Y- = m x has parabolic orbits; the xi maps
// are then exact.
struct LinearLowerField {
    BigReal a; // X-(0,0)
    BigReal m; // Y-'(0,0)
};

std::optional<LinearLowerField> linear_symmetric_lower(const PWSSystem& sys) {
    const auto xterms = sys.zminus.X.terms();
    const auto yterms = sys.zminus.Y.terms();
    LinearLowerField f{BigReal(0), BigReal(0)};
    for (const auto& t : xterms) {
        if (t.i == 0 && t.j == 0 && t.c1 == 0)
            f.a = t.c0;
        else
            return std::nullopt;
    }
    for (const auto& t : yterms) {
        if (t.i == 1 && t.j == 0 && t.c1 == 0)
            f.m = t.c0;
        else if (!(t.i == 0 && t.j == 0 && t.c0 == 0)) // lambda shift allowed at lambda0 = 0
            return std::nullopt;
    }
    if (f.a == 0 || f.m == 0)
        return std::nullopt;
    return f;
}

BigReal xi_by_integration(const PWSSystem& sys, const BigReal& v, XiDirection dir) {
    const BigReal lambda = sys.lambda0;
    RhsFn rhs = [&sys, lambda](const BigReal&, const State& s, State& d) {
        d[0] = sys.zminus.X.eval(s[0], s[1], lambda);
        d[1] = sys.zminus.Y.eval(s[0], s[1], lambda);
    };
    if (dir == XiDirection::XiPlusOfY) {
        RhsFn fwd = rhs;
        rhs = [fwd](const BigReal& t, const State& s, State& d) {
            fwd(t, s, d);
            d[0] = -d[0];
            d[1] = -d[1];
        };
    }
    const State start = dir == XiDirection::ForwardFromPositiveX ? State{v, BigReal(0)}
                                                                 : State{BigReal(0), v};
    IntegrateOptions opts;
    opts.tol = pow10(-(static_cast<long>(precision())) + 20);
    const BigReal wide = 4 * (abs(sys.mu_minus) + abs(sys.mu_plus) + 1);
    opts.box = {{-wide, wide, -wide, wide}};

    EventSpec hit_sigma;
    hit_sigma.fn = [](const BigReal&, const State& s) { return s[1]; };
    hit_sigma.direction = +1; // the arc returns from below
    hit_sigma.terminal = true;

    Trajectory traj = integrate_ode(rhs, start, BigReal(0), 40 * wide, opts, {hit_sigma});
    if (traj.events_.empty())
        throw NoReturnError("lower-field arc did not return to the switching line");
    return traj.events_.front().state[0];
}

} // namespace

BigReal xi_map(const PWSSystem& sys, const BigReal& v, XiDirection dir) {
    if (const auto lin = linear_symmetric_lower(sys)) {
        switch (dir) {
        case XiDirection::ForwardFromPositiveX:
            return -v;
        case XiDirection::XiMinusOfY:
        case XiDirection::XiPlusOfY: {
            if (!(v < 0))
                throw ConfigError("xi_+/- maps take y < 0");
            const BigReal sq = -2 * (lin->a / lin->m) * v;
            if (!(sq > 0))
                throw NoReturnError("parabolic orbit through (0, y) does not meet the line");
            const BigReal r = sqrt(sq);
            return dir == XiDirection::XiPlusOfY ? r : -r;
        }
        }
    }
    return xi_by_integration(sys, v, dir);
}

// ---------------------------------------------------------------------------
// Integrand data
// ---------------------------------------------------------------------------

SigmaData build_sigma_data(const PWSSystem& sys) {
    const Poly1 yp = sys.yplus_on_sigma(sys.lambda0);
    const Poly1 ym = sys.yminus_on_sigma(sys.lambda0);
    const Poly1 gap = poly_sub(yp, ym);
    const Poly1 detz = sys.detz_on_sigma(sys.lambda0);

    if (poly_valuation(yp) < 1 || poly_valuation(ym) < 1)
        throw AuditError("no two-fold at the origin: Y+ or Y- does not vanish there");
    if (poly_valuation(gap) != 1)
        throw AuditError("Y+' - Y-' vanishes at the origin");
    if (poly_valuation(detz) != 1)
        throw AuditError("det Z' vanishes at the origin");

    SigmaData d;
    Poly1 negym(ym.size());
    for (size_t i = 0; i < ym.size(); ++i)
        negym[i] = -ym[i];
    d.w_num = poly_shift_down(negym, 1);
    d.w_den = poly_shift_down(gap, 1);
    d.h_num = poly_shift_down(poly_mul(gap, gap), 1);
    d.h_den = poly_shift_down(detz, 1);
    d.p0 = d.w_num[0] / d.w_den[0];
    if (!(d.p0 > 0 && d.p0 < 1))
        throw AuditError("convex coefficient at the two-fold lies outside (0, 1)");
    return d;
}

namespace {

TruncatedSeries poly_as_series(const Poly1& p, int order) {
    std::vector<BigReal> c(static_cast<size_t>(order) + 1, BigReal(0));
    for (size_t i = 0; i < p.size() && i < c.size(); ++i)
        c[i] = p[i];
    return {BigReal(0), std::move(c)};
}

// Integrand series i(u) = h(u) phi'(g(u)) about u = 0.
TruncatedSeries integrand_series(const SigmaData& sd, const TruncatedSeries& phi_at_y2c,
                                 int order) {
    const TruncatedSeries w = poly_as_series(sd.w_num, order) / poly_as_series(sd.w_den, order);
    const TruncatedSeries h = poly_as_series(sd.h_num, order) / poly_as_series(sd.h_den, order);

    // F(t) = phi(y2c + t) - p0, reverted to G with F(G(s)) = s
    std::vector<BigReal> fc = phi_at_y2c.coeffs();
    fc.resize(static_cast<size_t>(order) + 1, BigReal(0));
    fc[0] = 0;
    const TruncatedSeries G = series_reversion(TruncatedSeries(BigReal(0), std::move(fc)));

    // g(u) - y2c = G(w(u) - p0)
    std::vector<BigReal> wc = w.coeffs();
    wc[0] = 0;
    const TruncatedSeries gshift = series_compose(G, TruncatedSeries(BigReal(0), std::move(wc)));

    // phi' as a series in t = y - y2c, then composed with gshift
    std::vector<BigReal> pc(static_cast<size_t>(order) + 1, BigReal(0));
    for (int n = 0; n < order && n + 1 <= phi_at_y2c.order(); ++n)
        pc[static_cast<size_t>(n)] = phi_at_y2c[n + 1] * (n + 1);
    const TruncatedSeries phip(BigReal(0), std::move(pc));

    return h * series_compose(phip, gshift);
}

} // namespace

TruncatedSeries sdi_series_from_jet(const PWSSystem& sys, const TruncatedSeries& phi_at_y2c,
                                    int order) {
    const SigmaData sd = build_sigma_data(sys);
    const TruncatedSeries integrand = integrand_series(sd, phi_at_y2c, order);
    // I(x) = F(x) - F(xi(x)) with xi(x) = -x under the symmetry assumption.
    const TruncatedSeries F = integrand.antiderivative();
    std::vector<BigReal> c(F.coeffs());
    for (size_t m = 0; m < c.size(); m += 2)
        c[m] = 0; // F(x) - F(-x): even powers cancel
    for (size_t m = 1; m < c.size(); m += 2)
        c[m] *= 2;
    c.resize(static_cast<size_t>(order) + 1, BigReal(0));
    return {BigReal(0), std::move(c)};
}

TruncatedSeries sdi_series(const PWSSystem& sys, const RegularizationFunction& phi, int order) {
    const SigmaData sd = build_sigma_data(sys);
    const BigReal y2c = phi.invert(sd.p0);
    return sdi_series_from_jet(sys, phi.taylor_at(y2c, order + 1), order);
}

// ---------------------------------------------------------------------------
// Quadrature path
// ---------------------------------------------------------------------------

namespace {

struct IntegrandEvaluator {
    SigmaData sd;
    const RegularizationFunction* phi;
    TruncatedSeries near_zero{BigReal(0), {}};
    BigReal near_zero_radius;

    explicit IntegrandEvaluator(const PWSSystem& sys, const RegularizationFunction& f)
        : sd(build_sigma_data(sys)), phi(&f), near_zero_radius(pow10(-8)) {
        const BigReal y2c = f.invert(sd.p0);
        near_zero = integrand_series(sd, f.taylor_at(y2c, 33), 32);
    }

    BigReal operator()(const BigReal& u) const {
        if (abs(u) < near_zero_radius)
            return near_zero.eval(u);
        const BigReal wv = sd.w(u);
        const BigReal y = phi->invert(wv);
        const BigReal slope = phi->eval(y, 1);
        if (!(slope > 0))
            throw NonMonotoneError("phi' <= 0 at a quadrature node, y = " + to_decimal_string(y, 20));
        return sd.h(u) * slope;
    }
};

} // namespace

BigReal sdi_quadrature(const PWSSystem& sys, const RegularizationFunction& phi, const BigReal& x,
                       const BigReal& tol) {
    if (!(x > 0 && x <= sys.mu_plus))
        throw ConfigError("sdi_quadrature: x must lie in (0, mu+]");
    const BigReal xi = xi_map(sys, x, XiDirection::ForwardFromPositiveX);
    const IntegrandEvaluator f(sys, phi);
    const BigReal half = tol / 2;
    return quadrature([&f](const BigReal& u) { return f(u); }, xi, BigReal(0), half) +
           quadrature([&f](const BigReal& u) { return f(u); }, BigReal(0), x, half);
}

std::pair<BigReal, BigReal> sdi_ipm(const PWSSystem& sys, const RegularizationFunction& phi,
                                    const BigReal& y, const BigReal& tol) {
    if (!(y < 0))
        throw ConfigError("sdi_ipm: y must be negative");
    const BigReal xim = xi_map(sys, y, XiDirection::XiMinusOfY);
    const BigReal xip = xi_map(sys, y, XiDirection::XiPlusOfY);
    const IntegrandEvaluator f(sys, phi);
    const BigReal im = quadrature([&f](const BigReal& u) { return f(u); }, xim, BigReal(0), tol);
    const BigReal ip = -quadrature([&f](const BigReal& u) { return f(u); }, BigReal(0), xip, tol);
    return {im, ip};
}

// ---------------------------------------------------------------------------
// Scaled integral and roots
// ---------------------------------------------------------------------------

BigReal scaled_I2_from_series(const TruncatedSeries& I, const BigReal& x2, const BigReal& delta,
                              int k) {
    if (!(delta > 0 && x2 > 0))
        throw ConfigError("scaled_I2: requires delta > 0 and x2 > 0");
    const BigReal Ix = I.eval(delta * x2);
    BigReal scale = boost::multiprecision::pow(delta, 2 * k + 1) * x2 * x2 * x2;
    return Ix / scale;
}

BigReal scaled_I2(const PWSSystem& sys, const RegularizationFunction& phi, const BigReal& x2,
                  const BigReal& delta, int k, int order) {
    if (2 * k + 3 > order)
        throw ConfigError("scaled_I2: series order " + std::to_string(order) +
                          " too small for k = " + std::to_string(k));
    if (delta < BigReal(1) / 100)
        return scaled_I2_from_series(sdi_series(sys, phi, order), x2, delta, k);
    const BigReal Ix = sdi_quadrature(sys, phi, delta * x2, pow10(-(static_cast<long>(precision())) + 30));
    return Ix / (boost::multiprecision::pow(delta, 2 * k + 1) * x2 * x2 * x2);
}

std::vector<RootInfo> find_simple_roots(const TruncatedSeries& I, const BigReal& lo,
                                        const BigReal& hi, const BigReal& tol, int scan_n) {
    if (!(lo < hi))
        throw ConfigError("find_simple_roots: empty bracket");
    const TruncatedSeries dI = I.derivative();

    BigReal max_slope(0);
    std::vector<RootInfo> roots;
    BigReal xprev = lo;
    BigReal vprev = I.eval(lo);
    for (int j = 1; j <= scan_n; ++j) {
        const BigReal x = lo + (hi - lo) * j / scan_n;
        const BigReal v = I.eval(x);
        max_slope = std::max(max_slope, abs(dI.eval(x)));
        if (vprev != 0 && v != 0 && (vprev < 0) != (v < 0)) {
            BigReal a = xprev, b = x, va = vprev;
            for (int it = 0; it < 200; ++it) {
                const BigReal mid = (a + b) / 2;
                const BigReal vm = I.eval(mid);
                if (vm == 0) {
                    a = b = mid;
                    break;
                }
                if ((vm < 0) == (va < 0)) {
                    a = mid;
                    va = vm;
                } else {
                    b = mid;
                }
            }
            BigReal r = (a + b) / 2;
            for (int it = 0; it < 8; ++it) { // Newton polish at working precision
                const BigReal d = dI.eval(r);
                if (d == 0)
                    break;
                const BigReal step = I.eval(r) / d;
                r -= step;
                if (abs(step) < abs(r) * pow10(-(static_cast<long>(precision())) + 8))
                    break;
            }
            if (r > lo && r <= hi)
                roots.push_back({r, dI.eval(r), false});
        }
        xprev = x;
        vprev = v;
    }
    (void)tol;
    const BigReal threshold = max_slope * pow10(-10);
    for (auto& rt : roots)
        rt.simple = abs(rt.derivative) > threshold;
    return roots;
}

SDIProfile sdi_profile(const PWSSystem& sys, const RegularizationFunction& phi, const BigReal& lo,
                       const BigReal& hi, int n, int order, const BigReal& tol) {
    SDIProfile prof;
    prof.series = sdi_series(sys, phi, order);
    for (int i = 0; i <= n; ++i) {
        const BigReal x = lo + (hi - lo) * i / n;
        if (!(x > 0))
            continue;
        prof.grid.push_back(x);
        prof.values.push_back(sdi_quadrature(sys, phi, x, tol));
    }
    prof.roots = find_simple_roots(prof.series, lo > 0 ? lo : hi / (4 * n), hi,
                                   pow10(-(static_cast<long>(precision())) + 20));
    return prof;
}

} // namespace canard
