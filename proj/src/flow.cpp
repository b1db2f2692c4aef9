#include "canard/flow.hpp"

#include "canard/errors.hpp"
#include "canard/quadrature.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace canard {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

BigReal frac(long num, long den) { return BigReal(num) / BigReal(den); }

struct Dopri5Tableau {
    BigReal c2 = frac(1, 5), c3 = frac(3, 10), c4 = frac(4, 5), c5 = frac(8, 9);
    BigReal a21 = frac(1, 5);
    BigReal a31 = frac(3, 40), a32 = frac(9, 40);
    BigReal a41 = frac(44, 45), a42 = frac(-56, 15), a43 = frac(32, 9);
    BigReal a51 = frac(19372, 6561), a52 = frac(-25360, 2187), a53 = frac(64448, 6561),
            a54 = frac(-212, 729);
    BigReal a61 = frac(9017, 3168), a62 = frac(-355, 33), a63 = frac(46732, 5247),
            a64 = frac(49, 176), a65 = frac(-5103, 18656);
    BigReal a71 = frac(35, 384), a73 = frac(500, 1113), a74 = frac(125, 192),
            a75 = frac(-2187, 6784), a76 = frac(11, 84);
    // y5 - y4 error weights
    BigReal e1 = frac(71, 57600), e3 = frac(-71, 16695), e4 = frac(71, 1920),
            e5 = frac(-17253, 339200), e6 = frac(22, 525), e7 = frac(-1, 40);
    // dense output
    BigReal d1 = frac(-12715105075LL, 11282082432LL), d3 = frac(87487479700LL, 32700410799LL),
            d4 = frac(-10690763975LL, 1880347072LL), d5 = frac(701980252875LL, 199316789632LL),
            d6 = frac(-1453857185LL, 822651844LL), d7 = frac(69997945LL, 29380423LL);
};

const Dopri5Tableau& tableau() {
    static thread_local unsigned cached_precision = 0;
    static thread_local Dopri5Tableau tab;
    if (cached_precision != precision()) {
        tab = Dopri5Tableau();
        cached_precision = precision();
    }
    return tab;
}

State axpy(const State& y, const BigReal& h, std::initializer_list<std::pair<const State*, const BigReal*>> terms) {
    State out = y;
    for (const auto& [k, a] : terms) {
        out[0] += h * (*a) * (*k)[0];
        out[1] += h * (*a) * (*k)[1];
    }
    return out;
}

} // namespace

State DenseSegment::state_at(const BigReal& t) const {
    const BigReal theta = (t - t0) / h;
    const BigReal theta1 = 1 - theta;
    State out;
    for (int i = 0; i < 2; ++i) {
        out[static_cast<size_t>(i)] =
            rcont[0][static_cast<size_t>(i)] +
            theta * (rcont[1][static_cast<size_t>(i)] +
                     theta1 * (rcont[2][static_cast<size_t>(i)] +
                               theta * (rcont[3][static_cast<size_t>(i)] +
                                        theta1 * rcont[4][static_cast<size_t>(i)])));
    }
    return out;
}

BigReal Trajectory::t_begin() const { return segments_.empty() ? BigReal(0) : segments_.front().t0; }

BigReal Trajectory::t_end() const {
    if (segments_.empty())
        return BigReal(0);
    return segments_.back().t0 + segments_.back().h;
}

State Trajectory::state_at(const BigReal& t) const {
    if (segments_.empty())
        throw Error("empty trajectory");
    size_t lo = 0, hi = segments_.size() - 1;
    while (lo < hi) {
        const size_t mid = (lo + hi + 1) / 2;
        if (segments_[mid].t0 <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    return segments_[lo].state_at(t);
}

Trajectory integrate_ode(const RhsFn& rhs, const State& y0, const BigReal& t0, const BigReal& t1,
                         const IntegrateOptions& opts, const std::vector<EventSpec>& events) {
    if (t1 <= t0)
        throw ConfigError("integrate_ode requires t1 > t0");
    const auto& tb = tableau();
    Trajectory traj;

    State y = y0;
    BigReal t = t0;
    State k1;
    rhs(t, y, k1);

    BigReal h = opts.initial_step > 0 ? opts.initial_step : (t1 - t0) / 1000;
    const BigReal span = t1 - t0;
    const BigReal h_floor = span * pow10(-30);
    const BigReal safe("0.9"), beta("0.04");
    const BigReal expo1 = BigReal(1) / 5 - beta * frac(3, 4);
    BigReal facold("1e-4");
    std::vector<BigReal> gprev(events.size());
    for (size_t i = 0; i < events.size(); ++i)
        gprev[i] = events[i].fn(t, y);

    for (long step = 0; step < opts.max_steps; ++step) {
        if (t >= t1)
            return traj;
        if (h > t1 - t)
            h = t1 - t;
        if (opts.max_step > 0 && h > opts.max_step)
            h = opts.max_step;
        if (h < h_floor)
            throw StiffSegmentError("step size underflow at t = " + to_decimal_string(t, 20));

        State k2, k3, k4, k5, k6, k7, y1;
        rhs(t + tb.c2 * h, axpy(y, h, {{&k1, &tb.a21}}), k2);
        rhs(t + tb.c3 * h, axpy(y, h, {{&k1, &tb.a31}, {&k2, &tb.a32}}), k3);
        rhs(t + tb.c4 * h, axpy(y, h, {{&k1, &tb.a41}, {&k2, &tb.a42}, {&k3, &tb.a43}}), k4);
        rhs(t + tb.c5 * h, axpy(y, h, {{&k1, &tb.a51}, {&k2, &tb.a52}, {&k3, &tb.a53}, {&k4, &tb.a54}}),
            k5);
        rhs(t + h,
            axpy(y, h, {{&k1, &tb.a61}, {&k2, &tb.a62}, {&k3, &tb.a63}, {&k4, &tb.a64}, {&k5, &tb.a65}}),
            k6);
        y1 = axpy(y, h, {{&k1, &tb.a71}, {&k3, &tb.a73}, {&k4, &tb.a74}, {&k5, &tb.a75}, {&k6, &tb.a76}});
        rhs(t + h, y1, k7);

        BigReal err(0);
        for (int i = 0; i < 2; ++i) {
            const auto si = static_cast<size_t>(i);
            const BigReal e = h * (tb.e1 * k1[si] + tb.e3 * k3[si] + tb.e4 * k4[si] +
                                   tb.e5 * k5[si] + tb.e6 * k6[si] + tb.e7 * k7[si]);
            const BigReal sc = opts.tol + opts.tol * std::max(abs(y[si]), abs(y1[si]));
            err += (e / sc) * (e / sc);
        }
        err = sqrt(err / 2);

        const BigReal fac11 = pow(err, expo1);
        BigReal fac = fac11 / pow(facold, beta);
        fac = std::max(BigReal(1) / 10, std::min(BigReal(5), safe / fac));
        BigReal hnew = h * fac;

        if (err > 1) {
            h = h * std::max(BigReal(1) / 10, safe / fac11);
            continue;
        }

        // accepted: build the dense segment
        DenseSegment seg;
        seg.t0 = t;
        seg.h = h;
        seg.rcont[0] = y;
        for (int i = 0; i < 2; ++i) {
            const auto si = static_cast<size_t>(i);
            const BigReal ydiff = y1[si] - y[si];
            const BigReal bspl = h * k1[si] - ydiff;
            seg.rcont[1][si] = ydiff;
            seg.rcont[2][si] = bspl;
            seg.rcont[3][si] = ydiff - h * k7[si] - bspl;
            seg.rcont[4][si] = h * (tb.d1 * k1[si] + tb.d3 * k3[si] + tb.d4 * k4[si] +
                                    tb.d5 * k5[si] + tb.d6 * k6[si] + tb.d7 * k7[si]);
        }
        traj.segments_.push_back(seg);

        // event detection on the accepted step
        bool terminal_hit = false;
        for (size_t ie = 0; ie < events.size(); ++ie) {
            const BigReal g1 = events[ie].fn(t + h, y1);
            const BigReal g0 = gprev[ie];
            const bool crossed = (g0 < 0 && g1 > 0 && events[ie].direction >= 0) ||
                                 (g0 > 0 && g1 < 0 && events[ie].direction <= 0);
            gprev[ie] = g1;
            if (!crossed)
                continue;
            BigReal ta = t, tc = t + h;
            BigReal ga = g0;
            for (int it = 0; it < 300; ++it) {
                const BigReal tm = (ta + tc) / 2;
                const BigReal gm = events[ie].fn(tm, seg.state_at(tm));
                if ((ga < 0) == (gm < 0)) {
                    ta = tm;
                    ga = gm;
                } else {
                    tc = tm;
                }
                if (tc - ta < h * pow10(-(static_cast<long>(precision())) + 10))
                    break;
            }
            const BigReal thit = (ta + tc) / 2;
            traj.events_.push_back({static_cast<int>(ie), thit, seg.state_at(thit)});
            if (events[ie].terminal) {
                terminal_hit = true;
                break;
            }
        }
        if (terminal_hit)
            return traj;

        t += h;
        y = y1;
        k1 = k7; // FSAL
        facold = std::max(err, BigReal("1e-4"));
        h = hnew;

        if (opts.box) {
            const auto& b = *opts.box;
            if (y[0] < b[0] || y[0] > b[1] || y[1] < b[2] || y[1] > b[3])
                throw NoReturnError("orbit left the guard box at t = " + to_decimal_string(t, 20));
        }
    }
    throw Error("integrate_ode: step budget exhausted");
}

// ---------------------------------------------------------------------------
// RegularizedSystem
// ---------------------------------------------------------------------------

RhsFn RegularizedSystem::rhs(Chart chart) const {
    const BigReal eps2 = epsilon * epsilon;
    if (chart == Chart::Original) {
        return [this, eps2](const BigReal&, const State& s, State& d) {
            const BigReal p = phi.eval(s[1] / eps2, 0);
            const BigReal q = 1 - p;
            d[0] = sys.zplus.X.eval(s[0], s[1], lambda) * p + sys.zminus.X.eval(s[0], s[1], lambda) * q;
            d[1] = sys.zplus.Y.eval(s[0], s[1], lambda) * p + sys.zminus.Y.eval(s[0], s[1], lambda) * q;
        };
    }
    return [this, eps2](const BigReal&, const State& s, State& d) {
        const BigReal y = eps2 * s[1];
        const BigReal p = phi.eval(s[1], 0);
        const BigReal q = 1 - p;
        d[0] = eps2 * (sys.zplus.X.eval(s[0], y, lambda) * p + sys.zminus.X.eval(s[0], y, lambda) * q);
        d[1] = sys.zplus.Y.eval(s[0], y, lambda) * p + sys.zminus.Y.eval(s[0], y, lambda) * q;
    };
}

BigReal RegularizedSystem::divergence(Chart chart, const State& s) const {
    const BigReal eps2 = epsilon * epsilon;
    const BigReal y = chart == Chart::Original ? s[1] : eps2 * s[1];
    const BigReal y2 = chart == Chart::Original ? s[1] / eps2 : s[1];
    const BigReal p = phi.eval(y2, 0);
    const BigReal dp = phi.eval(y2, 1);
    const BigReal q = 1 - p;
    const BigReal Xx =
        sys.zplus.X.dx().eval(s[0], y, lambda) * p + sys.zminus.X.dx().eval(s[0], y, lambda) * q;
    const BigReal Yy =
        sys.zplus.Y.dy().eval(s[0], y, lambda) * p + sys.zminus.Y.dy().eval(s[0], y, lambda) * q;
    const BigReal Ygap = sys.zplus.Y.eval(s[0], y, lambda) - sys.zminus.Y.eval(s[0], y, lambda);
    if (chart == Chart::Original)
        return Xx + Yy + Ygap * dp / eps2;
    return eps2 * Xx + eps2 * Yy + Ygap * dp;
}

Trajectory integrate(const RegularizedSystem& rs, const State& z0, const BigReal& tmax,
                     const BigReal& tol, Chart chart) {
    IntegrateOptions opts;
    opts.tol = tol;
    return integrate_ode(rs.rhs(chart), z0, BigReal(0), tmax, opts);
}

BigReal critical_manifold(const RegularizedSystem& rs, const BigReal& x) {
    const FilippovData fd = filippov_field(rs.sys, x, rs.sys.lambda0);
    return rs.phi.invert(fd.p);
}

// ---------------------------------------------------------------------------
// Difference map and breaking-parameter tuning
// ---------------------------------------------------------------------------

namespace {

constexpr double kSectionHalfWidth = 0.5; // y2-window around y2c on S3

struct SectionCross {
    BigReal y2;
    BigReal t;
};

// First transversal crossing of x = 0 with y2 near the critical height,
// following the scaled-chart flow of rs (forward) or its time reversal.
SectionCross cross_to_s3(const RegularizedSystem& rs, const BigReal& y2_start, bool backward,
                         const BigReal& y2c, const BigReal& tol) {
    const RhsFn fwd = rs.rhs(Chart::Scaled);
    RhsFn rhs = fwd;
    if (backward)
        rhs = [fwd](const BigReal& t, const State& s, State& d) {
            fwd(t, s, d);
            d[0] = -d[0];
            d[1] = -d[1];
        };

    IntegrateOptions opts;
    opts.tol = tol;
    const BigReal eps2 = rs.epsilon * rs.epsilon;
    const BigReal margin("0.5");
    const BigReal ylim = 2 * abs(y2_start) + 10;
    opts.box = {{rs.sys.mu_minus - margin, rs.sys.mu_plus + margin, -ylim, ylim}};
    const BigReal tmax = 40 / eps2;

    // S3 crossing: forward orbits cross x = 0 rightward while sliding,
    // backward ones leftward.
    EventSpec section;
    section.fn = [](const BigReal&, const State& s) { return s[0]; };
    section.direction = backward ? -1 : +1;
    section.terminal = true;

    const State start{BigReal(0), y2_start};
    Trajectory traj = integrate_ode(rhs, start, BigReal(0), tmax, opts, {section});
    for (const auto& hit : traj.events_) {
        if (abs(hit.state[1] - y2c) <= BigReal(kSectionHalfWidth))
            return {hit.state[1], hit.t};
    }
    throw NoReturnError("no section crossing near the critical height within t = " +
                        to_decimal_string(tmax, 10));
}

} // namespace

DifferenceMapSample difference_map(const PWSSystem& sys, const RegularizationFunction& phi,
                                   const BigReal& epsilon, const BigReal& lambda_tilde,
                                   const BigReal& y, const BigReal& tol) {
    if (epsilon < BigReal(1) / 100)
        throw ConfigError("difference map requires moderate epsilon >= 1e-2: below that the "
                          "exponential contraction exp(I/eps^2) makes Delta numerically "
                          "indistinguishable from its smooth part");
    if (y >= 0)
        throw ConfigError("section S0 is parametrized by y < 0");

    RegularizedSystem rs{sys, phi, epsilon, sys.lambda0 + epsilon * lambda_tilde};
    const BigReal eps2 = epsilon * epsilon;
    const BigReal y2c = critical_manifold(rs, BigReal(0));
    const BigReal y2_start = y / eps2;

    DifferenceMapSample out;
    out.y = y;
    out.delta_minus = cross_to_s3(rs, y2_start, false, y2c, tol).y2;
    out.delta_plus = cross_to_s3(rs, y2_start, true, y2c, tol).y2;
    out.delta = out.delta_minus - out.delta_plus;
    return out;
}

LambdaTuning tune_lambda(const PWSSystem& sys, const RegularizationFunction& phi,
                         const BigReal& epsilon, const BigReal& y_ref, const BigReal& lt_lo,
                         const BigReal& lt_hi, const BigReal& tol) {
    auto delta_of = [&](const BigReal& lt) {
        return difference_map(sys, phi, epsilon, lt, y_ref, tol / 100).delta;
    };
    BigReal lo = lt_lo, hi = lt_hi;
    BigReal dlo = delta_of(lo), dhi = delta_of(hi);
    if (dlo == 0)
        return {lo, sys.lambda0 + epsilon * lo, dlo};
    if (dhi == 0)
        return {hi, sys.lambda0 + epsilon * hi, dhi};
    if ((dlo < 0) == (dhi < 0))
        throw Error("tune_lambda: no sign change of Delta over the bracket [" +
                    to_decimal_string(lt_lo, 10) + ", " + to_decimal_string(lt_hi, 10) +
                    "]; Delta(lo) = " + to_decimal_string(dlo, 10) +
                    ", Delta(hi) = " + to_decimal_string(dhi, 10));
    BigReal mid(0), dmid(1);
    for (int it = 0; it < 300; ++it) {
        mid = (lo + hi) / 2;
        dmid = delta_of(mid);
        if (abs(dmid) < tol)
            break;
        if ((dmid < 0) == (dlo < 0)) {
            lo = mid;
            dlo = dmid;
        } else {
            hi = mid;
        }
    }
    return {mid, sys.lambda0 + epsilon * mid, dmid};
}

// ---------------------------------------------------------------------------
// Limit cycles
// ---------------------------------------------------------------------------

namespace {

struct ReturnHit {
    BigReal y;
    BigReal t;
};

// Return map on the section ray {x = 0, y < 0}: next crossing with dx/dt < 0,
// in the scaled chart.
ReturnHit return_map(const RegularizedSystem& rs, const BigReal& y_section, const BigReal& tol) {
    const BigReal eps2 = rs.epsilon * rs.epsilon;
    IntegrateOptions opts;
    opts.tol = tol;
    const BigReal ylim = 2 * abs(y_section) / eps2 + 20;
    opts.box = {{rs.sys.mu_minus - 1, rs.sys.mu_plus + 1, -ylim, ylim}};

    EventSpec section;
    section.fn = [](const BigReal&, const State& s) { return s[0]; };
    section.direction = -1; // bottom crossing of the Z- arc
    section.terminal = true;

    const State start{BigReal(0), y_section / eps2};
    Trajectory traj =
        integrate_ode(rs.rhs(Chart::Scaled), start, BigReal(0), 60 / eps2, opts, {section});
    if (traj.events_.empty())
        throw NoReturnError("no return to the section");
    return {traj.events_.front().state[1] * eps2, traj.events_.front().t};
}

} // namespace

std::vector<CycleInfo> find_limit_cycles(const RegularizedSystem& rs,
                                         const std::vector<BigReal>& seeds, const BigReal& tol) {
    std::vector<CycleInfo> cycles;
    for (const BigReal& seed : seeds) {
        try {
            BigReal y = seed;
            bool converged = false;
            for (int it = 0; it < 80; ++it) {
                const BigReal r = return_map(rs, y, tol).y - y;
                if (abs(r) < tol * std::max(BigReal(1), abs(y))) {
                    converged = true;
                    break;
                }
                const BigReal dy = abs(y) * BigReal("1e-8") + BigReal("1e-10");
                const BigReal rp = return_map(rs, y + dy, tol).y - (y + dy);
                const BigReal slope = (rp - r) / dy;
                if (slope == 0)
                    break;
                BigReal ynext = y - r / slope;
                if (ynext >= 0) // section is the negative-y ray
                    ynext = y / 2;
                y = ynext;
            }
            if (!converged)
                continue;

            const ReturnHit hit = return_map(rs, y, tol);
            // multiplier via the divergence integral along the cycle
            const RhsFn rhs = rs.rhs(Chart::Scaled);
            IntegrateOptions opts;
            opts.tol = tol;
            const BigReal eps2 = rs.epsilon * rs.epsilon;
            Trajectory cyc;
            {
                EventSpec section;
                section.fn = [](const BigReal&, const State& s) { return s[0]; };
                section.direction = -1;
                section.terminal = true;
                cyc = integrate_ode(rhs, {BigReal(0), y / eps2}, BigReal(0), 60 / eps2, opts,
                                    {section});
            }
            const BigReal period = hit.t;
            const BigReal div_integral = quadrature(
                [&](const BigReal& t) { return rs.divergence(Chart::Scaled, cyc.state_at(t)); },
                BigReal(0), period, BigReal("1e-25"));
            const BigReal dy = abs(y) * BigReal("1e-8") + BigReal("1e-10");
            const BigReal fd_slope =
                (return_map(rs, y + dy, tol).y - return_map(rs, y - dy, tol).y) / (2 * dy);

            cycles.push_back({y, period, exp(div_integral), fd_slope});
        } catch (const NoReturnError&) {
            continue; // escaping seed, skipped
        } catch (const StiffSegmentError&) {
            continue;
        }
    }
    return cycles;
}

} // namespace canard
