#include "canard/synthesis.hpp"

#include "canard/errors.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace canard {

using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

BigReal factorial(int n) {
    BigReal f(1);
    for (int j = 2; j <= n; ++j)
        f *= j;
    return f;
}

// Odd-index coefficient a_{2i+1} of the I series for a jet given by
// derivative values at y2c (true derivatives, not Taylor coefficients).
BigReal ledger_coefficient(const PWSSystem& sys, const BigReal& y2c,
                           const std::vector<BigReal>& derivs, int i) {
    const int order = 2 * i + 2;
    const TruncatedSeries jet = TruncatedSeries::from_derivatives(y2c, derivs, order + 1);
    const TruncatedSeries I = sdi_series_from_jet(sys, jet, order);
    return I[2 * i + 1];
}

} // namespace

std::vector<BigReal> build_target_polynomial(int k) {
    if (k < 2)
        throw ConfigError("build_target_polynomial: k >= 2 required");
    // expand prod_{j=1}^{k-1} (x2 - j)
    std::vector<BigReal> poly{BigReal(1)};
    for (int j = 1; j < k; ++j) {
        std::vector<BigReal> next(poly.size() + 1, BigReal(0));
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= BigReal(j) * poly[i];
        }
        poly = std::move(next);
    }
    return poly; // poly[i-1] = Phi1^{(2i)}, poly[k-1] = 1
}

BigReal compute_C2k(const PWSSystem& sys, int i) {
    if (i < 1)
        throw ConfigError("compute_C2k: i >= 1 required");
    const BigReal zero(0);
    const BigReal& l0 = sys.lambda0;
    const BigReal ypx = poly_eval(poly_derive(sys.yplus_on_sigma(l0)), zero);
    const BigReal ymx = poly_eval(poly_derive(sys.yminus_on_sigma(l0)), zero);
    const BigReal ypxx = sys.zplus.Y.dx().dx().eval(zero, zero, l0);
    const BigReal detzx = poly_eval(poly_derive(sys.detz_on_sigma(l0)), zero);
    const BigReal gap = ypx - ymx;
    const BigReal ratio = ypxx * ymx / (2 * gap * gap);
    return 4 * i * gap * gap / detzx * pow(ratio, 2 * i - 1);
}

BigReal compute_J(const PWSSystem& sys, const std::vector<BigReal>& derivs_at_y2c, int i) {
    if (static_cast<int>(derivs_at_y2c.size()) < 2 || derivs_at_y2c[1] <= 0)
        throw Error("compute_J: jet needs a value and a positive slope at y2c");
    std::vector<BigReal> d = derivs_at_y2c;
    d.resize(static_cast<size_t>(2 * i) + 1, BigReal(0));
    d[static_cast<size_t>(2 * i)] = 0; // the affine extraction point
    const SigmaData sd = build_sigma_data(sys);
    // the jet's constant term must match the two-fold height
    if (abs(d[0] - sd.p0) > pow10(-(static_cast<long>(precision())) + 30))
        throw Error("compute_J: jet value at y2c must equal the convex coefficient p(0)");
    const RegularizationFunction base = RegularizationFunction::reference_arctan();
    const BigReal y2c = base.invert(sd.p0);
    return ledger_coefficient(sys, y2c, d, i) * factorial(2 * i + 1);
}

PsiConstruction construct_psi(const SynthesisSpec& spec) {
    if (spec.k < 2)
        throw ConfigError("synthesis requires k >= 2");
    if (!(spec.delta > 0))
        throw ConfigError("synthesis requires delta > 0");
    if (spec.order < 2 * spec.k + 1)
        throw ConfigError("series order " + std::to_string(spec.order) +
                          " insufficient for k = " + std::to_string(spec.k) + "; need at least " +
                          std::to_string(2 * spec.k + 1));

    const SigmaData sd = build_sigma_data(spec.sys);
    PsiConstruction out;
    out.y2c = spec.base.invert(sd.p0);
    out.phip = spec.base.eval(out.y2c, 1);
    out.Phi1 = build_target_polynomial(spec.k);

    const int k = spec.k;
    std::vector<BigReal> recursion_jet(static_cast<size_t>(2 * k) + 1, BigReal(0));
    recursion_jet[0] = sd.p0;
    recursion_jet[1] = out.phip;
    std::vector<BigReal> final_jet = recursion_jet;

    for (int i = 1; i <= k; ++i) {
        const BigReal Ji =
            ledger_coefficient(spec.sys, out.y2c, recursion_jet, i) * factorial(2 * i + 1);
        const BigReal Ci = compute_C2k(spec.sys, i);
        const BigReal phip_pow = pow(out.phip, 2 * i - 1);
        const BigReal psi0 = -Ji * phip_pow / Ci;
        const BigReal detune = factorial(2 * i + 1) * pow(spec.delta, 2 * (k - i)) * phip_pow / Ci *
                               out.Phi1[static_cast<size_t>(i - 1)];
        final_jet[static_cast<size_t>(2 * i)] = psi0 + detune;
        recursion_jet[static_cast<size_t>(2 * i)] =
            spec.mode == LedgerMode::Exact ? final_jet[static_cast<size_t>(2 * i)] : psi0;

        out.C.push_back(Ci);
        out.J.push_back(Ji);
        out.Psi0.push_back(psi0);
    }

    out.psi.k = k;
    out.psi.center = out.y2c;
    out.psi.coeffs.resize(static_cast<size_t>(2 * k) + 1);
    for (int n = 0; n <= 2 * k; ++n)
        out.psi.coeffs[static_cast<size_t>(n)] = final_jet[static_cast<size_t>(n)] / factorial(n);
    return out;
}

SynthesisResult synthesize(const SynthesisSpec& spec) {
    const AssumptionReport audit = audit_assumptions(spec.sys);
    if (!audit.fold_curvature.passed())
        throw AuditError("(F) fails: " + audit.fold_curvature.detail);
    if (!audit.sliding_structure.passed())
        throw AuditError("VI3 structure fails: " + audit.sliding_structure.detail);

    SynthesisResult res;
    res.mode = spec.mode;
    res.expected_roots = spec.k - 1;
    res.construction = construct_psi(spec);
    res.phi_k = blend(spec.base, res.construction.psi, spec.upsilon);

    const BigReal& y2c = res.construction.y2c;
    res.monotonicity =
        monotonicity_audit(res.phi_k, y2c - 3 * spec.upsilon, y2c + 3 * spec.upsilon, 2000);
    if (!res.monotonicity.pass) {
        res.diagnostics = "monotonicity audit failed: upsilon too large for this jet; " +
                          res.monotonicity.detail;
        res.ok = false;
        return res;
    }

    std::vector<BigReal> jet_coeffs = res.construction.psi.coeffs;
    jet_coeffs.resize(static_cast<size_t>(spec.order) + 2, BigReal(0));
    res.I = sdi_series_from_jet(spec.sys, TruncatedSeries(y2c, std::move(jet_coeffs)), spec.order);

    const BigReal top = 2 * spec.delta * sqrt(BigReal(spec.k));
    res.roots = find_simple_roots(res.I, spec.delta / 1000, top,
                                  pow10(-(static_cast<long>(precision())) + 20), 8000);
    int simple = 0;
    for (const auto& r : res.roots)
        if (r.simple)
            ++simple;
    res.root_count_ok = (simple == res.expected_roots);
    if (!res.root_count_ok)
        res.diagnostics = "found " + std::to_string(simple) + " simple roots, expected " +
                          std::to_string(res.expected_roots) +
                          (simple < res.expected_roots ? ": delta too large" : "");
    res.ok = res.root_count_ok;
    return res;
}

BigReal tune_delta(const SynthesisSpec& spec_base, int target_roots, const BigReal& lo,
                   const BigReal& hi) {
    if (!(lo > 0 && lo < hi))
        throw ConfigError("tune_delta: invalid bracket");
    auto count = [&](const BigReal& delta) {
        SynthesisSpec s = spec_base;
        s.delta = delta;
        const PsiConstruction pc = construct_psi(s);
        std::vector<BigReal> jet_coeffs = pc.psi.coeffs;
        jet_coeffs.resize(static_cast<size_t>(s.order) + 2, BigReal(0));
        const TruncatedSeries I =
            sdi_series_from_jet(s.sys, TruncatedSeries(pc.y2c, std::move(jet_coeffs)), s.order);
        const auto roots = find_simple_roots(I, delta / 1000, 2 * delta * sqrt(BigReal(s.k)),
                                             pow10(-(static_cast<long>(precision())) + 20), 8000);
        int n = 0;
        for (const auto& r : roots)
            if (r.simple)
                ++n;
        return n;
    };

    BigReal a = lo, b = hi;
    if (count(a) < target_roots || count(b) >= target_roots)
        throw Error("tune_delta: no root-count transition through " +
                    std::to_string(target_roots) + " in the bracket");
    while (b - a > a * pow10(-4)) {
        const BigReal mid = (a + b) / 2;
        if (count(mid) >= target_roots)
            a = mid;
        else
            b = mid;
    }
    return a;
}

} // namespace canard
