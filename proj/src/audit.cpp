#include "canard/errors.hpp"
#include "canard/pws.hpp"
#include "canard/regfun.hpp"
#include "canard/sdi.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace canard {

using boost::multiprecision::abs;

namespace {

// Strict-inequality audit with the open-condition margin: values inside the
// margin band are inconclusive rather than pass/fail.
AuditEntry strict_sign(const BigReal& value, bool want_positive, const std::string& label) {
    const BigReal margin = pow10(-20);
    AuditEntry e;
    if (abs(value) <= margin) {
        e.status = AuditStatus::Inconclusive;
        e.detail = label + " = " + to_decimal_string(value, 10) + " within 1e-20 of zero";
        return e;
    }
    const bool positive = value > 0;
    e.status = positive == want_positive ? AuditStatus::Pass : AuditStatus::Fail;
    e.detail = label + " = " + to_decimal_string(value, 10);
    return e;
}

bool is_zero_at(const BigReal& value) {
    return abs(value) <= pow10(-(static_cast<long>(precision())) + 30);
}

} // namespace

AssumptionReport audit_assumptions(const PWSSystem& sys) {
    AssumptionReport rep;
    const BigReal& l0 = sys.lambda0;
    const BigReal zero(0);

    const Poly1 yp = sys.yplus_on_sigma(l0);
    const Poly1 ym = sys.yminus_on_sigma(l0);
    const Poly1 gap = poly_sub(yp, ym);
    const Poly1 detz = sys.detz_on_sigma(l0);

    // (D): the VI3 two-fold at the origin, the sliding pattern on the domain,
    // positivity of X_sl, and the range of the return map xi.
    {
        std::string detail;
        bool ok = true, inconclusive = false;
        auto check = [&](const AuditEntry& e) {
            if (e.status == AuditStatus::Fail)
                ok = false;
            if (e.status == AuditStatus::Inconclusive)
                inconclusive = true;
            detail += e.detail + "; ";
        };

        if (!is_zero_at(poly_eval(yp, zero)) || !is_zero_at(poly_eval(ym, zero))) {
            ok = false;
            detail += "no double tangency at the origin; ";
        }
        check(strict_sign(sys.zplus.X.eval(zero, zero, l0), true, "X+(0)"));
        check(strict_sign(poly_eval(poly_derive(yp), zero), true, "Y+'(0)"));
        check(strict_sign(sys.zminus.X.eval(zero, zero, l0), false, "X-(0)"));
        check(strict_sign(poly_eval(poly_derive(ym), zero), false, "Y-'(0)"));

        // No further tangencies and no Filippov zeros inside the domain:
        // root isolation of the deflated on-sigma polynomials.
        for (const auto& [poly, name] :
             {std::pair{yp, "Y+"}, {ym, "Y-"}, {gap, "Y+-Y-"}, {detz, "det Z"}}) {
            const int val = poly_valuation(poly);
            const Poly1 stripped = poly_shift_down(poly, val);
            const int nroots = sturm_root_count(stripped, sys.mu_minus, sys.mu_plus);
            if (nroots != 0) {
                ok = false;
                detail += std::string(name) + " has " + std::to_string(nroots) +
                          " interior zero(s) besides the origin; ";
            }
        }

        // Sliding pattern at sample points.
        const BigReal xl = sys.mu_minus / 2, xr = sys.mu_plus / 2;
        if (!(poly_eval(yp, xl) < 0 && poly_eval(ym, xl) > 0)) {
            ok = false;
            detail += "no stable sliding on the left; ";
        }
        if (!(poly_eval(yp, xr) > 0 && poly_eval(ym, xr) < 0)) {
            ok = false;
            detail += "no unstable sliding on the right; ";
        }

        // min X_sl over a grid (the sign is already settled by root isolation).
        const int n = 1000;
        BigReal min_xsl = filippov_field(sys, zero, l0).X_sl;
        for (int i = 0; i <= n; ++i) {
            const BigReal x = sys.mu_minus + (sys.mu_plus - sys.mu_minus) * i / n;
            const BigReal num = poly_eval(detz, x), den = poly_eval(gap, x);
            if (den == 0)
                continue;
            min_xsl = std::min(min_xsl, num / den);
        }
        rep.min_X_sl = min_xsl;
        check(strict_sign(min_xsl, true, "min X_sl"));

        rep.sliding_structure.status = !ok           ? AuditStatus::Fail
                                       : inconclusive ? AuditStatus::Inconclusive
                                                      : AuditStatus::Pass;
        rep.sliding_structure.detail = detail;
    }

    // (D) continued: xi(x) lands in [mu-, 0) for x in (0, mu+].
    {
        bool ok = true;
        std::string detail;
        const int n = 24;
        for (int i = 1; i <= n && ok; ++i) {
            const BigReal x = sys.mu_plus * i / n;
            try {
                const BigReal xi = xi_map(sys, x, XiDirection::ForwardFromPositiveX);
                if (!(xi >= sys.mu_minus && xi < 0)) {
                    ok = false;
                    detail = "xi(" + to_decimal_string(x, 10) + ") = " + to_decimal_string(xi, 10) +
                             " outside [mu-, 0)";
                }
            } catch (const Error& e) {
                ok = false;
                detail = e.what();
            }
        }
        rep.xi_range.status = ok ? AuditStatus::Pass : AuditStatus::Fail;
        rep.xi_range.detail = ok ? "xi maps (0, mu+] into [mu-, 0)" : detail;
    }

    // (E): Z- parity under (x, t) -> (-x, -t): X- even, Y- odd in x.
    {
        rep.symmetry_residual =
            std::max(sys.zminus.X.even_residual(l0), sys.zminus.Y.odd_residual(l0));
        const bool ok = is_zero_at(rep.symmetry_residual);
        rep.symmetry.status = ok ? AuditStatus::Pass : AuditStatus::Fail;
        rep.symmetry.detail =
            "symmetry residual = " + to_decimal_string(rep.symmetry_residual, 10);
    }

    // (F): Y+'' != 0 at the origin.
    {
        rep.yplus_xx = sys.zplus.Y.dx().dx().eval(zero, zero, l0);
        rep.fold_curvature = strict_sign(abs(rep.yplus_xx), true, "|Y+''(0)|");
    }

    // Versality of the lambda-unfolding.
    {
        const BigReal ytp = sys.zplus.Y.lambda_part(zero, zero);
        const BigReal ytm = sys.zminus.Y.lambda_part(zero, zero);
        const BigReal ypx = poly_eval(poly_derive(yp), zero);
        const BigReal ymx = poly_eval(poly_derive(ym), zero);
        rep.versality_value = ytm * ypx - ytp * ymx;
        rep.versality = strict_sign(abs(rep.versality_value), true, "|versality|");
        rep.versality.detail = "Yt- Y+' - Yt+ Y-' = " + to_decimal_string(rep.versality_value, 10);
    }

    return rep;
}

std::pair<BigReal, BigReal> transversality_constants(const PWSSystem& sys,
                                                     const RegularizationFunction& phi) {
    const BigReal zero(0);
    const BigReal& l0 = sys.lambda0;
    const FilippovData fd = filippov_field(sys, zero, l0);
    const BigReal ypx = poly_eval(poly_derive(sys.yplus_on_sigma(l0)), zero);
    const BigReal ymx = poly_eval(poly_derive(sys.yminus_on_sigma(l0)), zero);
    const BigReal gap = ypx - ymx;
    const BigReal y2c = phi.invert(fd.p);
    const BigReal A = gap / fd.X_sl * phi.eval(y2c, 1);
    const BigReal ytp = sys.zplus.Y.lambda_part(zero, zero);
    const BigReal ytm = sys.zminus.Y.lambda_part(zero, zero);
    const BigReal B = (ytm * ypx - ytp * ymx) / (fd.X_sl * gap);
    return {A, B};
}

} // namespace canard
