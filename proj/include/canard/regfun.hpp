#pragma once

#include "canard/bigreal.hpp"
#include "canard/series.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace canard {

// Smooth bump built from B0(x) = exp(-1/x) (x > 0):
//   B1 = B0(x) / (B0(x) + B0(1-x)),  B2(x) = B1(x-1),  B3(x) = B2(x^2),
//   B(x) = 1 - B3(x).
// B == 1 on [-1, 1] and B == 0 for |x| >= sqrt(2); the scaled B_u(y) = B(y/u)
// is 1 on [-u, u] and supported inside (-2u, 2u).
class SmoothBump {
public:
    explicit SmoothBump(BigReal upsilon);

    const BigReal& upsilon() const { return upsilon_; }

    // Value (n = 0) or first derivative (n = 1) of B_u at y.
    BigReal eval(const BigReal& y, int n = 0) const;

    // Taylor series of the unscaled B at x0, to any order. Constant on the
    // plateau and outside the support (B is flat there to all orders).
    static TruncatedSeries unscaled_taylor_at(const BigReal& x0, int order);

    // Taylor series of B_u(y - shift) in y at y0.
    TruncatedSeries taylor_at(const BigReal& y0, const BigReal& shift, int order) const;

    // sup |B'| of the unscaled bump (numerical, cached).
    static BigReal sup_derivative();

private:
    BigReal upsilon_;
};

enum class RegKind { ReferenceArctan, PolynomialJet, Blended };

// Degree-2k polynomial jet about y2c, stored as Taylor coefficients in the
// monomial basis centered at y2c.
struct PsiJet {
    int k = 0;
    BigReal center{0};
    std::vector<BigReal> coeffs; // size 2k+1

    BigReal eval(const BigReal& y, int n = 0) const;
    TruncatedSeries taylor_at(const BigReal& y0, int order) const;
    BigReal derivative_at_center(int n) const;
};

// A regularization function: the reference arctan sigmoid, a raw polynomial
// jet, or a bump-blended combination  phi(y)(1 - B_u(y-c)) + psi(y) B_u(y-c).
class RegularizationFunction {
public:
    static RegularizationFunction reference_arctan();
    static RegularizationFunction polynomial_jet(PsiJet jet);
    static RegularizationFunction blended(RegularizationFunction base, PsiJet jet, BigReal upsilon);

    RegKind kind() const { return kind_; }

    // n-th derivative at y (n = 0 is the value).
    BigReal eval(const BigReal& y, int n = 0) const;

    // Unique y with f(y) = p, p in (0,1). Closed form for the reference kind,
    // safeguarded Newton with a bisection bracket otherwise.
    BigReal invert(const BigReal& p) const;

    // Taylor series at an arbitrary point.
    TruncatedSeries taylor_at(const BigReal& y0, int order) const;

    const PsiJet* jet() const { return jet_ ? &*jet_ : nullptr; }
    const BigReal* upsilon() const { return upsilon_ ? &*upsilon_ : nullptr; }
    const RegularizationFunction* base() const { return base_.get(); }

    std::string kind_name() const;

private:
    RegularizationFunction() = default;
    RegKind kind_ = RegKind::ReferenceArctan;
    std::optional<PsiJet> jet_;
    std::optional<BigReal> upsilon_;
    std::shared_ptr<const RegularizationFunction> base_;
};

// phi_k(y) = phi(y)(1 - B_u(y - y2c)) + psi(y) B_u(y - y2c).
RegularizationFunction blend(const RegularizationFunction& phi, const PsiJet& psi,
                             const BigReal& upsilon);

struct MonotonicityReport {
    bool pass = false;
    BigReal grid_min{0};
    BigReal grid_argmin{0};
    // For blended kinds: lower bound for phi_k' on the blend zone from the
    // three-term split (grid of the first two terms minus the bump-slope
    // bound on the remainder). Numerical, not a proof.
    std::optional<BigReal> blend_zone_bound;
    std::string detail;
};

// Grid minimum of f' over [lo, hi] plus, for blended kinds, the analytic
// bound decomposition on the blend zone. Passes only when both are strictly
// positive.
MonotonicityReport monotonicity_audit(const RegularizationFunction& f, const BigReal& lo,
                                      const BigReal& hi, int grid_n);

} // namespace canard
