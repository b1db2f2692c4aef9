#pragma once

#include "canard/bigreal.hpp"

#include <vector>

namespace canard {

// Degree-N Taylor polynomial in t = (x - center) with BigReal coefficients.
// All ring operations truncate consistently at the common order N.
class TruncatedSeries {
public:
    TruncatedSeries(BigReal center, std::vector<BigReal> coeffs);

    // Series with the given constant term and zero higher coefficients.
    static TruncatedSeries constant(const BigReal& value, int order, const BigReal& center = BigReal(0));

    // The series of x itself: center + t.
    static TruncatedSeries identity(int order, const BigReal& center = BigReal(0));

    // Build from a polynomial's derivative tower at the center: coeff[n] = d[n]/n!.
    static TruncatedSeries from_derivatives(const BigReal& center, const std::vector<BigReal>& derivs, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigReal& center() const { return center_; }
    const BigReal& operator[](int n) const { return coeffs_[static_cast<size_t>(n)]; }
    const std::vector<BigReal>& coeffs() const { return coeffs_; }

    // n-th derivative value at the center: coeff[n] * n!.
    BigReal derivative_at_center(int n) const;

    BigReal eval(const BigReal& x) const;

    TruncatedSeries truncated(int order) const;
    TruncatedSeries extended(int order) const; // pad with zeros

    TruncatedSeries derivative() const;        // order drops by one
    TruncatedSeries antiderivative() const;    // constant term 0, order grows by one

    // Divide by t^m; requires the m lowest coefficients to vanish exactly.
    // The order drops by m. Used for the L'Hospital extension of "0/0"
    // rational series.
    TruncatedSeries shifted_down(int m) const;

    TruncatedSeries operator-() const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);

    friend TruncatedSeries operator*(const BigReal& s, const TruncatedSeries& a);
    friend TruncatedSeries operator+(const BigReal& s, const TruncatedSeries& a);

private:
    BigReal center_;
    std::vector<BigReal> coeffs_;
};

// outer(inner(x)) truncated at inner's order. Requires the constant term of
// inner to equal outer's center exactly.
TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// Compositional inverse: g with f(g(y)) = y + O(y^{N+1}).
// Requires f(0) = 0 (center 0, zero constant term) and f'(0) != 0.
// Newton iteration on series, order-doubling.
TruncatedSeries series_reversion(const TruncatedSeries& f);

// exp of a series (any constant term).
TruncatedSeries series_exp(const TruncatedSeries& a);

} // namespace canard
