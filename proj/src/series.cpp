#include "canard/series.hpp"

#include "canard/errors.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace canard {

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order())
        throw CenterMismatchError("operands have different truncation orders");
    if (a.center() != b.center())
        throw CenterMismatchError("operands have different centers");
}

} // namespace

TruncatedSeries::TruncatedSeries(BigReal center, std::vector<BigReal> coeffs)
    : center_(std::move(center)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        coeffs_.emplace_back(0);
}

TruncatedSeries TruncatedSeries::constant(const BigReal& value, int order, const BigReal& center) {
    std::vector<BigReal> c(static_cast<size_t>(order) + 1, BigReal(0));
    c[0] = value;
    return {center, std::move(c)};
}

TruncatedSeries TruncatedSeries::identity(int order, const BigReal& center) {
    std::vector<BigReal> c(static_cast<size_t>(order) + 1, BigReal(0));
    c[0] = center;
    if (order >= 1)
        c[1] = 1;
    return {center, std::move(c)};
}

TruncatedSeries TruncatedSeries::from_derivatives(const BigReal& center,
                                                  const std::vector<BigReal>& derivs, int order) {
    std::vector<BigReal> c(static_cast<size_t>(order) + 1, BigReal(0));
    BigReal fact(1);
    for (size_t n = 0; n < c.size(); ++n) {
        if (n > 0)
            fact *= static_cast<int>(n);
        if (n < derivs.size())
            c[n] = derivs[n] / fact;
    }
    return {center, std::move(c)};
}

BigReal TruncatedSeries::derivative_at_center(int n) const {
    BigReal fact(1);
    for (int j = 2; j <= n; ++j)
        fact *= j;
    return coeffs_[static_cast<size_t>(n)] * fact;
}

BigReal TruncatedSeries::eval(const BigReal& x) const {
    const BigReal t = x - center_;
    BigReal acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    std::vector<BigReal> c(coeffs_.begin(), coeffs_.begin() + std::min<size_t>(coeffs_.size(), order + 1));
    c.resize(static_cast<size_t>(order) + 1, BigReal(0));
    return {center_, std::move(c)};
}

TruncatedSeries TruncatedSeries::extended(int order) const { return truncated(order); }

TruncatedSeries TruncatedSeries::derivative() const {
    if (order() == 0)
        return constant(BigReal(0), 0, center_);
    std::vector<BigReal> c(coeffs_.size() - 1);
    for (size_t n = 1; n < coeffs_.size(); ++n)
        c[n - 1] = coeffs_[n] * static_cast<int>(n);
    return {center_, std::move(c)};
}

TruncatedSeries TruncatedSeries::antiderivative() const {
    std::vector<BigReal> c(coeffs_.size() + 1, BigReal(0));
    for (size_t n = 0; n < coeffs_.size(); ++n)
        c[n + 1] = coeffs_[n] / static_cast<int>(n + 1);
    return {center_, std::move(c)};
}

TruncatedSeries TruncatedSeries::shifted_down(int m) const {
    if (m > order())
        throw Error("shifted_down: shift exceeds series order");
    for (int n = 0; n < m; ++n) {
        if (coeffs_[static_cast<size_t>(n)] != 0)
            throw Error("shifted_down: nonzero low-order coefficient, series has no factor t^" +
                        std::to_string(m));
    }
    std::vector<BigReal> c(coeffs_.begin() + m, coeffs_.end());
    return {center_, std::move(c)};
}

TruncatedSeries TruncatedSeries::operator-() const {
    std::vector<BigReal> c(coeffs_.size());
    for (size_t n = 0; n < coeffs_.size(); ++n)
        c[n] = -coeffs_[n];
    return {center_, std::move(c)};
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    std::vector<BigReal> c(a.coeffs_.size());
    for (size_t n = 0; n < c.size(); ++n)
        c[n] = a.coeffs_[n] + b.coeffs_[n];
    return {a.center_, std::move(c)};
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    std::vector<BigReal> c(a.coeffs_.size());
    for (size_t n = 0; n < c.size(); ++n)
        c[n] = a.coeffs_[n] - b.coeffs_[n];
    return {a.center_, std::move(c)};
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    const size_t m = a.coeffs_.size();
    std::vector<BigReal> c(m, BigReal(0));
    for (size_t i = 0; i < m; ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (size_t j = 0; i + j < m; ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return {a.center_, std::move(c)};
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    if (b.coeffs_[0] == 0)
        throw NonunitSeriesError();
    const size_t m = a.coeffs_.size();
    std::vector<BigReal> c(m, BigReal(0));
    for (size_t n = 0; n < m; ++n) {
        BigReal s = a.coeffs_[n];
        for (size_t j = 1; j <= n; ++j)
            s -= b.coeffs_[j] * c[n - j];
        c[n] = s / b.coeffs_[0];
    }
    return {a.center_, std::move(c)};
}

TruncatedSeries operator*(const BigReal& s, const TruncatedSeries& a) {
    std::vector<BigReal> c(a.coeffs_.size());
    for (size_t n = 0; n < c.size(); ++n)
        c[n] = s * a.coeffs_[n];
    return {a.center_, std::move(c)};
}

TruncatedSeries operator+(const BigReal& s, const TruncatedSeries& a) {
    std::vector<BigReal> c = a.coeffs_;
    c[0] += s;
    return {a.center_, std::move(c)};
}

TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    if (inner.coeffs()[0] != outer.center())
        throw CenterMismatchError("constant term of inner series must equal the outer center");
    const int N = inner.order();
    // Horner composition in the shifted inner series (zero constant term).
    TruncatedSeries shifted = inner;
    {
        std::vector<BigReal> c = inner.coeffs();
        c[0] = 0;
        shifted = TruncatedSeries(inner.center(), std::move(c));
    }
    TruncatedSeries acc = TruncatedSeries::constant(BigReal(0), N, inner.center());
    const int M = std::min(outer.order(), N);
    for (int n = M; n >= 0; --n)
        acc = acc * shifted + TruncatedSeries::constant(outer[n], N, inner.center());
    return acc;
}

TruncatedSeries series_reversion(const TruncatedSeries& f) {
    if (f.center() != 0 || f.coeffs()[0] != 0 || f.order() < 1 || f[1] == 0)
        throw NonInvertibleJetError();
    const int N = f.order();
    // Start from the linear inverse and double the attained order each pass:
    //   g <- g - (f(g) - y) / f'(g)
    std::vector<BigReal> g{BigReal(0), 1 / f[1]};
    const TruncatedSeries fp = f.derivative().extended(N);
    int attained = 1;
    while (attained < N) {
        attained = std::min(2 * attained, N);
        g.resize(static_cast<size_t>(attained) + 1, BigReal(0));
        TruncatedSeries gs(BigReal(0), g);
        TruncatedSeries fg = series_compose(f.truncated(attained), gs);
        TruncatedSeries fpg = series_compose(fp.truncated(attained), gs);
        TruncatedSeries residual = fg - TruncatedSeries::identity(attained);
        TruncatedSeries correction = residual / fpg;
        gs = gs - correction;
        g = gs.coeffs();
    }
    return {BigReal(0), std::move(g)};
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
    const int N = a.order();
    std::vector<BigReal> e(static_cast<size_t>(N) + 1, BigReal(0));
    e[0] = boost::multiprecision::exp(a[0]);
    // e' = a' e  =>  n e_n = sum_{j=1}^{n} j a_j e_{n-j}
    for (int n = 1; n <= N; ++n) {
        BigReal s(0);
        for (int j = 1; j <= n; ++j)
            s += j * a[j] * e[static_cast<size_t>(n - j)];
        e[static_cast<size_t>(n)] = s / n;
    }
    return {a.center(), std::move(e)};
}

} // namespace canard
