#include "canard/poly.hpp"

#include "canard/errors.hpp"

namespace canard {

BigReal poly_eval(const Poly1& p, const BigReal& x) {
    BigReal acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Poly1 poly_derive(const Poly1& p) {
    if (p.size() <= 1)
        return {BigReal(0)};
    Poly1 d(p.size() - 1);
    for (size_t n = 1; n < p.size(); ++n)
        d[n - 1] = p[n] * static_cast<int>(n);
    return d;
}

Poly1 poly_mul(const Poly1& a, const Poly1& b) {
    Poly1 c(a.size() + b.size() - 1, BigReal(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

Poly1 poly_sub(const Poly1& a, const Poly1& b) {
    Poly1 c(std::max(a.size(), b.size()), BigReal(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size())
            c[i] += a[i];
        if (i < b.size())
            c[i] -= b[i];
    }
    return c;
}

int poly_degree(const Poly1& p) {
    for (int n = static_cast<int>(p.size()) - 1; n >= 0; --n)
        if (p[static_cast<size_t>(n)] != 0)
            return n;
    return -1;
}

int poly_valuation(const Poly1& p) {
    const int deg = poly_degree(p);
    if (deg < 0)
        return static_cast<int>(p.size());
    for (int n = 0; n <= deg; ++n)
        if (p[static_cast<size_t>(n)] != 0)
            return n;
    return deg + 1;
}

Poly1 poly_shift_down(const Poly1& p, int m) {
    if (poly_valuation(p) < m)
        throw Error("poly_shift_down: valuation too small");
    if (static_cast<int>(p.size()) <= m)
        return {BigReal(0)};
    return Poly1(p.begin() + m, p.end());
}

namespace {

// Remainder of a by b with relative coefficient cleanup, for the Sturm chain.
Poly1 poly_rem_clean(Poly1 a, const Poly1& b, const BigReal& threshold) {
    const int db = poly_degree(b);
    int da = poly_degree(a);
    while (da >= db && da >= 0) {
        const BigReal q = a[static_cast<size_t>(da)] / b[static_cast<size_t>(db)];
        for (int j = 0; j <= db; ++j)
            a[static_cast<size_t>(da - db + j)] -= q * b[static_cast<size_t>(j)];
        a[static_cast<size_t>(da)] = 0;
        da = poly_degree(a);
    }
    BigReal scale(0);
    for (const auto& c : a)
        scale = std::max(scale, abs(c));
    if (scale > 0) {
        for (auto& c : a)
            if (abs(c) < scale * threshold)
                c = 0;
    }
    a.resize(static_cast<size_t>(std::max(0, poly_degree(a))) + 1);
    return a;
}

int sign_variations(const std::vector<Poly1>& chain, const BigReal& x) {
    int prev = 0, var = 0;
    for (const auto& p : chain) {
        const BigReal v = poly_eval(p, x);
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s != 0) {
            if (prev != 0 && s != prev)
                ++var;
            prev = s;
        }
    }
    return var;
}

} // namespace

int sturm_root_count(const Poly1& p, const BigReal& a, const BigReal& b) {
    if (poly_degree(p) <= 0)
        return 0;
    const BigReal threshold = pow10(-(static_cast<long>(precision())) + 15);
    std::vector<Poly1> chain{p, poly_derive(p)};
    while (poly_degree(chain.back()) > 0) {
        Poly1 r = poly_rem_clean(chain[chain.size() - 2], chain.back(), threshold);
        if (poly_degree(r) < 0)
            break;
        for (auto& c : r)
            c = -c;
        chain.push_back(std::move(r));
    }
    return sign_variations(chain, a) - sign_variations(chain, b);
}

} // namespace canard
