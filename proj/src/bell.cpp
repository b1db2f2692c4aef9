#include "canard/bell.hpp"

#include "canard/errors.hpp"

namespace canard {

BigReal binomial(int n, int k) {
    if (k < 0 || k > n)
        return BigReal(0);
    BigReal r(1);
    for (int j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

BigReal bell_polynomial(int m, int n, const std::vector<BigReal>& args) {
    if (n < 1 || n > m)
        throw Error("bell_polynomial: need 1 <= n <= m, got m=" + std::to_string(m) +
                    ", n=" + std::to_string(n));
    if (static_cast<int>(args.size()) < m - n + 1)
        throw Error("bell_polynomial: need m-n+1 arguments");

    // B_{m,n} = sum_j C(m-1, j-1) x_j B_{m-j, n-1}, with B_{0,0} = 1.
    // table[mm][nn] indexed by remaining (mm, nn).
    std::vector<std::vector<BigReal>> table(static_cast<size_t>(m) + 1,
                                            std::vector<BigReal>(static_cast<size_t>(n) + 1, BigReal(0)));
    table[0][0] = 1;
    for (int nn = 1; nn <= n; ++nn) {
        for (int mm = nn; mm <= m; ++mm) {
            BigReal s(0);
            for (int j = 1; j <= mm - nn + 1; ++j) {
                if (j > static_cast<int>(args.size()))
                    break;
                s += binomial(mm - 1, j - 1) * args[static_cast<size_t>(j - 1)] *
                     table[static_cast<size_t>(mm - j)][static_cast<size_t>(nn - 1)];
            }
            table[static_cast<size_t>(mm)][static_cast<size_t>(nn)] = s;
        }
    }
    return table[static_cast<size_t>(m)][static_cast<size_t>(n)];
}

BigReal faa_di_bruno(const std::vector<BigReal>& outer_derivs,
                     const std::vector<BigReal>& inner_derivs, int m) {
    if (static_cast<int>(outer_derivs.size()) <= m || static_cast<int>(inner_derivs.size()) <= m)
        throw Error("faa_di_bruno: derivative arrays must reach order m");
    std::vector<BigReal> inner_shifted(inner_derivs.begin() + 1, inner_derivs.end());
    BigReal s(0);
    for (int n = 1; n <= m; ++n)
        s += outer_derivs[static_cast<size_t>(n)] * bell_polynomial(m, n, inner_shifted);
    return s;
}

} // namespace canard
