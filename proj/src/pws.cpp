#include "canard/pws.hpp"

#include "canard/errors.hpp"

namespace canard {

void Poly2Affine::ensure(int i, int j) {
    if (i >= nx_)
        nx_ = i + 1;
    if (j >= ny_)
        ny_ = j + 1;
    c0_.resize(static_cast<size_t>(nx_));
    c1_.resize(static_cast<size_t>(nx_));
    for (auto* m : {&c0_, &c1_})
        for (auto& row : *m)
            row.resize(static_cast<size_t>(ny_), BigReal(0));
}

void Poly2Affine::set_term(int i, int j, const BigReal& c0, const BigReal& c1) {
    ensure(i, j);
    c0_[static_cast<size_t>(i)][static_cast<size_t>(j)] = c0;
    c1_[static_cast<size_t>(i)][static_cast<size_t>(j)] = c1;
}

BigReal Poly2Affine::eval(const BigReal& x, const BigReal& y, const BigReal& lambda) const {
    BigReal acc(0);
    for (int i = nx_ - 1; i >= 0; --i) {
        BigReal row(0);
        for (int j = ny_ - 1; j >= 0; --j) {
            const auto si = static_cast<size_t>(i);
            const auto sj = static_cast<size_t>(j);
            row = row * y + (c0_[si][sj] + lambda * c1_[si][sj]);
        }
        acc = acc * x + row;
    }
    return acc;
}

Poly2Affine Poly2Affine::dx() const {
    Poly2Affine d;
    for (int i = 1; i < nx_; ++i)
        for (int j = 0; j < ny_; ++j)
            d.set_term(i - 1, j, c0_[static_cast<size_t>(i)][static_cast<size_t>(j)] * i,
                       c1_[static_cast<size_t>(i)][static_cast<size_t>(j)] * i);
    return d;
}

Poly2Affine Poly2Affine::dy() const {
    Poly2Affine d;
    for (int i = 0; i < nx_; ++i)
        for (int j = 1; j < ny_; ++j)
            d.set_term(i, j - 1, c0_[static_cast<size_t>(i)][static_cast<size_t>(j)] * j,
                       c1_[static_cast<size_t>(i)][static_cast<size_t>(j)] * j);
    return d;
}

BigReal Poly2Affine::lambda_part(const BigReal& x, const BigReal& y) const {
    BigReal acc(0);
    for (int i = nx_ - 1; i >= 0; --i) {
        BigReal row(0);
        for (int j = ny_ - 1; j >= 0; --j)
            row = row * y + c1_[static_cast<size_t>(i)][static_cast<size_t>(j)];
        acc = acc * x + row;
    }
    return acc;
}

Poly1 Poly2Affine::on_sigma(const BigReal& lambda) const {
    Poly1 p(static_cast<size_t>(std::max(nx_, 1)), BigReal(0));
    for (int i = 0; i < nx_; ++i)
        p[static_cast<size_t>(i)] = c0_[static_cast<size_t>(i)][0] + lambda * c1_[static_cast<size_t>(i)][0];
    return p;
}

BigReal Poly2Affine::even_residual(const BigReal& lambda) const {
    BigReal r(0);
    for (int i = 1; i < nx_; i += 2)
        for (int j = 0; j < ny_; ++j)
            r = std::max(r, abs(c0_[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                                lambda * c1_[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    return r;
}

BigReal Poly2Affine::odd_residual(const BigReal& lambda) const {
    BigReal r(0);
    for (int i = 0; i < nx_; i += 2)
        for (int j = 0; j < ny_; ++j)
            r = std::max(r, abs(c0_[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                                lambda * c1_[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    return r;
}

std::vector<Poly2Affine::Term> Poly2Affine::terms() const {
    std::vector<Term> out;
    for (int i = 0; i < nx_; ++i)
        for (int j = 0; j < ny_; ++j) {
            const auto& a = c0_[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const auto& b = c1_[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (a != 0 || b != 0)
                out.push_back({i, j, a, b});
        }
    return out;
}

Poly1 PWSSystem::detz_on_sigma(const BigReal& lambda) const {
    return poly_sub(poly_mul(xminus_on_sigma(lambda), yplus_on_sigma(lambda)),
                    poly_mul(xplus_on_sigma(lambda), yminus_on_sigma(lambda)));
}

LieTangencyData lie_tangency_data(const PlanarVectorField& field, const BigReal& x,
                                  const BigReal& lambda) {
    const BigReal zero(0);
    LieTangencyData out;
    const BigReal Xv = field.X.eval(x, zero, lambda);
    out.Zh = field.Y.eval(x, zero, lambda);
    // Z^2(h) = grad(Y) . Z = Y_x X + Y_y Y.
    out.Z2h = field.Y.dx().eval(x, zero, lambda) * Xv + field.Y.dy().eval(x, zero, lambda) * out.Zh;
    out.field_nonzero = (Xv != 0 || out.Zh != 0);
    out.tangency = (out.Zh == 0) && out.field_nonzero;
    return out;
}

SigmaClassification classify_sigma_point(const PWSSystem& sys, const BigReal& x,
                                         const BigReal& lambda) {
    const LieTangencyData up = lie_tangency_data(sys.zplus, x, lambda);
    const LieTangencyData dn = lie_tangency_data(sys.zminus, x, lambda);

    if (up.Zh != 0 && dn.Zh != 0) {
        if (up.Zh * dn.Zh > 0)
            return {SigmaKind::Crossing, std::nullopt};
        if (up.Zh < 0 && dn.Zh > 0)
            return {SigmaKind::StableSliding, std::nullopt};
        return {SigmaKind::UnstableSliding, std::nullopt};
    }

    TangencyDetail det;
    det.above = (up.Zh == 0);
    det.below = (dn.Zh == 0);
    if (det.above) {
        if (up.Z2h == 0)
            throw DegenerateTangencyError();
        det.visible_above = (up.Z2h > 0);
    }
    if (det.below) {
        if (dn.Z2h == 0)
            throw DegenerateTangencyError();
        det.visible_below = (dn.Z2h < 0);
    }
    if (det.above && det.below) {
        const bool va = *det.visible_above;
        const bool vb = *det.visible_below;
        det.twofold = (va && vb) ? TwoFoldType::VV : (!va && !vb) ? TwoFoldType::II : TwoFoldType::VI;
        if (det.twofold == TwoFoldType::VI) {
            const BigReal zero(0);
            const BigReal Xp = sys.zplus.X.eval(x, zero, lambda);
            const BigReal Xm = sys.zminus.X.eval(x, zero, lambda);
            const BigReal Ypx = sys.zplus.Y.dx().eval(x, zero, lambda);
            const BigReal Ymx = sys.zminus.Y.dx().eval(x, zero, lambda);
            det.vi3 = (Xp > 0) && (Ypx > 0) && (Xm < 0) && (Ymx < 0);
        }
    }
    return {SigmaKind::Tangency, det};
}

FilippovData filippov_field(const PWSSystem& sys, const BigReal& x, const BigReal& lambda) {
    const BigReal zero(0);
    const BigReal Yp = sys.zplus.Y.eval(x, zero, lambda);
    const BigReal Ym = sys.zminus.Y.eval(x, zero, lambda);
    const BigReal Xp = sys.zplus.X.eval(x, zero, lambda);
    const BigReal Xm = sys.zminus.X.eval(x, zero, lambda);

    if (Yp == 0 && Ym == 0) {
        // Two-fold: both numerator and denominator vanish linearly; take the
        // ratio of x-derivatives.
        const BigReal Ypx = sys.zplus.Y.dx().eval(x, zero, lambda);
        const BigReal Ymx = sys.zminus.Y.dx().eval(x, zero, lambda);
        const BigReal den = Ypx - Ymx;
        if (den == 0)
            throw Error("filippov_field: vanishing denominator without the two-fold structure");
        const BigReal detzx = (sys.zminus.X.dx().eval(x, zero, lambda) * Yp +
                               Xm * Ypx - sys.zplus.X.dx().eval(x, zero, lambda) * Ym - Xp * Ymx);
        return {detzx / den, -Ymx / den};
    }
    if (Yp * Ym >= 0)
        throw NotSlidingError("x = " + to_decimal_string(x, 20));
    const BigReal den = Yp - Ym;
    return {(Xm * Yp - Xp * Ym) / den, -Ym / den};
}

} // namespace canard
