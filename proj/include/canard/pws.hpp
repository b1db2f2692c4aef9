#pragma once

#include "canard/bigreal.hpp"
#include "canard/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace canard {

class RegularizationFunction;

// Bivariate polynomial in (x, y) whose coefficients are affine in the
// parameter lambda: P(x, y; l) = P0(x, y) + l * P1(x, y).
class Poly2Affine {
public:
    Poly2Affine() = default;

    void set_term(int i, int j, const BigReal& c0, const BigReal& c1);

    BigReal eval(const BigReal& x, const BigReal& y, const BigReal& lambda) const;

    Poly2Affine dx() const;
    Poly2Affine dy() const;

    // Coefficient of lambda^1 as a plain polynomial evaluated at a point.
    BigReal lambda_part(const BigReal& x, const BigReal& y) const;

    // Restriction to the switching line y = 0 at fixed lambda.
    Poly1 on_sigma(const BigReal& lambda) const;

    // Residuals of the x-parity decomposition on the full plane at fixed
    // lambda: largest |coefficient| violating evenness (resp. oddness) in x.
    BigReal even_residual(const BigReal& lambda) const;
    BigReal odd_residual(const BigReal& lambda) const;

    int xdeg() const { return nx_ - 1; }
    int ydeg() const { return ny_ - 1; }

    struct Term {
        int i, j;
        BigReal c0, c1;
    };
    std::vector<Term> terms() const;

private:
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<BigReal>> c0_, c1_; // [i][j]
    void ensure(int i, int j);
};

struct PlanarVectorField {
    Poly2Affine X, Y;
};

// The pair (Z+, Z-) with switching line y = 0, organizing parameter value
// lambda0 and working x-domain [mu_minus, mu_plus] on the switching line.
struct PWSSystem {
    PlanarVectorField zplus;
    PlanarVectorField zminus;
    BigReal lambda0{0};
    BigReal mu_minus{-1};
    BigReal mu_plus{1};
    std::string name;

    Poly1 yplus_on_sigma(const BigReal& lambda) const { return zplus.Y.on_sigma(lambda); }
    Poly1 yminus_on_sigma(const BigReal& lambda) const { return zminus.Y.on_sigma(lambda); }
    Poly1 xplus_on_sigma(const BigReal& lambda) const { return zplus.X.on_sigma(lambda); }
    Poly1 xminus_on_sigma(const BigReal& lambda) const { return zminus.X.on_sigma(lambda); }

    // det Z = X- Y+ - X+ Y- restricted to y = 0.
    Poly1 detz_on_sigma(const BigReal& lambda) const;
};

enum class SigmaKind { Crossing, StableSliding, UnstableSliding, Tangency };
enum class TwoFoldType { None, VV, VI, II };

struct TangencyDetail {
    bool above = false; // Z+ tangent at the point
    bool below = false; // Z- tangent at the point
    std::optional<bool> visible_above;
    std::optional<bool> visible_below;
    TwoFoldType twofold = TwoFoldType::None;
    bool vi3 = false; // visible-invisible two-fold with the VI3 sign set
};

struct SigmaClassification {
    SigmaKind kind;
    std::optional<TangencyDetail> tangency;
};

struct LieTangencyData {
    BigReal Zh;          // Y(x, 0, lambda)
    BigReal Z2h;         // second Lie derivative of h = y
    bool field_nonzero;  // Z != 0 at the point
    bool tangency;       // Zh == 0 while the field is nonzero
};

// First and second Lie derivatives of h(x,y) = y along the field at (x, 0).
LieTangencyData lie_tangency_data(const PlanarVectorField& field, const BigReal& x,
                                  const BigReal& lambda);

// Sign-table classification of a switching-line point, with tangency detail
// (fold visibility, two-fold type, VI3 condition set) where applicable.
// Throws DegenerateTangencyError when a tangency is beyond quadratic.
SigmaClassification classify_sigma_point(const PWSSystem& sys, const BigReal& x,
                                         const BigReal& lambda);

struct FilippovData {
    BigReal X_sl; // det Z / (Y+ - Y-), L'Hospital-extended at the two-fold
    BigReal p;    // convex coefficient -Y- / (Y+ - Y-)
};

// Filippov sliding field at a sliding point, or its L'Hospital extension at
// the two-fold. Throws NotSlidingError on crossing points.
FilippovData filippov_field(const PWSSystem& sys, const BigReal& x, const BigReal& lambda);

enum class AuditStatus { Pass, Fail, Inconclusive };

struct AuditEntry {
    AuditStatus status = AuditStatus::Fail;
    std::string detail;
    bool passed() const { return status == AuditStatus::Pass; }
};

// Per-assumption audit outcomes with diagnostic payloads.
struct AssumptionReport {
    AuditEntry sliding_structure; // (D): sliding intervals and X_sl > 0
    AuditEntry xi_range;          // (D): xi(x) lands in [mu-, 0)
    AuditEntry symmetry;          // (E): Z- parity under (x,t) -> (-x,-t)
    AuditEntry fold_curvature;    // (F): Y+'' != 0
    AuditEntry versality;

    BigReal min_X_sl{0};
    BigReal symmetry_residual{0};
    BigReal yplus_xx{0};
    BigReal versality_value{0};

    bool all_pass() const {
        return sliding_structure.passed() && xi_range.passed() && symmetry.passed() &&
               fold_curvature.passed() && versality.passed();
    }
};

// Audit of the standing assumptions for the two-fold at the origin.
// The xi-range check integrates the lower field; see sdi.hpp for the map.
AssumptionReport audit_assumptions(const PWSSystem& sys);

// Variational constants at the origin used by the breaking-parameter
// analysis: A = (Y+' - Y-')/X_sl * phi'(y2c), B = versality / (X_sl (Y+'-Y-')).
std::pair<BigReal, BigReal> transversality_constants(const PWSSystem& sys,
                                                     const RegularizationFunction& phi);

} // namespace canard
