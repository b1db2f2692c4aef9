#pragma once

#include "canard/bigreal.hpp"
#include "canard/pws.hpp"
#include "canard/regfun.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace canard {

using State = std::array<BigReal, 2>;
using RhsFn = std::function<void(const BigReal& t, const State& y, State& dydt)>;

// One accepted Dormand-Prince step with its quartic dense-output data.
struct DenseSegment {
    BigReal t0, h;
    std::array<State, 5> rcont;
    State state_at(const BigReal& t) const;
};

struct EventHit {
    int event_index;
    BigReal t;
    State state;
};

// Dense-output trajectory at working precision.
class Trajectory {
public:
    BigReal t_begin() const;
    BigReal t_end() const;
    State state_at(const BigReal& t) const;
    const std::vector<DenseSegment>& segments() const { return segments_; }
    const std::vector<EventHit>& events() const { return events_; }

    std::vector<DenseSegment> segments_;
    std::vector<EventHit> events_;
};

struct EventSpec {
    std::function<BigReal(const BigReal& t, const State& y)> fn;
    int direction = 0;  // +1 rising only, -1 falling only, 0 both
    bool terminal = false;
};

struct IntegrateOptions {
    BigReal tol{BigReal("1e-30")};
    BigReal initial_step{0};              // 0: heuristic
    BigReal max_step{0};                  // 0: unbounded
    long max_steps = 2000000;
    // Guard region; integration aborts with NoReturnError when the state
    // leaves it (used by the return maps).
    std::optional<std::array<BigReal, 4>> box; // xmin, xmax, ymin, ymax
};

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with PI step control
// and dense output. Steps below the floor raise StiffSegmentError.
Trajectory integrate_ode(const RhsFn& rhs, const State& y0, const BigReal& t0, const BigReal& t1,
                         const IntegrateOptions& opts, const std::vector<EventSpec>& events = {});

enum class Chart { Original, Scaled };

// The regularized field Z+ phi(y/eps^2) + Z- (1 - phi(y/eps^2)) with frozen
// parameter lambda, plus its eps^2-chart version in (x, y2).
struct RegularizedSystem {
    PWSSystem sys;
    RegularizationFunction phi;
    BigReal epsilon;
    BigReal lambda;

    RhsFn rhs(Chart chart) const;
    // Divergence of the chart field at a state, for multiplier estimates.
    BigReal divergence(Chart chart, const State& s) const;
};

// Forward integration in the requested chart. In the original chart the
// switching layer has rate ~ eps^-2; a step-floor hit suggests the scaled
// chart instead.
Trajectory integrate(const RegularizedSystem& rs, const State& z0, const BigReal& tmax,
                     const BigReal& tol, Chart chart);

// y2-height of the critical curve  y2 = phi^{-1}(-Y-/(Y+-Y-)(x, 0, lambda0)).
// Throws NotSlidingError at crossing points.
BigReal critical_manifold(const RegularizedSystem& rs, const BigReal& x);

struct DifferenceMapSample {
    BigReal y;           // on S0 (x = 0), original-chart height, y < 0
    BigReal delta_minus; // y2 on S3 reached forward
    BigReal delta_plus;  // y2 on S3 reached backward
    BigReal delta;       // delta_minus - delta_plus
};

// Transition maps between S0 = {x=0, y in [mu1, mu2]} and S3 = {x=0, y2 near
// y2c}: forward (Delta-) and backward (Delta+) first crossings of x = 0 at
// the critical height, via dense-output event location.
DifferenceMapSample difference_map(const PWSSystem& sys, const RegularizationFunction& phi,
                                   const BigReal& epsilon, const BigReal& lambda_tilde,
                                   const BigReal& y, const BigReal& tol);

struct LambdaTuning {
    BigReal lambda_tilde_c;
    BigReal lambda_c; // lambda0 + epsilon * lambda_tilde_c
    BigReal residual_delta;
};

// Secant/bisection on lambda-tilde until |Delta(y_ref)| < tol. Requires a
// sign change over the bracket; throws with scan data otherwise.
LambdaTuning tune_lambda(const PWSSystem& sys, const RegularizationFunction& phi,
                         const BigReal& epsilon, const BigReal& y_ref, const BigReal& lt_lo,
                         const BigReal& lt_hi, const BigReal& tol);

struct CycleInfo {
    BigReal section_y;     // fixed point of the return map on {x = 0, y < 0}
    BigReal period;
    BigReal multiplier_divergence; // exp of the divergence integral
    BigReal multiplier_return_map; // finite-difference derivative of the map
};

// Return-map fixed points on the section ray {x = 0, y < 0} via seeded Newton.
// Non-converging seeds are skipped.
std::vector<CycleInfo> find_limit_cycles(const RegularizedSystem& rs,
                                         const std::vector<BigReal>& seeds, const BigReal& tol);

} // namespace canard
