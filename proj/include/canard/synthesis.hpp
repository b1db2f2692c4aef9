#pragma once

#include "canard/bigreal.hpp"
#include "canard/pws.hpp"
#include "canard/regfun.hpp"
#include "canard/sdi.hpp"

#include <string>
#include <vector>

namespace canard {

// Which jet the Psi0 recursion differentiates around.
//
// Exact: each J is extracted from the jet as built so far, including the
// delta-detuning terms of the lower slots. The odd-derivative ledger
//   I^(2i+1)(0) = (2i+1)! delta^{2(k-i)} Phi1^{(2i)}
// then holds to working precision for every i.
//
// FrozenBase: the recursion runs on the delta-free jet (every lower slot at
// its Psi0 value) and the delta terms are added afterwards. This reproduces
// the published coefficient tables; the ledger identity then holds only up
// to a relative O(delta^2) contamination in the top slots.
enum class LedgerMode { Exact, FrozenBase };

struct SynthesisSpec {
    PWSSystem sys;
    RegularizationFunction base = RegularizationFunction::reference_arctan();
    int k = 4;
    BigReal delta{BigReal("1e-3")};
    BigReal upsilon{BigReal("0.05")};
    int order = 25;
    LedgerMode mode = LedgerMode::Exact;
};

// Coefficients Phi1^{(2)}..Phi1^{(2k)} of the monic polynomial with simple
// roots at the first k-1 integers; the returned vector lists the k values,
// the last being 1.
std::vector<BigReal> build_target_polynomial(int k);

// C_{2i} = 4i (Y+'-Y-')^2/detZ' * [Y+'' Y-' / (2 (Y+'-Y-')^2)]^{2i-1} at the
// origin.
BigReal compute_C2k(const PWSSystem& sys, int i);

// J_{2i-1}: the part of I^(2i+1)(0) independent of the 2i-th derivative of
// the regularization function, extracted by zeroing that derivative in the
// jet (the dependence is affine).
BigReal compute_J(const PWSSystem& sys, const std::vector<BigReal>& derivs_at_y2c, int i);

struct PsiConstruction {
    PsiJet psi;
    std::vector<BigReal> C;    // C_2, C_4, ..., C_2k
    std::vector<BigReal> J;    // J_1, J_3, ..., J_{2k-1}
    std::vector<BigReal> Psi0; // Psi0^{(2)}, ..., Psi0^{(2k)}
    std::vector<BigReal> Phi1; // ledger targets
    BigReal y2c{0};
    BigReal phip{0}; // phi'(y2c)
};

// The 2k+1 interpolation conditions fixing psi_k: value and slope at y2c,
// vanishing odd derivatives, and the even slots from the Psi0 recursion plus
// the delta-detuning terms.
PsiConstruction construct_psi(const SynthesisSpec& spec);

struct SynthesisResult {
    PsiConstruction construction;
    RegularizationFunction phi_k = RegularizationFunction::reference_arctan();
    TruncatedSeries I{BigReal(0), {}};
    std::vector<RootInfo> roots; // within (0, 2 delta sqrt(k)]
    MonotonicityReport monotonicity;
    int expected_roots = 0;
    bool root_count_ok = false;
    bool ok = false;
    std::string diagnostics;
    LedgerMode mode = LedgerMode::Exact;
};

// construct_psi -> blend -> monotonicity audit -> I series -> simple roots.
SynthesisResult synthesize(const SynthesisSpec& spec);

// Bisection on delta of the root-count function over [lo, hi]; returns the
// largest delta (to ~4 significant digits) for which the count reaches
// target_roots. Requires a count transition inside the bracket.
BigReal tune_delta(const SynthesisSpec& spec_base, int target_roots, const BigReal& lo,
                   const BigReal& hi);

} // namespace canard
