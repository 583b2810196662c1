#pragma once
// Estimator families for Δ, α_i, S_i: the classic plug-ins, the bias-corrected
// "U" family built on the approximately unbiased estimate of π_i1π_i2, the
// alternative "AC" family, and the variance formulas (asymptotic at true
// parameters, plug-in at fitted values).

#include <vector>

#include "delta/chance.hpp"
#include "delta/mle.hpp"
#include "delta/population.hpp"
#include "delta/tagged.hpp"

namespace delta {

enum class FamilyKind { Classic, U, AC };

struct EstimateFamily {
    FamilyKind kind = FamilyKind::Classic;
    double i_pi = 0.0;               // chance index used: Î_π / Î_πU / Î_πAC (NaN at Δ̂=1 boundary)
    double delta = 0.0;
    std::vector<double> alpha;
    std::vector<Tagged> s;           // consistency per category (undefined when t̄_i = 0)
    std::vector<double> e;           // bias terms Ê_i (U family; empty otherwise)
    bool boundary_note = false;      // boundary fit: U/AC returned as classic with Ê ≡ 0
};

// Î_π = Σπ̂π̂; Δ̂ = (Î_o-Î_π)/(1-Î_π); α̂_i = p̄_ii - (1-Δ̂)π̂_i1π̂_i2; Ŝ_i = 2α̂_i/t̄_i.
// Boundary fits (Δ̂ = 1) return Δ̂ = 1, α̂_i = p̄_ii. Î_π = 1 throws SingularChance.
EstimateFamily classic_estimates(const MleFit& fit);

// Eq-(6)/(7) family: Î_πU = Î_π - Ê, Δ̂_U = (Î_o-Î_πU)/(1-Î_πU),
// α̂_iU = p̄_ii - (1-Δ̂_U)(π̂_i1π̂_i2 - Ê_i). Coherence Σα̂_iU = Δ̂_U holds.
EstimateFamily unbiased_estimates(const MleFit& fit);

// Appendix alternative: Î_πAC = (Î_π + Â)/Ĉ with Ĉ = 1 + 1/(n(1-Δ̂)).
EstimateFamily ac_estimates(const MleFit& fit);

struct AsymptoticVariances {
    double delta_var = 0.0;
    std::vector<double> alpha_var;
    std::vector<double> s_var;
};

// Eq.-(8)/(9) evaluated at the TRUE parameters, with the infinite-X_i limit
// algebra. Δ = 1 throws BoundarySignal; two or more infinite X_i throw
// SingularChance.
AsymptoticVariances asymptotic_variances(const PopulationParams& params, double n);

struct VarianceSet {
    Tagged delta_var;
    std::vector<Tagged> alpha_var;
    std::vector<Tagged> s_var;
};

// Plug-in variances matching the family: Eq. (10)/(11) for classic,
// Eq. (12)/(13) for U, Eq. (12) with AC substitutions for AC. |X̂-1| < 1e-10
// yields singular tags; computed negatives are tagged singular as well.
VarianceSet estimated_variances(const MleFit& fit, const EstimateFamily& family);

// V(π̂_sr) = (X_s - π_sr)/(n(1-Δ)) {(X_s - π_sr)/(X-1) - 1}. Categories are
// 0-based, rater r is 1 or 2. Infinite X_s yields a singular tag; an infinite
// X (other category) uses the limit (X_s - π_sr)/(X-1) -> 0.
Tagged pi_variance(const PopulationParams& params, int s, int r, double n);
Tagged pi_variance(const MleFit& fit, int s, int r);

}  // namespace delta
