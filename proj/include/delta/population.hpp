#pragma once
// True parameters of the delta response model p_ij = δ_ij α_i + B π_i1 π_j2,
// the forward map to cell probabilities, and the population-level quantities
// (Δ, S_i, t_i) used as ground truth by the simulation study.

#include <vector>

#include "delta/tagged.hpp"

namespace delta {

struct PopulationParams {
    int k = 0;
    std::vector<double> alpha;  // contribution of each category to Δ, α_i >= 0
    std::vector<double> pi1;    // random-response distribution of rater 1
    std::vector<double> pi2;    // rater 2

    // Validates: π_ir in [0,1] and Σ_i π_ir = 1 (tolerance 1e-9 for user input),
    // α_i >= 0, Δ = Σα_i <= 1, and all implied p_ij >= 0.
    static PopulationParams create(std::vector<double> alpha,
                                   std::vector<double> pi1,
                                   std::vector<double> pi2);

    double delta() const;           // Σ α_i
    double b() const;               // 1 - Δ
};

struct ProbMatrix {
    int k = 0;
    std::vector<double> p;  // row-major, sums to 1

    double at(int i, int j) const { return p[i * k + j]; }
};

// p_ij = δ_ij α_i + (1-Δ) π_i1 π_j2. Rejects parameter sets whose implied
// p_ij < 0 (the message names the offending cell).
ProbMatrix build_joint_probabilities(const PopulationParams& params);

// Consistency S_i = 2α_i / t_i. t_i = 0 means the category is unused by both
// raters and yields an undefined tag, never a silent zero.
Tagged consistency(double alpha_i, double t_i);

struct PopulationTruths {
    double delta = 0.0;
    std::vector<double> t;       // t_i = 2α_i + (1-Δ)(π_i1 + π_i2)
    std::vector<Tagged> s;       // S_i
    std::vector<double> p_diag;  // p_ii = α_i + (1-Δ) π_i1 π_i2
};

PopulationTruths population_truths(const PopulationParams& params);

}  // namespace delta
