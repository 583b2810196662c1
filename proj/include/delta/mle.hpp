#pragma once
// Maximum-likelihood fit of the delta model: solve the (K+1) equations
//   B = (λ_s + d̄_s1)(λ_s + d̄_s2)/λ_s   (s = 1..K),   Σ_s λ_s - B + Σ_s d̄_s1 = 0
// for (λ, B), then Δ̂ = 1-B, α̂_s = p̄_ss - λ_s, π̂_sr = (λ_s + d̄_sr)/B.
//
// Each per-category equation is a quadratic in λ_s with two roots; the solver
// enumerates the root assignments, scans g(B) = Σλ_s(B) - B + Σd̄_s1 for sign
// changes over [Σd̄_s1, 1], bisects each bracket, and keeps the solution with
// the highest multinomial log-likelihood. Tables whose system has no solution
// in that range (sparse off-diagonals) get the constrained maximum at the
// B = 1 boundary instead, computed by a fixed-point iteration and flagged.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "delta/contingency_table.hpp"

namespace delta {

struct Disagreements {
    std::vector<double> d1;  // d̄_s1 = p̄_s• - p̄_ss
    std::vector<double> d2;  // d̄_s2 = p̄_•s - p̄_ss

    double total() const;  // Σ d̄_s1 (= Σ d̄_s2, total observed disagreement)
};

Disagreements observed_disagreements(const ContingencyTable& table);

// Thrown when a B value makes some per-category discriminant negative.
class InfeasibleB : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Thrown when no solution of any kind can be produced (never expected for a
// valid table; the message carries the scan diagnostics).
class SolverFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Selected root of λ² + λ(d1+d2-B) + d1·d2 = 0. Returns 0 when d1 = 0 or
// d2 = 0 (the degenerate rule). `larger` picks the other branch. Throws
// InfeasibleB on a negative discriminant.
double lambda_for_B(double B, double d1, double d2, bool larger = false);

struct MleFit {
    int k = 0;
    double n = 0.0;

    double b = 0.0;          // chance-classification proportion, = 1 - Δ̂
    double delta_hat = 0.0;
    std::vector<double> lambda;
    std::vector<double> alpha_hat;
    std::vector<double> pi_hat1, pi_hat2;  // NaN-filled when boundary

    double residual = 0.0;   // max |equation residual| over the K+1 equations
    std::vector<bool> degenerate;  // λ_s = 0 rule applied (d̄_s1 or d̄_s2 = 0)
    bool boundary = false;         // all d̄ = 0: B = 0, Δ̂ = 1, π̂ undefined
    bool chance_boundary = false;  // no interior solution: B fixed at 1
    std::vector<int> branch;       // root taken per category: 0 smaller, 1 larger, -1 degenerate
    double log_lik = 0.0;

    // Sample quantities carried along for the estimator formulas.
    std::vector<double> p_diag;  // p̄_ss
    std::vector<double> p_row;   // p̄_s•
    std::vector<double> p_col;   // p̄_•s
    std::vector<double> t_bar;   // p̄_s• + p̄_•s
    double i_o = 0.0;            // Σ p̄_ss
};

// K >= 3 (two-category tables go through the augmentation pathway).
MleFit fit_delta_mle(const ContingencyTable& table);

// Multinomial log-likelihood of the fitted cell probabilities
// p̂_ij = δ_ij p̂_ii + B π̂_i1 π̂_j2 against the observed counts.
double fitted_log_likelihood(const MleFit& fit, const ContingencyTable& table);

}  // namespace delta
