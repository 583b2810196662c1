#pragma once
// The chance-structure quantities X_i = π_i1 π_i2 / (π_i1 + π_i2 - 1), their
// sum X, the bias terms E_i of the U correction, and the H_i building block of
// the variance formulas. X_i blows up when π_i1 + π_i2 = 1; that case is
// represented with an explicit infinity tag and the downstream formulas use
// the limit forms. All limits here assume at most ONE infinite X_i; two or
// more raise SingularChance (the source tables never exercise that case).

#include <span>
#include <stdexcept>
#include <vector>

namespace delta {

class SingularChance : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class BoundarySignal : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct ChanceQuantities {
    std::vector<double> x;       // X_i; entry meaningless where infinite[i]
    std::vector<bool> infinite;  // X_i infinite <=> π_i1+π_i2 = 1 (within 1e-12) and π_i1π_i2 > 0
    int infinite_count = 0;
    double finite_sum = 0.0;     // Σ X_i over finite entries
    double i_pi = 0.0;           // Σ π_i1 π_i2

    bool x_is_infinite() const { return infinite_count > 0; }
    // Σ X_i; only valid when no entry is infinite.
    double x_total() const { return finite_sum; }

    // X/(X-1); 1 in the one-infinite limit. Throws SingularChance when
    // |X-1| <= tol (no principled clamp exists).
    double x_ratio(double tol = 1e-10) const;
};

ChanceQuantities chance_quantities(std::span<const double> pi1,
                                   std::span<const double> pi2);

struct BiasTerms {
    std::vector<double> e;  // E_i
    double total = 0.0;     // E = Σ E_i
};

// E_i = [π_i1π_i2 - X_i(X-X_i)/(X-1)] / (n(1-Δ)); limit forms when exactly one
// X_i is infinite. Requires Δ < 1 (throws BoundarySignal at Δ = 1).
BiasTerms bias_terms(const ChanceQuantities& cq,
                     std::span<const double> pi1,
                     std::span<const double> pi2,
                     double delta, double n);

// A_i = X_i(X-X_i) / (n(1-Δ)(X-1)), the alternative-correction numerators.
std::vector<double> ac_terms(const ChanceQuantities& cq, double delta, double n);

// H_i = (1-Δ) X_i {X_i/(X-1) - 1}; limit forms:
//   finite i with X infinite: H_i -> -(1-Δ) X_i
//   the infinite category k : H_k -> (1-Δ)(1 - Σ_{i≠k} X_i)
std::vector<double> h_quantities(const ChanceQuantities& cq, double delta);

}  // namespace delta
