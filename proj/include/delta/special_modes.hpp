#pragma once
// The two-category pathway (virtual third category + 0.5 increment, starred
// measures) and the gold-standard statistics (conformity/predictivity with
// the row rater as reference).

#include <array>

#include "delta/estimators.hpp"

namespace delta {

// 2x2 -> 3x3: zero third row/column, then +0.5 on all nine cells. Rejects
// tables that are not 2x2 (applying it to an already-3x3 table is an error).
ContingencyTable augment_2x2(const ContingencyTable& table);

struct TwoByTwoReport {
    ContingencyTable augmented;       // the 3x3 table actually fitted
    MleFit fit;                       // delta fit of the augmented table

    // Starred measures for the original two categories: α̂*_i = α̂_i/(1-p̄_3•).
    std::array<double, 2> alpha_star{};
    std::array<double, 2> alpha_star_u{};
    double delta_star = 0.0;    // α̂*_1 + α̂*_2
    double delta_star_u = 0.0;

    // Consistencies are the plain Eq-(5)/(7) values on the augmented table.
    std::array<Tagged, 2> s{};
    std::array<Tagged, 2> s_u{};

    std::array<Tagged, 2> alpha_star_var{};
    std::array<Tagged, 2> alpha_star_u_var{};
    Tagged delta_star_var;
    Tagged delta_star_u_var;

    EstimateFamily classic;  // full augmented-table families, for reuse
    EstimateFamily u;
};

TwoByTwoReport fit_2x2(const ContingencyTable& table);

struct GoldStandardStats {
    FamilyKind kind = FamilyKind::Classic;
    std::vector<Tagged> conformity;      // F̂_i = α̂_i / p̄_i•
    std::vector<Tagged> predictivity;    // P̂_i = α̂_i / p̄_•i
    std::vector<Tagged> conformity_var;
    std::vector<Tagged> predictivity_var;
};

// Rows are the gold standard (transpose first for a column gold standard).
// Zero marginals yield undefined tags for that category.
GoldStandardStats gold_standard_stats(const MleFit& fit, const EstimateFamily& family);

}  // namespace delta
