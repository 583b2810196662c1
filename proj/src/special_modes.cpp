#include "delta/special_modes.hpp"

#include <cmath>

namespace delta {

namespace {
constexpr double kXSingularTol = 1e-10;
}

ContingencyTable augment_2x2(const ContingencyTable& table) {
    if (table.k() != 2) {
        throw std::invalid_argument("augment_2x2 expects a 2x2 table, got K = " +
                                    std::to_string(table.k()));
    }
    std::vector<std::vector<double>> cells(3, std::vector<double>(3, 0.5));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) cells[i][j] = table.cell(i, j) + 0.5;
    }
    return ContingencyTable::from_cells(cells);
}

namespace {

// Eq-(14)-shaped variance of a starred alpha.
Tagged alpha_star_variance(double h_i, double star, double one_minus_p3, double n) {
    return guard_variance(
        (h_i + one_minus_p3 * star * (1.0 - star)) / (n * one_minus_p3 * one_minus_p3));
}

// Eq-(15)-shaped variance of the starred delta; uses the virtual category's X̂_3.
Tagged delta_star_variance(const ChanceQuantities& cq, double delta, double star,
                           double one_minus_p3, double n) {
    if (cq.infinite_count > 1 || cq.infinite[2]) return Tagged::singular();
    double chance_part;
    if (cq.x_is_infinite()) {
        // Some other X̂_i infinite: (X̂ - X̂_3)/(X̂ - 1) -> 1.
        chance_part = (1.0 - delta) * (1.0 - cq.x[2]);
    } else {
        const double denom = cq.x_total() - 1.0;
        if (std::abs(denom) <= kXSingularTol) return Tagged::singular();
        chance_part = (1.0 - delta) * (1.0 - cq.x[2]) * (cq.x_total() - cq.x[2]) / denom;
    }
    return guard_variance((chance_part + one_minus_p3 * star * (1.0 - star)) /
                          (n * one_minus_p3 * one_minus_p3));
}

}  // namespace

TwoByTwoReport fit_2x2(const ContingencyTable& table) {
    TwoByTwoReport r{augment_2x2(table), {}};
    r.fit = fit_delta_mle(r.augmented);
    r.classic = classic_estimates(r.fit);
    r.u = unbiased_estimates(r.fit);

    const double one_minus_p3 = 1.0 - r.fit.p_row[2];
    const double n = r.fit.n;
    for (int i = 0; i < 2; ++i) {
        r.alpha_star[i] = r.classic.alpha[i] / one_minus_p3;
        r.alpha_star_u[i] = r.u.alpha[i] / one_minus_p3;
        r.s[i] = r.classic.s[i];
        r.s_u[i] = r.u.s[i];
    }
    r.delta_star = r.alpha_star[0] + r.alpha_star[1];
    r.delta_star_u = r.alpha_star_u[0] + r.alpha_star_u[1];

    if (r.fit.boundary) {
        r.delta_star_var = Tagged::undefined();
        r.delta_star_u_var = Tagged::undefined();
        for (int i = 0; i < 2; ++i) {
            r.alpha_star_var[i] = Tagged::undefined();
            r.alpha_star_u_var[i] = Tagged::undefined();
        }
        return r;
    }

    const ChanceQuantities cq = chance_quantities(r.fit.pi_hat1, r.fit.pi_hat2);
    try {
        const std::vector<double> h = h_quantities(cq, r.classic.delta);
        const std::vector<double> h_u = h_quantities(cq, r.u.delta);
        for (int i = 0; i < 2; ++i) {
            if (cq.infinite[i]) {
                r.alpha_star_var[i] = Tagged::singular();
                r.alpha_star_u_var[i] = Tagged::singular();
                continue;
            }
            r.alpha_star_var[i] = alpha_star_variance(h[i], r.alpha_star[i], one_minus_p3, n);
            r.alpha_star_u_var[i] =
                alpha_star_variance(h_u[i], r.alpha_star_u[i], one_minus_p3, n);
        }
        r.delta_star_var = delta_star_variance(cq, r.classic.delta, r.delta_star,
                                               one_minus_p3, n);
        r.delta_star_u_var = delta_star_variance(cq, r.u.delta, r.delta_star_u,
                                                 one_minus_p3, n);
    } catch (const SingularChance&) {
        r.delta_star_var = Tagged::singular();
        r.delta_star_u_var = Tagged::singular();
        for (int i = 0; i < 2; ++i) {
            r.alpha_star_var[i] = Tagged::singular();
            r.alpha_star_u_var[i] = Tagged::singular();
        }
    }
    return r;
}

GoldStandardStats gold_standard_stats(const MleFit& fit, const EstimateFamily& family) {
    GoldStandardStats g;
    g.kind = family.kind;
    g.conformity.resize(fit.k);
    g.predictivity.resize(fit.k);
    g.conformity_var.resize(fit.k);
    g.predictivity_var.resize(fit.k);

    std::vector<double> h(fit.k, 0.0);
    bool h_singular = false;
    if (!fit.boundary) {
        try {
            const ChanceQuantities cq = chance_quantities(fit.pi_hat1, fit.pi_hat2);
            if (!cq.x_is_infinite() && std::abs(cq.x_total() - 1.0) <= kXSingularTol) {
                h_singular = true;
            } else {
                h = h_quantities(cq, family.delta);
            }
        } catch (const SingularChance&) {
            h_singular = true;
        }
    }

    for (int i = 0; i < fit.k; ++i) {
        const double row = fit.p_row[i];
        const double col = fit.p_col[i];
        if (row <= 0.0) {
            g.conformity[i] = Tagged::undefined();
            g.conformity_var[i] = Tagged::undefined();
        } else {
            const double f = family.alpha[i] / row;
            g.conformity[i] = Tagged::finite(f);
            g.conformity_var[i] =
                h_singular ? Tagged::singular()
                           : guard_variance((h[i] + row * f * (1.0 - f)) / (fit.n * row * row));
        }
        if (col <= 0.0) {
            g.predictivity[i] = Tagged::undefined();
            g.predictivity_var[i] = Tagged::undefined();
        } else {
            const double p = family.alpha[i] / col;
            g.predictivity[i] = Tagged::finite(p);
            g.predictivity_var[i] =
                h_singular ? Tagged::singular()
                           : guard_variance((h[i] + col * p * (1.0 - p)) / (fit.n * col * col));
        }
    }
    return g;
}

}  // namespace delta
