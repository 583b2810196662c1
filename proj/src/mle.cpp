#include "delta/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace delta {

namespace {

constexpr double kZeroDisagreement = 1e-14;
constexpr double kScanEpsilon = 1e-12;  // left offset of the B scan
constexpr double kGTolerance = 1e-12;   // bisection target on |g|
constexpr int kGridPoints = 512;
constexpr int kMaxBisect = 200;
constexpr int kMaxFreeCategories = 12;  // 2^m branch assignments scanned

struct QuadRoots {
    double smaller;
    double larger;
};

// Roots of λ² + λ(d1+d2-B) + d1·d2 = 0 in the stable form; nullopt when the
// discriminant is negative or both roots are non-positive.
std::optional<QuadRoots> quad_roots(double B, double d1, double d2) {
    const double s = B - d1 - d2;
    const double prod = d1 * d2;
    const double disc = s * s - 4.0 * prod;
    if (disc < 0.0) return std::nullopt;
    if (s <= 0.0 && prod > 0.0) return std::nullopt;
    const double q = 0.5 * (s + std::sqrt(disc));
    if (q <= 0.0) return QuadRoots{0.0, s > 0.0 ? s : 0.0};
    return QuadRoots{prod / q, q};
}

struct Candidate {
    double b = 0.0;
    std::vector<double> lambda;
    std::vector<double> pi1, pi2;
    std::vector<int> branch;
    double residual = 0.0;
    double log_lik = -std::numeric_limits<double>::infinity();
};

}  // namespace

double Disagreements::total() const {
    double s = 0.0;
    for (double v : d1) s += v;
    return s;
}

Disagreements observed_disagreements(const ContingencyTable& table) {
    Disagreements d;
    d.d1.resize(table.k());
    d.d2.resize(table.k());
    for (int s = 0; s < table.k(); ++s) {
        d.d1[s] = std::max(0.0, table.p_row(s) - table.p_diag(s));
        d.d2[s] = std::max(0.0, table.p_col(s) - table.p_diag(s));
        if (d.d1[s] < kZeroDisagreement) d.d1[s] = 0.0;
        if (d.d2[s] < kZeroDisagreement) d.d2[s] = 0.0;
    }
    return d;
}

double lambda_for_B(double B, double d1, double d2, bool larger) {
    if (d1 <= 0.0 || d2 <= 0.0) return 0.0;  // degenerate rule
    auto r = quad_roots(B, d1, d2);
    if (!r) {
        throw InfeasibleB("no real non-negative root at B = " + std::to_string(B));
    }
    return larger ? r->larger : r->smaller;
}

double fitted_log_likelihood(const MleFit& fit, const ContingencyTable& table) {
    double ll = 0.0;
    for (int i = 0; i < table.k(); ++i) {
        for (int j = 0; j < table.k(); ++j) {
            const double x = table.cell(i, j);
            if (x <= 0.0) continue;
            // p̂_ii = α̂_i + λ_i in every fit mode; off-diagonal is B π̂_i1 π̂_j2.
            const double p = (i == j)
                                 ? fit.alpha_hat[i] + fit.lambda[i]
                                 : (fit.boundary ? 0.0 : fit.b * fit.pi_hat1[i] * fit.pi_hat2[j]);
            if (p <= 0.0) return -std::numeric_limits<double>::infinity();
            ll += x * std::log(p);
        }
    }
    return ll;
}

namespace {

double candidate_log_lik(const ContingencyTable& table, const Candidate& c) {
    double ll = 0.0;
    const int k = table.k();
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double x = table.cell(i, j);
            if (x <= 0.0) continue;
            const double p = (i == j) ? table.p_diag(i) : c.b * c.pi1[i] * c.pi2[j];
            if (p <= 0.0) return -std::numeric_limits<double>::infinity();
            ll += x * std::log(p);
        }
    }
    return ll;
}

MleFit make_base_fit(const ContingencyTable& table, const Disagreements& d) {
    MleFit fit;
    fit.k = table.k();
    fit.n = table.n();
    fit.p_diag.resize(fit.k);
    fit.p_row.resize(fit.k);
    fit.p_col.resize(fit.k);
    fit.t_bar.resize(fit.k);
    fit.degenerate.resize(fit.k);
    for (int s = 0; s < fit.k; ++s) {
        fit.p_diag[s] = table.p_diag(s);
        fit.p_row[s] = table.p_row(s);
        fit.p_col[s] = table.p_col(s);
        fit.t_bar[s] = fit.p_row[s] + fit.p_col[s];
        fit.degenerate[s] = (d.d1[s] <= 0.0 || d.d2[s] <= 0.0);
        fit.i_o += fit.p_diag[s];
    }
    return fit;
}

// Constrained maximum at the B = 1 boundary, where the (K+1) system has no
// interior solution. Fixed point of the stationarity conditions with the
// diagonal profiled out:
//   π_s1 <- d_s1 + Î_o λ_s / Σλ,  λ_s = π_s1 π_s2   (Σd_s1 + Î_o = 1)
MleFit chance_boundary_fit(const ContingencyTable& table, const Disagreements& d) {
    MleFit fit = make_base_fit(table, d);
    const int k = fit.k;
    std::vector<double> pi1(k), pi2(k);
    for (int s = 0; s < k; ++s) {
        pi1[s] = table.p_row(s);
        pi2[s] = table.p_col(s);
    }
    const double io = fit.i_o;
    double diff = 0.0;
    for (int it = 0; it < 500000; ++it) {
        double t = 0.0;
        for (int s = 0; s < k; ++s) t += pi1[s] * pi2[s];
        diff = 0.0;
        for (int s = 0; s < k; ++s) {
            const double w = t > 0.0 ? io * pi1[s] * pi2[s] / t : 0.0;
            const double n1 = d.d1[s] + w;
            const double n2 = d.d2[s] + w;
            diff = std::max({diff, std::abs(n1 - pi1[s]), std::abs(n2 - pi2[s])});
            pi1[s] = n1;
            pi2[s] = n2;
        }
        if (diff < 1e-13) break;
    }
    double t = 0.0;
    for (int s = 0; s < k; ++s) t += pi1[s] * pi2[s];
    const double c = io > 0.0 ? t / io : 1.0;

    fit.b = 1.0;
    fit.delta_hat = 0.0;
    fit.chance_boundary = true;
    fit.residual = diff;
    fit.pi_hat1 = pi1;
    fit.pi_hat2 = pi2;
    fit.lambda.resize(k);
    fit.alpha_hat.resize(k);
    fit.branch.assign(k, -1);
    for (int s = 0; s < k; ++s) {
        fit.lambda[s] = pi1[s] * pi2[s];
        fit.alpha_hat[s] = c * fit.p_diag[s] - fit.lambda[s];
    }
    fit.log_lik = fitted_log_likelihood(fit, table);
    return fit;
}

}  // namespace

MleFit fit_delta_mle(const ContingencyTable& table) {
    const int k = table.k();
    if (k < 3) {
        throw std::invalid_argument(
            "fit_delta_mle needs K >= 3; two-category tables go through fit_2x2");
    }
    const Disagreements d = observed_disagreements(table);
    const double total_d = d.total();

    double total_d2 = 0.0;
    for (double v : d.d2) total_d2 += v;

    // Perfect agreement: every disagreement zero.
    if (total_d == 0.0 && total_d2 == 0.0) {
        MleFit fit = make_base_fit(table, d);
        fit.b = 0.0;
        fit.delta_hat = 1.0;
        fit.boundary = true;
        fit.lambda.assign(k, 0.0);
        fit.alpha_hat = fit.p_diag;
        fit.pi_hat1.assign(k, std::nan(""));
        fit.pi_hat2.assign(k, std::nan(""));
        fit.branch.assign(k, -1);
        fit.residual = 0.0;
        fit.log_lik = fitted_log_likelihood(fit, table);
        return fit;
    }

    std::vector<int> free;
    for (int s = 0; s < k; ++s) {
        if (d.d1[s] > 0.0 && d.d2[s] > 0.0) free.push_back(s);
    }

    // Every category degenerate: all λ_s = 0 and B = Σd̄_s1 solves the system.
    if (free.empty()) {
        MleFit fit = make_base_fit(table, d);
        fit.b = total_d;
        fit.delta_hat = 1.0 - fit.b;
        fit.lambda.assign(k, 0.0);
        fit.alpha_hat = fit.p_diag;
        fit.pi_hat1.resize(k);
        fit.pi_hat2.resize(k);
        fit.branch.assign(k, -1);
        for (int s = 0; s < k; ++s) {
            fit.pi_hat1[s] = d.d1[s] / fit.b;
            fit.pi_hat2[s] = d.d2[s] / fit.b;
        }
        fit.residual = 0.0;
        fit.log_lik = fitted_log_likelihood(fit, table);
        return fit;
    }
    const int m = static_cast<int>(free.size());
    if (m > kMaxFreeCategories) {
        throw SolverFailure("branch enumeration capped at 2^" +
                            std::to_string(kMaxFreeCategories) + " assignments, table has " +
                            std::to_string(m) + " non-degenerate categories");
    }

    double b_left = 0.0;
    for (int s : free) {
        const double t = std::sqrt(d.d1[s]) + std::sqrt(d.d2[s]);
        b_left = std::max(b_left, t * t);
    }

    std::vector<Candidate> candidates;
    if (b_left <= 1.0 + 1e-15) {
        // Scan grid: the spec's 512 uniform points over [Σd+ε, 1] plus the exact
        // feasibility boundary (roots can hide in slivers narrower than the step).
        const double lo = total_d + kScanEpsilon;
        std::vector<double> grid;
        grid.reserve(kGridPoints + 1);
        if (b_left >= lo) grid.push_back(b_left);
        for (int i = 0; i < kGridPoints; ++i) {
            const double b = lo + (1.0 - lo) * static_cast<double>(i) / (kGridPoints - 1);
            if (b >= b_left && (grid.empty() || b > grid.back())) grid.push_back(b);
        }
        if (grid.empty() || grid.back() < 1.0) grid.push_back(1.0);
        const int gp = static_cast<int>(grid.size());

        // Per-category root arrays along the grid.
        std::vector<double> small(static_cast<size_t>(m) * gp), large(small.size());
        std::vector<char> feasible(gp, 1);
        for (int fi = 0; fi < m; ++fi) {
            const int s = free[fi];
            for (int gi = 0; gi < gp; ++gi) {
                auto r = quad_roots(grid[gi], d.d1[s], d.d2[s]);
                if (!r) {
                    feasible[gi] = 0;
                    continue;
                }
                small[static_cast<size_t>(fi) * gp + gi] = r->smaller;
                large[static_cast<size_t>(fi) * gp + gi] = r->larger;
            }
        }

        auto g_for = [&](double b, unsigned mask) -> std::optional<double> {
            double g = -b + total_d;
            for (int fi = 0; fi < m; ++fi) {
                auto r = quad_roots(b, d.d1[free[fi]], d.d2[free[fi]]);
                if (!r) return std::nullopt;
                g += (mask >> fi) & 1u ? r->larger : r->smaller;
            }
            return g;
        };

        auto try_candidate = [&](double b, unsigned mask) {
            Candidate c;
            c.b = b;
            c.lambda.assign(k, 0.0);
            c.branch.assign(k, -1);
            for (int fi = 0; fi < m; ++fi) {
                const int s = free[fi];
                auto r = quad_roots(b, d.d1[s], d.d2[s]);
                if (!r) return;
                const bool larger = (mask >> fi) & 1u;
                c.lambda[s] = larger ? r->larger : r->smaller;
                c.branch[s] = larger ? 1 : 0;
            }
            double residual = 0.0, lam_sum = 0.0;
            c.pi1.resize(k);
            c.pi2.resize(k);
            for (int s = 0; s < k; ++s) {
                const double lam = c.lambda[s];
                residual = std::max(residual,
                                    std::abs(b * lam - (lam + d.d1[s]) * (lam + d.d2[s])));
                lam_sum += lam;
                c.pi1[s] = std::clamp((lam + d.d1[s]) / b, 0.0, 1.0);
                c.pi2[s] = std::clamp((lam + d.d2[s]) / b, 0.0, 1.0);
            }
            residual = std::max(residual, std::abs(lam_sum - b + total_d));
            if (residual > 1e-10) return;
            c.residual = residual;
            c.log_lik = candidate_log_lik(table, c);
            for (const auto& other : candidates) {
                if (std::abs(other.b - c.b) < 1e-8) {
                    bool same = true;
                    for (int s = 0; s < k; ++s) {
                        if (std::abs(other.lambda[s] - c.lambda[s]) > 1e-8) same = false;
                    }
                    if (same) return;
                }
            }
            candidates.push_back(std::move(c));
        };

        const unsigned masks = 1u << m;
        std::vector<double> g(gp);
        for (unsigned mask = 0; mask < masks; ++mask) {
            for (int gi = 0; gi < gp; ++gi) {
                if (!feasible[gi]) continue;
                double v = -grid[gi] + total_d;
                for (int fi = 0; fi < m; ++fi) {
                    const size_t at = static_cast<size_t>(fi) * gp + gi;
                    v += (mask >> fi) & 1u ? large[at] : small[at];
                }
                g[gi] = v;
            }
            for (int gi = 0; gi < gp; ++gi) {
                if (!feasible[gi]) continue;
                if (g[gi] == 0.0) {
                    try_candidate(grid[gi], mask);
                    continue;
                }
                if (gi + 1 >= gp || !feasible[gi + 1]) continue;
                if (g[gi] * g[gi + 1] < 0.0) {
                    double a = grid[gi], b = grid[gi + 1], ga = g[gi];
                    double mid = 0.5 * (a + b);
                    for (int it = 0; it < kMaxBisect; ++it) {
                        mid = 0.5 * (a + b);
                        auto gm = g_for(mid, mask);
                        if (!gm) {
                            a = mid;
                            continue;
                        }
                        if (std::abs(*gm) <= kGTolerance) break;
                        if (ga * *gm < 0.0) {
                            b = mid;
                        } else {
                            a = mid;
                            ga = *gm;
                        }
                    }
                    try_candidate(mid, mask);
                }
            }
        }
    }

    if (!candidates.empty()) {
        const Candidate* best = &candidates.front();
        for (const auto& c : candidates) {
            if (c.log_lik > best->log_lik + 1e-12 ||
                (std::abs(c.log_lik - best->log_lik) <= 1e-12 && c.b < best->b)) {
                best = &c;
            }
        }
        MleFit fit = make_base_fit(table, d);
        fit.b = best->b;
        fit.delta_hat = 1.0 - best->b;
        fit.lambda = best->lambda;
        fit.pi_hat1 = best->pi1;
        fit.pi_hat2 = best->pi2;
        fit.branch = best->branch;
        fit.residual = best->residual;
        fit.log_lik = best->log_lik;
        fit.alpha_hat.resize(k);
        for (int s = 0; s < k; ++s) fit.alpha_hat[s] = fit.p_diag[s] - fit.lambda[s];
        return fit;
    }

    // No interior solution: the likelihood maximum sits on the B = 1 boundary.
    return chance_boundary_fit(table, d);
}

}  // namespace delta
