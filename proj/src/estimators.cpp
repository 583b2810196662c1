#include "delta/estimators.hpp"

#include <cmath>

namespace delta {

namespace {

constexpr double kXSingularTol = 1e-10;

std::vector<Tagged> consistencies(const std::vector<double>& alpha,
                                  const std::vector<double>& t_bar) {
    std::vector<Tagged> s(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) s[i] = consistency(alpha[i], t_bar[i]);
    return s;
}

EstimateFamily boundary_family(const MleFit& fit, FamilyKind kind) {
    EstimateFamily f;
    f.kind = kind;
    f.i_pi = std::nan("");
    f.delta = 1.0;
    f.alpha = fit.p_diag;
    f.s = consistencies(f.alpha, fit.t_bar);
    if (kind != FamilyKind::Classic) {
        f.e.assign(fit.k, 0.0);
        f.boundary_note = true;
    }
    return f;
}

ChanceQuantities fit_chance(const MleFit& fit) {
    return chance_quantities(fit.pi_hat1, fit.pi_hat2);
}

}  // namespace

EstimateFamily classic_estimates(const MleFit& fit) {
    if (fit.boundary) return boundary_family(fit, FamilyKind::Classic);

    EstimateFamily f;
    f.kind = FamilyKind::Classic;
    double i_pi = 0.0;
    for (int i = 0; i < fit.k; ++i) i_pi += fit.pi_hat1[i] * fit.pi_hat2[i];
    f.i_pi = i_pi;
    if (fit.chance_boundary) {
        // B = 1 fit: Δ̂ = 0 and α̂ from the boundary fit itself (the kappa-form
        // identity needs matched margins, which a B = 1 fit does not have).
        f.delta = 0.0;
        f.alpha = fit.alpha_hat;
    } else {
        if (std::abs(1.0 - i_pi) <= 1e-12) {
            throw SingularChance("chance agreement index is 1; delta undefined");
        }
        f.delta = (fit.i_o - i_pi) / (1.0 - i_pi);
        f.alpha.resize(fit.k);
        for (int i = 0; i < fit.k; ++i) {
            f.alpha[i] = fit.p_diag[i] - (1.0 - f.delta) * fit.pi_hat1[i] * fit.pi_hat2[i];
        }
    }
    f.s = consistencies(f.alpha, fit.t_bar);
    return f;
}

EstimateFamily unbiased_estimates(const MleFit& fit) {
    if (fit.boundary) return boundary_family(fit, FamilyKind::U);

    const EstimateFamily classic = classic_estimates(fit);
    const ChanceQuantities cq = fit_chance(fit);
    const BiasTerms bias = bias_terms(cq, fit.pi_hat1, fit.pi_hat2, classic.delta, fit.n);

    EstimateFamily f;
    f.kind = FamilyKind::U;
    f.e = bias.e;
    const double i_pi_u = classic.i_pi - bias.total;
    f.i_pi = i_pi_u;
    f.delta = (fit.i_o - i_pi_u) / (1.0 - i_pi_u);
    f.alpha.resize(fit.k);
    for (int i = 0; i < fit.k; ++i) {
        f.alpha[i] = fit.p_diag[i] -
                     (1.0 - f.delta) * (fit.pi_hat1[i] * fit.pi_hat2[i] - bias.e[i]);
    }
    f.s = consistencies(f.alpha, fit.t_bar);
    return f;
}

EstimateFamily ac_estimates(const MleFit& fit) {
    if (fit.boundary) return boundary_family(fit, FamilyKind::AC);

    const EstimateFamily classic = classic_estimates(fit);
    const ChanceQuantities cq = fit_chance(fit);
    const std::vector<double> a = ac_terms(cq, classic.delta, fit.n);
    const double c = 1.0 + 1.0 / (fit.n * (1.0 - classic.delta));

    double a_total = 0.0;
    for (double v : a) a_total += v;

    EstimateFamily f;
    f.kind = FamilyKind::AC;
    const double i_pi_ac = (classic.i_pi + a_total) / c;
    f.i_pi = i_pi_ac;
    f.delta = (fit.i_o - i_pi_ac) / (1.0 - i_pi_ac);
    f.alpha.resize(fit.k);
    for (int i = 0; i < fit.k; ++i) {
        f.alpha[i] = fit.p_diag[i] -
                     (1.0 - f.delta) * (fit.pi_hat1[i] * fit.pi_hat2[i] + a[i]) / c;
    }
    f.s = consistencies(f.alpha, fit.t_bar);
    return f;
}

namespace {

// The three Eq-(8)-shaped formulas, shared between the asymptotic and the
// plug-in variants (they are the same expressions evaluated at different
// points).
struct VarianceInputs {
    double delta;
    std::vector<double> alpha;
    std::vector<double> s;       // finite consistencies (NaN propagates)
    std::vector<double> t;
    std::vector<double> p_diag;
    double n;
};

double delta_variance_formula(const VarianceInputs& in, double x_ratio) {
    return (1.0 - in.delta) / in.n * (in.delta + x_ratio);
}

double alpha_variance_formula(const VarianceInputs& in, double h_i, int i) {
    return (h_i + in.alpha[i] * (1.0 - in.alpha[i])) / in.n;
}

double s_variance_formula(const VarianceInputs& in, double h_i, int i) {
    const double t = in.t[i];
    const double s = in.s[i];
    return (4.0 * h_i + s * (2.0 * t - 3.0 * t * s + 2.0 * in.p_diag[i] * s)) / (in.n * t * t);
}

}  // namespace

AsymptoticVariances asymptotic_variances(const PopulationParams& params, double n) {
    const double delta = params.delta();
    if (delta >= 1.0) {
        throw BoundarySignal("asymptotic variances undefined at delta = 1");
    }
    const ChanceQuantities cq = chance_quantities(params.pi1, params.pi2);
    const std::vector<double> h = h_quantities(cq, delta);
    const PopulationTruths truths = population_truths(params);

    VarianceInputs in;
    in.delta = delta;
    in.alpha = params.alpha;
    in.t = truths.t;
    in.p_diag = truths.p_diag;
    in.n = n;
    in.s.resize(params.k);
    for (int i = 0; i < params.k; ++i) {
        in.s[i] = truths.s[i].is_finite() ? truths.s[i].value : std::nan("");
    }

    AsymptoticVariances out;
    out.delta_var = delta_variance_formula(in, cq.x_ratio());
    out.alpha_var.resize(params.k);
    out.s_var.resize(params.k);
    for (int i = 0; i < params.k; ++i) {
        out.alpha_var[i] = alpha_variance_formula(in, h[i], i);
        out.s_var[i] = s_variance_formula(in, h[i], i);
    }
    return out;
}

VarianceSet estimated_variances(const MleFit& fit, const EstimateFamily& family) {
    VarianceSet out;
    out.alpha_var.resize(fit.k);
    out.s_var.resize(fit.k);

    if (fit.boundary) {
        // Δ̂ = 1: the (1-Δ̂) factor kills the X terms; Ĥ_i = 0.
        out.delta_var = Tagged::finite(0.0);
        for (int i = 0; i < fit.k; ++i) {
            out.alpha_var[i] = guard_variance(family.alpha[i] * (1.0 - family.alpha[i]) / fit.n);
            if (!family.s[i].is_finite()) {
                out.s_var[i] = Tagged::undefined();
                continue;
            }
            const double t = fit.t_bar[i];
            const double s = family.s[i].value;
            out.s_var[i] = guard_variance(
                s * (2.0 * t - 3.0 * t * s + 2.0 * fit.p_diag[i] * s) / (fit.n * t * t));
        }
        return out;
    }

    VarianceInputs in;
    in.delta = family.delta;
    in.alpha = family.alpha;
    in.t = fit.t_bar;
    in.p_diag = fit.p_diag;
    in.n = fit.n;
    in.s.resize(fit.k);
    for (int i = 0; i < fit.k; ++i) {
        in.s[i] = family.s[i].is_finite() ? family.s[i].value : std::nan("");
    }

    const ChanceQuantities cq = chance_quantities(fit.pi_hat1, fit.pi_hat2);
    double x_ratio;
    std::vector<double> h;
    try {
        x_ratio = cq.x_ratio(kXSingularTol);
        h = h_quantities(cq, family.delta);
    } catch (const SingularChance&) {
        out.delta_var = Tagged::singular();
        for (int i = 0; i < fit.k; ++i) {
            out.alpha_var[i] = Tagged::singular();
            out.s_var[i] = Tagged::singular();
        }
        return out;
    }
    if (!cq.x_is_infinite() && std::abs(cq.x_total() - 1.0) <= kXSingularTol) {
        out.delta_var = Tagged::singular();
    } else {
        out.delta_var = guard_variance(delta_variance_formula(in, x_ratio));
    }
    for (int i = 0; i < fit.k; ++i) {
        out.alpha_var[i] = guard_variance(alpha_variance_formula(in, h[i], i));
        out.s_var[i] = family.s[i].is_finite()
                           ? guard_variance(s_variance_formula(in, h[i], i))
                           : Tagged::undefined();
    }
    return out;
}

namespace {

Tagged pi_variance_impl(const ChanceQuantities& cq, double pi_sr, int s, double delta,
                        double n) {
    if (delta >= 1.0) {
        throw BoundarySignal("pi variance undefined at delta = 1");
    }
    if (cq.infinite[s]) return Tagged::singular();
    const double num = cq.x[s] - pi_sr;
    // X infinite (some other category): (X_s - π_sr)/(X-1) -> 0.
    double ratio = 0.0;
    if (!cq.x_is_infinite()) {
        const double denom = cq.x_total() - 1.0;
        if (std::abs(denom) <= kXSingularTol) return Tagged::singular();
        ratio = num / denom;
    }
    return guard_variance(num / (n * (1.0 - delta)) * (ratio - 1.0));
}

}  // namespace

Tagged pi_variance(const PopulationParams& params, int s, int r, double n) {
    const ChanceQuantities cq = chance_quantities(params.pi1, params.pi2);
    const double pi_sr = (r == 1 ? params.pi1 : params.pi2)[s];
    return pi_variance_impl(cq, pi_sr, s, params.delta(), n);
}

Tagged pi_variance(const MleFit& fit, int s, int r) {
    if (fit.boundary) {
        throw BoundarySignal("pi variance undefined for a boundary fit");
    }
    const ChanceQuantities cq = chance_quantities(fit.pi_hat1, fit.pi_hat2);
    const double pi_sr = (r == 1 ? fit.pi_hat1 : fit.pi_hat2)[s];
    return pi_variance_impl(cq, pi_sr, s, fit.delta_hat, fit.n);
}

}  // namespace delta
