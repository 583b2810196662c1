#include "delta/simulation.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "delta/estimators.hpp"

namespace delta {

PopulationParams SimulationSetting::params() const {
    return PopulationParams::create(alpha, pi1, pi2);
}

namespace {

// Near-singular plug-in variances (pole at X̂ = 1) make replicate averages
// meaningless; such replicates are excluded and counted.
constexpr double kNearSingularX = 1e-4;

std::vector<SimulationSetting> build_settings() {
    const std::vector<double> pi3 = {0.2, 0.3, 0.5};
    const std::vector<double> pi3r = {0.5, 0.3, 0.2};
    const std::vector<double> pi5 = {0.1, 0.15, 0.2, 0.25, 0.3};
    const std::vector<double> pi5r = {0.3, 0.25, 0.2, 0.15, 0.1};
    const std::vector<std::vector<double>> alpha3 = {
        {0.05, 0.15, 0.2}, {0.13, 0.13, 0.14}, {0.15, 0.25, 0.4}, {0.26, 0.26, 0.28}};
    const std::vector<std::vector<double>> alpha5 = {
        {0.05, 0.05, 0.05, 0.1, 0.15}, {0.08, 0.08, 0.08, 0.08, 0.08},
        {0.1, 0.15, 0.15, 0.2, 0.2},   {0.16, 0.16, 0.16, 0.16, 0.16}};
    const int ns[3] = {30, 50, 100};

    std::vector<SimulationSetting> out;
    out.reserve(48);
    auto add_block = [&](int k, const std::vector<std::vector<double>>& alphas,
                         const std::vector<double>& pi_same,
                         const std::vector<double>& pi_rev) {
        // Two alpha rows per (n, alpha-set) pair; low-Δ pair first, then high-Δ.
        for (int half = 0; half < 2; ++half) {
            for (int ni = 0; ni < 3; ++ni) {
                for (int ai = 0; ai < 2; ++ai) {
                    for (int rev = 0; rev < 2; ++rev) {
                        SimulationSetting s;
                        s.k = k;
                        s.n = ns[ni];
                        s.alpha = alphas[half * 2 + ai];
                        s.pi1 = pi_same;
                        s.pi2 = rev ? pi_rev : pi_same;
                        out.push_back(std::move(s));
                    }
                }
            }
        }
    };
    add_block(3, alpha3, pi3, pi3r);
    add_block(5, alpha5, pi5, pi5r);

    // Sequential ids; the printed table repeats ids 28 and 38.
    for (int i = 0; i < 48; ++i) {
        out[i].id = i + 1;
        int printed = i + 1;
        if (i + 1 == 29) printed = 28;
        if (i + 1 == 39) printed = 38;
        out[i].printed_id = printed;
    }
    return out;
}

}  // namespace

const std::vector<SimulationSetting>& builtin_settings() {
    static const std::vector<SimulationSetting> settings = build_settings();
    return settings;
}

const SimulationSetting& setting_by_id(int id) {
    const auto& all = builtin_settings();
    if (id < 1 || id > static_cast<int>(all.size())) {
        throw std::out_of_range("setting id must be in 1.." + std::to_string(all.size()) +
                                ", got " + std::to_string(id));
    }
    return all[id - 1];
}

ContingencyTable sample_table(const PopulationParams& params, int n, Philox4x32& rng) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    const ProbMatrix joint = build_joint_probabilities(params);
    const int cells = params.k * params.k;
    std::vector<double> cum(cells);
    double acc = 0.0;
    for (int m = 0; m < cells; ++m) {
        acc += joint.p[m];
        cum[m] = acc;
    }
    std::vector<std::vector<double>> counts(params.k, std::vector<double>(params.k, 0.0));
    for (int draw = 0; draw < n; ++draw) {
        const double u = rng.next_double() * acc;
        int m = 0;
        while (m + 1 < cells && u >= cum[m]) ++m;
        counts[m / params.k][m % params.k] += 1.0;
    }
    return ContingencyTable::from_cells(counts);
}

const char* target_name(SimTarget t) {
    switch (t) {
        case SimTarget::Delta: return "delta";
        case SimTarget::Alpha3: return "alpha3";
        case SimTarget::S3: return "s3";
    }
    return "?";
}

namespace {

struct ReplicateRow {
    bool retained = false;
    int boundary = 0, failure = 0, nonfinite = 0, chance_boundary = 0;
    // classic/U estimate and plug-in variance for each target
    double est[2][3] = {};
    double vhat[2][3] = {};
};

ReplicateRow run_replicate(const PopulationParams& params, int n, std::uint64_t seed,
                           std::uint64_t index) {
    ReplicateRow row;
    Philox4x32 rng(seed, index);
    const ContingencyTable table = sample_table(params, n, rng);
    MleFit fit;
    try {
        fit = fit_delta_mle(table);
    } catch (const SolverFailure&) {
        row.failure = 1;
        return row;
    }
    if (fit.boundary) {
        row.boundary = 1;
        return row;
    }
    try {
        const ChanceQuantities cq = chance_quantities(fit.pi_hat1, fit.pi_hat2);
        if (!cq.x_is_infinite() && std::abs(cq.x_total() - 1.0) < kNearSingularX) {
            row.nonfinite = 1;
            return row;
        }
        const EstimateFamily classic = classic_estimates(fit);
        const EstimateFamily u = unbiased_estimates(fit);
        const VarianceSet classic_var = estimated_variances(fit, classic);
        const VarianceSet u_var = estimated_variances(fit, u);

        const EstimateFamily* fam[2] = {&classic, &u};
        const VarianceSet* var[2] = {&classic_var, &u_var};
        for (int f = 0; f < 2; ++f) {
            if (!fam[f]->s[2].is_finite() || !var[f]->delta_var.is_finite() ||
                !var[f]->alpha_var[2].is_finite() || !var[f]->s_var[2].is_finite()) {
                row.nonfinite = 1;
                return row;
            }
            row.est[f][0] = fam[f]->delta;
            row.est[f][1] = fam[f]->alpha[2];
            row.est[f][2] = fam[f]->s[2].value;
            row.vhat[f][0] = var[f]->delta_var.value;
            row.vhat[f][1] = var[f]->alpha_var[2].value;
            row.vhat[f][2] = var[f]->s_var[2].value;
            for (int t = 0; t < 3; ++t) {
                if (!std::isfinite(row.est[f][t]) || !std::isfinite(row.vhat[f][t])) {
                    row.nonfinite = 1;
                    return row;
                }
            }
        }
    } catch (const std::exception&) {
        row.nonfinite = 1;
        return row;
    }
    row.retained = true;
    row.chance_boundary = fit.chance_boundary ? 1 : 0;
    return row;
}

}  // namespace

std::vector<SimulationSummary> run_setting(const SimulationSetting& setting,
                                           const RunOptions& options) {
    if (options.replicates < 2) {
        throw std::invalid_argument("need at least 2 replicates");
    }
    const PopulationParams params = setting.params();
    const PopulationTruths truths = population_truths(params);
    const AsymptoticVariances va = asymptotic_variances(params, setting.n);

    const int n_rep = options.replicates;
    std::vector<ReplicateRow> rows(n_rep);
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (int h = 0; h < n_rep; ++h) {
            rows[h] = run_replicate(params, setting.n, options.seed, h);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int h = t; h < n_rep; h += threads) {
                    rows[h] = run_replicate(params, setting.n, options.seed, h);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Ordered deterministic reduction by replicate index.
    int retained = 0, boundary = 0, failure = 0, nonfinite = 0, chance_boundary = 0;
    double mean[2][3] = {}, mean_vhat[2][3] = {};
    for (const auto& r : rows) {
        boundary += r.boundary;
        failure += r.failure;
        nonfinite += r.nonfinite;
        if (!r.retained) continue;
        ++retained;
        chance_boundary += r.chance_boundary;
        for (int f = 0; f < 2; ++f) {
            for (int t = 0; t < 3; ++t) {
                mean[f][t] += r.est[f][t];
                mean_vhat[f][t] += r.vhat[f][t];
            }
        }
    }
    if (retained < 2) {
        throw std::runtime_error("fewer than 2 retained replicates; cannot aggregate");
    }
    for (int f = 0; f < 2; ++f) {
        for (int t = 0; t < 3; ++t) {
            mean[f][t] /= retained;
            mean_vhat[f][t] /= retained;
        }
    }
    double ve[2][3] = {};
    for (const auto& r : rows) {
        if (!r.retained) continue;
        for (int f = 0; f < 2; ++f) {
            for (int t = 0; t < 3; ++t) {
                const double d = r.est[f][t] - mean[f][t];
                ve[f][t] += d * d;
            }
        }
    }
    for (int f = 0; f < 2; ++f) {
        for (int t = 0; t < 3; ++t) ve[f][t] /= (retained - 1);
    }

    const double truth[3] = {truths.delta, params.alpha[2],
                             truths.s[2].is_finite() ? truths.s[2].value : std::nan("")};
    const double va_by_target[3] = {va.delta_var, va.alpha_var[2], va.s_var[2]};
    const SimTarget targets[3] = {SimTarget::Delta, SimTarget::Alpha3, SimTarget::S3};

    std::vector<SimulationSummary> out(3);
    for (int t = 0; t < 3; ++t) {
        SimulationSummary& s = out[t];
        s.setting_id = setting.id;
        s.target = targets[t];
        s.k = setting.k;
        s.n = setting.n;
        s.truth = truth[t];
        s.mean_classic = mean[0][t];
        s.mean_u = mean[1][t];
        s.va = va_by_target[t];
        s.ve_classic = ve[0][t];
        s.mean_vhat_classic = mean_vhat[0][t];
        s.ve_u = ve[1][t];
        s.mean_vhat_u = mean_vhat[1][t];
        s.replicates = n_rep;
        s.retained = retained;
        s.excluded_boundary = boundary;
        s.excluded_failure = failure;
        s.excluded_nonfinite = nonfinite;
        s.chance_boundary = chance_boundary;
        s.seed = options.seed;
    }
    return out;
}

}  // namespace delta
