#include "delta/population.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace delta {

namespace {
constexpr double kUserTol = 1e-9;  // user-supplied probabilities
}

PopulationParams PopulationParams::create(std::vector<double> alpha,
                                          std::vector<double> pi1,
                                          std::vector<double> pi2) {
    const int k = static_cast<int>(alpha.size());
    if (k < 2 || static_cast<int>(pi1.size()) != k || static_cast<int>(pi2.size()) != k) {
        throw std::invalid_argument("alpha, pi1, pi2 must share one length K >= 2");
    }
    auto check_simplex = [&](const std::vector<double>& v, const char* name) {
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            if (v[i] < -kUserTol || v[i] > 1.0 + kUserTol) {
                throw std::invalid_argument(std::string(name) + "[" + std::to_string(i + 1) +
                                            "] outside [0, 1]");
            }
            sum += v[i];
        }
        if (std::abs(sum - 1.0) > kUserTol) {
            throw std::invalid_argument(std::string(name) + " must sum to 1, got " +
                                        std::to_string(sum));
        }
    };
    check_simplex(pi1, "pi1");
    check_simplex(pi2, "pi2");

    double delta = 0.0;
    for (int i = 0; i < k; ++i) {
        if (alpha[i] < -kUserTol) {
            throw std::invalid_argument("alpha[" + std::to_string(i + 1) + "] must be >= 0");
        }
        delta += alpha[i];
    }
    if (delta > 1.0 + kUserTol) {
        throw std::invalid_argument("sum of alpha exceeds 1");
    }

    PopulationParams p;
    p.k = k;
    p.alpha = std::move(alpha);
    p.pi1 = std::move(pi1);
    p.pi2 = std::move(pi2);
    build_joint_probabilities(p);  // rejects implied p_ij < 0
    return p;
}

double PopulationParams::delta() const {
    return std::accumulate(alpha.begin(), alpha.end(), 0.0);
}

double PopulationParams::b() const { return 1.0 - delta(); }

ProbMatrix build_joint_probabilities(const PopulationParams& params) {
    const int k = params.k;
    const double b = params.b();
    ProbMatrix m;
    m.k = k;
    m.p.resize(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            double v = b * params.pi1[i] * params.pi2[j];
            if (i == j) v += params.alpha[i];
            if (v < -kUserTol) {
                throw std::invalid_argument("implied cell probability p[" +
                                            std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                                            "] is negative: " + std::to_string(v));
            }
            m.p[static_cast<size_t>(i) * k + j] = v < 0.0 ? 0.0 : v;
        }
    }
    return m;
}

Tagged consistency(double alpha_i, double t_i) {
    if (t_i == 0.0) return Tagged::undefined();
    return Tagged::finite(2.0 * alpha_i / t_i);
}

PopulationTruths population_truths(const PopulationParams& params) {
    PopulationTruths out;
    out.delta = params.delta();
    const double b = 1.0 - out.delta;
    out.t.resize(params.k);
    out.s.resize(params.k);
    out.p_diag.resize(params.k);
    for (int i = 0; i < params.k; ++i) {
        out.t[i] = 2.0 * params.alpha[i] + b * (params.pi1[i] + params.pi2[i]);
        out.s[i] = consistency(params.alpha[i], out.t[i]);
        out.p_diag[i] = params.alpha[i] + b * params.pi1[i] * params.pi2[i];
    }
    return out;
}

}  // namespace delta
