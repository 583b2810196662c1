#include "delta/chance.hpp"

#include <cmath>

namespace delta {

namespace {
constexpr double kInfinityTol = 1e-12;  // |π_i1 + π_i2 - 1| below this is the singular line
}

double ChanceQuantities::x_ratio(double tol) const {
    if (infinite_count > 0) return 1.0;
    const double denom = finite_sum - 1.0;
    if (std::abs(denom) <= tol) {
        throw SingularChance("X is within tolerance of 1; X/(X-1) undefined");
    }
    return finite_sum / denom;
}

ChanceQuantities chance_quantities(std::span<const double> pi1,
                                   std::span<const double> pi2) {
    const int k = static_cast<int>(pi1.size());
    ChanceQuantities cq;
    cq.x.assign(k, 0.0);
    cq.infinite.assign(k, false);
    for (int i = 0; i < k; ++i) {
        const double prod = pi1[i] * pi2[i];
        const double t = pi1[i] + pi2[i] - 1.0;
        cq.i_pi += prod;
        if (std::abs(t) <= kInfinityTol) {
            if (prod > 0.0) {
                cq.infinite[i] = true;
                ++cq.infinite_count;
            }
            // prod = 0 on the singular line: X_i = 0 (the category carries no
            // chance mass, matching the degenerate-category fits).
        } else {
            cq.x[i] = prod / t;
            cq.finite_sum += cq.x[i];
        }
    }
    return cq;
}

namespace {

// Per-category value of X_i(X - X_i)/(X - 1) with the one-infinite limits:
//   finite i, X infinite:   -> X_i
//   infinite category k:    -> Σ_{i≠k} X_i
std::vector<double> cross_terms(const ChanceQuantities& cq) {
    const int k = static_cast<int>(cq.x.size());
    if (cq.infinite_count > 1) {
        throw SingularChance("more than one infinite X_i; no limit form is defined");
    }
    std::vector<double> out(k);
    if (cq.infinite_count == 1) {
        for (int i = 0; i < k; ++i) {
            out[i] = cq.infinite[i] ? cq.finite_sum : cq.x[i];
        }
    } else {
        const double x = cq.finite_sum;
        const double denom = x - 1.0;
        for (int i = 0; i < k; ++i) {
            out[i] = cq.x[i] * (x - cq.x[i]) / denom;
        }
    }
    return out;
}

}  // namespace

BiasTerms bias_terms(const ChanceQuantities& cq,
                     std::span<const double> pi1,
                     std::span<const double> pi2,
                     double delta, double n) {
    if (delta >= 1.0) {
        throw BoundarySignal("bias terms undefined at delta = 1");
    }
    const auto cross = cross_terms(cq);
    const double c = 1.0 / (n * (1.0 - delta));
    BiasTerms bt;
    bt.e.resize(cq.x.size());
    for (size_t i = 0; i < cq.x.size(); ++i) {
        bt.e[i] = c * (pi1[i] * pi2[i] - cross[i]);
        bt.total += bt.e[i];
    }
    return bt;
}

std::vector<double> ac_terms(const ChanceQuantities& cq, double delta, double n) {
    if (delta >= 1.0) {
        throw BoundarySignal("AC terms undefined at delta = 1");
    }
    auto cross = cross_terms(cq);
    const double c = 1.0 / (n * (1.0 - delta));
    for (auto& v : cross) v *= c;
    return cross;
}

std::vector<double> h_quantities(const ChanceQuantities& cq, double delta) {
    const int k = static_cast<int>(cq.x.size());
    if (cq.infinite_count > 1) {
        throw SingularChance("more than one infinite X_i; no limit form is defined");
    }
    std::vector<double> h(k);
    const double b = 1.0 - delta;
    if (cq.infinite_count == 1) {
        for (int i = 0; i < k; ++i) {
            h[i] = cq.infinite[i] ? b * (1.0 - cq.finite_sum) : -b * cq.x[i];
        }
    } else {
        const double denom = cq.finite_sum - 1.0;
        for (int i = 0; i < k; ++i) {
            h[i] = b * cq.x[i] * (cq.x[i] / denom - 1.0);
        }
    }
    return h;
}

}  // namespace delta
