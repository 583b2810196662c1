#pragma once
// Simulation study engine: the 48 built-in population settings, multinomial
// table sampling, and the per-setting replicate loop that aggregates the
// classic and U estimators of Δ, α_3, S_3 together with their variances.

#include <cstdint>
#include <vector>

#include "delta/contingency_table.hpp"
#include "delta/philox.hpp"
#include "delta/population.hpp"

namespace delta {

struct SimulationSetting {
    int id = 0;          // sequential 1..48
    int printed_id = 0;  // id as printed in the source table (28 and 38 repeat)
    int k = 0;
    int n = 0;
    std::vector<double> alpha, pi1, pi2;

    PopulationParams params() const;
};

// The 48 built-in settings. The source table's id column repeats 28 and 38;
// settings are numbered sequentially here and the printed id kept as a label.
const std::vector<SimulationSetting>& builtin_settings();

// Lookup by sequential id (1..48); throws std::out_of_range otherwise.
const SimulationSetting& setting_by_id(int id);

// n multinomial draws from the model's cell probabilities.
ContingencyTable sample_table(const PopulationParams& params, int n, Philox4x32& rng);

enum class SimTarget { Delta, Alpha3, S3 };

const char* target_name(SimTarget t);

struct SimulationSummary {
    int setting_id = 0;
    SimTarget target = SimTarget::Delta;
    int k = 0;
    int n = 0;
    double truth = 0.0;

    double mean_classic = 0.0;
    double mean_u = 0.0;
    double va = 0.0;                // asymptotic variance at the true parameters
    double ve_classic = 0.0;        // sample variance of the estimates (N-1)
    double mean_vhat_classic = 0.0;
    double ve_u = 0.0;
    double mean_vhat_u = 0.0;

    int replicates = 0;  // requested N
    int retained = 0;
    int excluded_boundary = 0;   // perfect-agreement samples (Δ̂ = 1)
    int excluded_failure = 0;    // solver failures
    int excluded_nonfinite = 0;  // non-finite estimates or near-singular variances
    int chance_boundary = 0;     // retained replicates fitted at the B = 1 boundary
    std::uint64_t seed = 0;
};

struct RunOptions {
    int replicates = 10000;
    std::uint64_t seed = 20240101;
    int threads = 1;
};

// One summary per target (Δ, α_3, S_3), deterministic given (setting, N, seed)
// regardless of thread count. Replicates that cannot be aggregated are
// excluded and counted; see the exclusion counters above.
std::vector<SimulationSummary> run_setting(const SimulationSetting& setting,
                                           const RunOptions& options);

}  // namespace delta
