#pragma once
// Full analysis of one table (fit + families + variances + kappa + optional
// gold-standard and two-category blocks) and its text/JSON renderings.

#include <optional>
#include <string>

#include "json.hpp"

#include "delta/kappa.hpp"
#include "delta/special_modes.hpp"

namespace delta {

struct AnalysisOptions {
    enum class Gold { None, Rows, Columns };
    Gold gold = Gold::None;
    bool include_ac = false;
    // 2x2 inputs always take the two-category pathway; requesting it for
    // K != 2 is an error caught in analyze().
    bool two_by_two_requested = false;
};

struct FamilyBlock {
    EstimateFamily family;
    VarianceSet variances;
};

struct AnalysisReport {
    ContingencyTable input;   // original table as given (after any transpose)
    std::string mode;         // "standard" | "two-category"
    bool gold_standard = false;
    std::string gold_orientation;  // "rows" | "columns" as requested

    std::optional<TwoByTwoReport> two_by_two;  // present in two-category mode

    MleFit fit;               // fit of the analyzed table (augmented for 2x2)
    FamilyBlock classic, u;
    std::optional<FamilyBlock> ac;
    std::optional<GoldStandardStats> gold_classic, gold_u;
    KappaResult kappa;        // computed on the original table
};

AnalysisReport analyze(const ContingencyTable& input, const AnalysisOptions& options);

// Text rendering prints 3 decimals (the tables-6-to-8 convention); JSON keeps
// full double precision.
std::string render_text(const AnalysisReport& report);
nlohmann::json report_json(const AnalysisReport& report);

}  // namespace delta
