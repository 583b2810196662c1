#include "delta/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace delta {

namespace {

nlohmann::json tagged_json(const Tagged& t) {
    switch (t.tag) {
        case ValueTag::Finite:
            return t.value;
        case ValueTag::Undefined:
            return "n/a";
        case ValueTag::Singular:
            return "singular";
    }
    return nullptr;
}

nlohmann::json tagged_vec_json(const std::vector<Tagged>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : v) out.push_back(tagged_json(t));
    return out;
}

nlohmann::json double_or_na(double v) {
    if (std::isnan(v)) return "n/a";
    return v;
}

const char* family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Classic: return "classic";
        case FamilyKind::U: return "u";
        case FamilyKind::AC: return "ac";
    }
    return "?";
}

nlohmann::json family_json(const FamilyBlock& block) {
    nlohmann::json j;
    j["kind"] = family_name(block.family.kind);
    j["delta"] = double_or_na(block.family.delta);
    j["i_pi"] = double_or_na(block.family.i_pi);
    j["alpha"] = block.family.alpha;
    j["consistency"] = tagged_vec_json(block.family.s);
    if (!block.family.e.empty()) j["bias_terms"] = block.family.e;
    if (block.family.boundary_note) j["boundary_note"] = "perfect agreement: correction is zero";
    j["var"] = {{"delta", tagged_json(block.variances.delta_var)},
                {"alpha", tagged_vec_json(block.variances.alpha_var)},
                {"consistency", tagged_vec_json(block.variances.s_var)}};
    return j;
}

nlohmann::json gold_json(const GoldStandardStats& g) {
    nlohmann::json j;
    j["kind"] = family_name(g.kind);
    j["conformity"] = tagged_vec_json(g.conformity);
    j["predictivity"] = tagged_vec_json(g.predictivity);
    j["var"] = {{"conformity", tagged_vec_json(g.conformity_var)},
                {"predictivity", tagged_vec_json(g.predictivity_var)}};
    return j;
}

std::string fmt(double v, int decimals = 3) {
    if (std::isnan(v)) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace

AnalysisReport analyze(const ContingencyTable& input, const AnalysisOptions& options) {
    AnalysisReport rep{input};

    ContingencyTable table = input;
    if (options.gold == AnalysisOptions::Gold::Columns) {
        table = input.transposed();  // gold standard is always the row rater internally
        rep.input = table;
    }
    rep.gold_standard = options.gold != AnalysisOptions::Gold::None;
    rep.gold_orientation = options.gold == AnalysisOptions::Gold::Columns ? "columns"
                           : options.gold == AnalysisOptions::Gold::Rows  ? "rows"
                                                                          : "";

    if (options.two_by_two_requested && table.k() != 2) {
        throw std::invalid_argument("--two-by-two requires a 2x2 table, got K = " +
                                    std::to_string(table.k()));
    }

    rep.kappa = cohen_kappa(table);

    if (table.k() == 2) {
        rep.mode = "two-category";
        rep.two_by_two = fit_2x2(table);
        rep.fit = rep.two_by_two->fit;
        rep.classic = {rep.two_by_two->classic, estimated_variances(rep.fit, rep.two_by_two->classic)};
        rep.u = {rep.two_by_two->u, estimated_variances(rep.fit, rep.two_by_two->u)};
    } else {
        rep.mode = "standard";
        rep.fit = fit_delta_mle(table);
        EstimateFamily classic = classic_estimates(rep.fit);
        EstimateFamily u = unbiased_estimates(rep.fit);
        rep.classic = {classic, estimated_variances(rep.fit, classic)};
        rep.u = {u, estimated_variances(rep.fit, u)};
    }
    if (options.include_ac) {
        EstimateFamily ac = ac_estimates(rep.fit);
        rep.ac = FamilyBlock{ac, estimated_variances(rep.fit, ac)};
    }
    if (rep.gold_standard) {
        rep.gold_classic = gold_standard_stats(rep.fit, rep.classic.family);
        rep.gold_u = gold_standard_stats(rep.fit, rep.u.family);
    }
    return rep;
}

nlohmann::json report_json(const AnalysisReport& report) {
    nlohmann::json j;
    j["input"] = {{"k", report.input.k()},
                  {"n", report.input.n()},
                  {"cells", report.input.cells()}};
    j["mode"] = report.mode;

    nlohmann::json fitj;
    fitj["delta_hat"] = report.fit.delta_hat;
    fitj["b"] = report.fit.b;
    fitj["lambda"] = report.fit.lambda;
    fitj["alpha_hat"] = report.fit.alpha_hat;
    if (report.fit.boundary) {
        fitj["pi_hat1"] = "n/a";
        fitj["pi_hat2"] = "n/a";
    } else {
        fitj["pi_hat1"] = report.fit.pi_hat1;
        fitj["pi_hat2"] = report.fit.pi_hat2;
    }
    fitj["log_lik"] = report.fit.log_lik;
    fitj["diagnostics"] = {{"residual", report.fit.residual},
                           {"degenerate", report.fit.degenerate},
                           {"boundary", report.fit.boundary},
                           {"chance_boundary", report.fit.chance_boundary},
                           {"branch", report.fit.branch}};
    j["fit"] = fitj;

    j["families"]["classic"] = family_json(report.classic);
    j["families"]["u"] = family_json(report.u);
    if (report.ac) j["families"]["ac"] = family_json(*report.ac);

    if (report.two_by_two) {
        const TwoByTwoReport& t = *report.two_by_two;
        j["two_by_two"] = {
            {"augmented_cells", t.augmented.cells()},
            {"augmented_n", t.augmented.n()},
            {"alpha_star", t.alpha_star},
            {"alpha_star_u", t.alpha_star_u},
            {"delta_star", t.delta_star},
            {"delta_star_u", t.delta_star_u},
            {"consistency", {tagged_json(t.s[0]), tagged_json(t.s[1])}},
            {"consistency_u", {tagged_json(t.s_u[0]), tagged_json(t.s_u[1])}},
            {"var",
             {{"alpha_star", {tagged_json(t.alpha_star_var[0]), tagged_json(t.alpha_star_var[1])}},
              {"alpha_star_u",
               {tagged_json(t.alpha_star_u_var[0]), tagged_json(t.alpha_star_u_var[1])}},
              {"delta_star", tagged_json(t.delta_star_var)},
              {"delta_star_u", tagged_json(t.delta_star_u_var)}}}};
    }

    if (report.gold_classic) {
        j["gold_standard"] = {{"orientation", report.gold_orientation},
                              {"classic", gold_json(*report.gold_classic)},
                              {"u", gold_json(*report.gold_u)}};
    }

    j["kappa"] = {{"i_o", report.kappa.i_o},
                  {"i_e", report.kappa.i_e},
                  {"kappa_c", tagged_json(report.kappa.kappa)},
                  {"kappa_cu", "unavailable (companion paper)"}};
    return j;
}

std::string render_text(const AnalysisReport& report) {
    std::ostringstream out;
    const int k = report.fit.k;

    out << "Input: " << report.input.k() << "x" << report.input.k()
        << " table, n = " << fmt(report.input.n(), report.input.n() == std::floor(report.input.n()) ? 0 : 1)
        << "  [mode: " << report.mode << "]\n";

    if (report.two_by_two) {
        const TwoByTwoReport& t = *report.two_by_two;
        out << "Augmented 3x3 (virtual category, +0.5):";
        for (int i = 0; i < 3; ++i) {
            out << (i ? " /" : " ");
            for (int j = 0; j < 3; ++j) out << " " << fmt(t.augmented.cell(i, j), 1);
        }
        out << "  (n' = " << fmt(t.augmented.n(), 1) << ")\n\n";
        out << "Two-category measures (starred, on the original categories):\n";
        out << "  delta*   = " << fmt(t.delta_star) << "   var " << t.delta_star_var.to_string()
            << "\n";
        out << "  delta*_U = " << fmt(t.delta_star_u) << "   var "
            << t.delta_star_u_var.to_string() << "\n";
        for (int i = 0; i < 2; ++i) {
            out << "  cat " << (i + 1) << ": alpha* = " << fmt(t.alpha_star[i]) << " (var "
                << t.alpha_star_var[i].to_string() << ")"
                << "  alpha*_U = " << fmt(t.alpha_star_u[i]) << " (var "
                << t.alpha_star_u_var[i].to_string() << ")"
                << "  S = " << t.s[i].to_string() << "  S_U = " << t.s_u[i].to_string() << "\n";
        }
        out << "\n";
    }

    auto family_block = [&](const char* title, const FamilyBlock& b) {
        out << title << ": delta = " << fmt(b.family.delta) << "  (var "
            << b.variances.delta_var.to_string() << ")\n";
        for (int i = 0; i < k; ++i) {
            out << "  cat " << (i + 1) << ": alpha = " << fmt(b.family.alpha[i]) << " (var "
                << b.variances.alpha_var[i].to_string() << ")  S = " << b.family.s[i].to_string()
                << " (var " << b.variances.s_var[i].to_string() << ")\n";
        }
    };
    family_block("Classic", report.classic);
    family_block("U (bias-corrected)", report.u);
    if (report.ac) family_block("AC (alternative correction)", *report.ac);

    if (report.gold_classic) {
        out << "Gold standard (rows are the reference; requested orientation: "
            << report.gold_orientation << ")\n";
        for (int i = 0; i < k; ++i) {
            out << "  cat " << (i + 1) << ": F = " << report.gold_classic->conformity[i].to_string()
                << "  P = " << report.gold_classic->predictivity[i].to_string()
                << "  F_U = " << report.gold_u->conformity[i].to_string()
                << "  P_U = " << report.gold_u->predictivity[i].to_string() << "\n";
        }
    }

    out << "Kappa: kappa_C = " << report.kappa.kappa.to_string()
        << "  (I_o = " << fmt(report.kappa.i_o) << ", I_e = " << fmt(report.kappa.i_e)
        << "); kappa_CU unavailable (companion paper)\n";

    out << "Diagnostics: residual = " << std::scientific << std::setprecision(2)
        << report.fit.residual << std::defaultfloat;
    if (report.fit.boundary) out << ", boundary fit (perfect agreement)";
    if (report.fit.chance_boundary) out << ", chance-boundary fit (B = 1)";
    bool any_degen = false;
    for (bool d : report.fit.degenerate) any_degen |= d;
    if (any_degen) {
        out << ", degenerate categories:";
        for (int i = 0; i < k; ++i) {
            if (report.fit.degenerate[i]) out << " " << (i + 1);
        }
    }
    out << "\n";
    return out.str();
}

}  // namespace delta
