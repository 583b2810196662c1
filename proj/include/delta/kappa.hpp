#pragma once
// Classic Cohen kappa, for side-by-side reporting with the delta estimates.

#include "delta/contingency_table.hpp"
#include "delta/tagged.hpp"

namespace delta {

struct KappaResult {
    double i_o = 0.0;  // observed agreement index
    double i_e = 0.0;  // expected agreement index Σ p̄_i• p̄_•i
    Tagged kappa;      // (Î_o - Î_e)/(1 - Î_e); undefined when Î_e = 1
};

KappaResult cohen_kappa(const ContingencyTable& table);

}  // namespace delta
