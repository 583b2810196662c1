#include "delta/kappa.hpp"

#include <cmath>

namespace delta {

KappaResult cohen_kappa(const ContingencyTable& table) {
    KappaResult r;
    r.i_o = table.observed_agreement();
    for (int i = 0; i < table.k(); ++i) {
        r.i_e += table.p_row(i) * table.p_col(i);
    }
    // Î_e = 1 means one category holds both full margins.
    if (std::abs(1.0 - r.i_e) <= 1e-12) {
        r.kappa = Tagged::undefined();
    } else {
        r.kappa = Tagged::finite((r.i_o - r.i_e) / (1.0 - r.i_e));
    }
    return r;
}

}  // namespace delta
