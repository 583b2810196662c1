#pragma once
// K x K table of non-negative real counts with cached marginals.
// Counts are reals, not integers, so the +0.5 augmented tables of the
// two-category pathway flow through the same type.

#include <stdexcept>
#include <string>
#include <vector>

namespace delta {

class ContingencyTable {
  public:
    // Validates K >= 2, every cell >= 0, total > 0. Throws std::invalid_argument
    // with the offending cell on failure.
    static ContingencyTable from_cells(const std::vector<std::vector<double>>& cells);

    int k() const { return k_; }
    double n() const { return n_; }

    double cell(int i, int j) const { return cells_[i * k_ + j]; }
    double row_sum(int i) const { return rows_[i]; }
    double col_sum(int j) const { return cols_[j]; }

    // Observed proportions p̄.
    double p(int i, int j) const { return cells_[i * k_ + j] / n_; }
    double p_row(int i) const { return rows_[i] / n_; }
    double p_col(int j) const { return cols_[j] / n_; }
    double p_diag(int i) const { return cells_[i * k_ + i] / n_; }

    // Σ p̄_ii, the observed agreement index.
    double observed_agreement() const;

    ContingencyTable transposed() const;

    // Returns a copy with `inc` added to every cell.
    ContingencyTable incremented(double inc) const;

    const std::vector<double>& flat() const { return cells_; }
    std::vector<std::vector<double>> cells() const;

  private:
    int k_ = 0;
    double n_ = 0.0;
    std::vector<double> cells_;  // row-major
    std::vector<double> rows_, cols_;
};

// t̄_i = p̄_i• + p̄_•i and the diagonal proportions, on the observed scale.
struct CategoryMargins {
    std::vector<double> t;
    std::vector<double> p_diag;
};

CategoryMargins category_margins(const ContingencyTable& table);

double observed_agreement_index(const ContingencyTable& table);

}  // namespace delta
