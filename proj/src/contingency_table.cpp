#include "delta/contingency_table.hpp"

#include <cmath>
#include <numeric>

namespace delta {

ContingencyTable ContingencyTable::from_cells(const std::vector<std::vector<double>>& cells) {
    const int k = static_cast<int>(cells.size());
    if (k < 2) {
        throw std::invalid_argument("contingency table needs K >= 2 categories, got K = " +
                                    std::to_string(k));
    }
    ContingencyTable t;
    t.k_ = k;
    t.cells_.resize(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(cells[i].size()) != k) {
            throw std::invalid_argument("table is not square: row " + std::to_string(i + 1) +
                                        " has " + std::to_string(cells[i].size()) +
                                        " cells, expected " + std::to_string(k));
        }
        for (int j = 0; j < k; ++j) {
            const double v = cells[i][j];
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw std::invalid_argument("negative or non-finite count at row " +
                                            std::to_string(i + 1) + ", column " +
                                            std::to_string(j + 1));
            }
            t.cells_[static_cast<size_t>(i) * k + j] = v;
        }
    }
    t.n_ = std::accumulate(t.cells_.begin(), t.cells_.end(), 0.0);
    if (!(t.n_ > 0.0)) {
        throw std::invalid_argument("table total must be positive");
    }
    t.rows_.assign(k, 0.0);
    t.cols_.assign(k, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            t.rows_[i] += t.cell(i, j);
            t.cols_[j] += t.cell(i, j);
        }
    }
    return t;
}

double ContingencyTable::observed_agreement() const {
    double s = 0.0;
    for (int i = 0; i < k_; ++i) s += p_diag(i);
    return s;
}

ContingencyTable ContingencyTable::transposed() const {
    std::vector<std::vector<double>> out(k_, std::vector<double>(k_));
    for (int i = 0; i < k_; ++i) {
        for (int j = 0; j < k_; ++j) out[j][i] = cell(i, j);
    }
    return from_cells(out);
}

ContingencyTable ContingencyTable::incremented(double inc) const {
    std::vector<std::vector<double>> out(k_, std::vector<double>(k_));
    for (int i = 0; i < k_; ++i) {
        for (int j = 0; j < k_; ++j) out[i][j] = cell(i, j) + inc;
    }
    return from_cells(out);
}

std::vector<std::vector<double>> ContingencyTable::cells() const {
    std::vector<std::vector<double>> out(k_, std::vector<double>(k_));
    for (int i = 0; i < k_; ++i) {
        for (int j = 0; j < k_; ++j) out[i][j] = cell(i, j);
    }
    return out;
}

CategoryMargins category_margins(const ContingencyTable& table) {
    CategoryMargins m;
    m.t.resize(table.k());
    m.p_diag.resize(table.k());
    for (int i = 0; i < table.k(); ++i) {
        m.t[i] = table.p_row(i) + table.p_col(i);
        m.p_diag[i] = table.p_diag(i);
    }
    return m;
}

double observed_agreement_index(const ContingencyTable& table) {
    return table.observed_agreement();
}

}  // namespace delta
