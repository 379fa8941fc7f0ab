#include "triwave/sparse.hpp"

#include <algorithm>
#include <numeric>

namespace triwave {

CsrMatrix CsrMatrix::from_triplets(int n, const std::vector<Triplet>& triplets) {
    CsrMatrix m;
    m.n_ = n;

    // Stable sort by (row, col) keeps insertion order within each entry, so
    // duplicate contributions are summed in a fixed order.
    std::vector<int> order(triplets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (triplets[a].row != triplets[b].row) return triplets[a].row < triplets[b].row;
        return triplets[a].col < triplets[b].col;
    });

    m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Triplet& t = triplets[order[k]];
        if (k > 0) {
            const Triplet& prev = triplets[order[k - 1]];
            if (prev.row == t.row && prev.col == t.col) {
                m.values_.back() += t.value;
                continue;
            }
        }
        m.col_idx_.push_back(t.col);
        m.values_.push_back(t.value);
        m.row_ptr_[t.row + 1] += 1;
    }
    for (int r = 0; r < n; ++r) {
        m.row_ptr_[r + 1] += m.row_ptr_[r];
    }
    return m;
}

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    if (static_cast<int>(x.size()) != n_) {
        throw DimensionMismatch("matrix-vector size mismatch");
    }
    y.resize(x.size());
    for (int r = 0; r < n_; ++r) {
        double sum = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            sum += values_[k] * x[col_idx_[k]];
        }
        y[r] = sum;
    }
}

std::vector<double> CsrMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y;
    multiply(x, y);
    return y;
}

double CsrMatrix::quadratic_form(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_) {
        throw DimensionMismatch("quadratic form size mismatch");
    }
    double total = 0.0;
    for (int r = 0; r < n_; ++r) {
        double sum = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            sum += values_[k] * x[col_idx_[k]];
        }
        total += x[r] * sum;
    }
    return total;
}

double CsrMatrix::coeff(int row, int col) const {
    for (int k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
        if (col_idx_[k] == col) return values_[k];
    }
    return 0.0;
}

std::vector<double> CsrMatrix::row_sums() const {
    std::vector<double> sums(n_, 0.0);
    for (int r = 0; r < n_; ++r) {
        double sum = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            sum += values_[k];
        }
        sums[r] = sum;
    }
    return sums;
}

}  // namespace triwave
