#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace triwave {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Square sparse matrix in compressed-row form with sorted column indices.
/// Built from (row, col, value) triplets; duplicates are summed in their
/// insertion order so assembly is bit-reproducible.
class CsrMatrix {
public:
    CsrMatrix() = default;

    struct Triplet {
        int row;
        int col;
        double value;
    };

    static CsrMatrix from_triplets(int n, const std::vector<Triplet>& triplets);

    int rows() const { return n_; }
    std::size_t nnz() const { return values_.size(); }

    /// y = A x. Deterministic left-to-right accumulation per row.
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;

    std::vector<double> multiply(const std::vector<double>& x) const;

    /// x^T A x.
    double quadratic_form(const std::vector<double>& x) const;

    double coeff(int row, int col) const;

    std::vector<double> row_sums() const;

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

private:
    int n_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

}  // namespace triwave
