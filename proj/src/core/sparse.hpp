#pragma once

#include <cstdint>
#include <vector>

namespace thinhomog {

/// Symmetric sparse matrix in CSR form. Assembled from triplets; duplicate
/// entries are summed.
class SparseMatrix {
public:
    SparseMatrix() = default;

    static SparseMatrix from_triplets(std::int64_t n, std::vector<std::int64_t> rows,
                                      std::vector<std::int64_t> cols, std::vector<double> vals);

    std::int64_t size() const { return n_; }
    std::int64_t nonzeros() const { return static_cast<std::int64_t>(vals_.size()); }

    void multiply(const double* x, double* y) const;
    std::vector<double> multiply(const std::vector<double>& x) const;

    std::vector<double> diagonal() const;

    /// max_{ij} |A_ij - A_ji| relative to the largest entry magnitude.
    double symmetry_defect() const;

    const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::int64_t>& col_index() const { return col_; }
    const std::vector<double>& values() const { return vals_; }

private:
    std::int64_t n_ = 0;
    std::vector<std::int64_t> row_ptr_;
    std::vector<std::int64_t> col_;
    std::vector<double> vals_;
};

} // namespace thinhomog
