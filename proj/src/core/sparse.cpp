#include "sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace thinhomog {

SparseMatrix SparseMatrix::from_triplets(std::int64_t n, std::vector<std::int64_t> rows,
                                         std::vector<std::int64_t> cols,
                                         std::vector<double> vals) {
    if (rows.size() != cols.size() || rows.size() != vals.size()) {
        throw std::invalid_argument("triplet arrays must have equal length");
    }
    const size_t m = rows.size();
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (rows[a] != rows[b]) return rows[a] < rows[b];
        return cols[a] < cols[b];
    });

    SparseMatrix out;
    out.n_ = n;
    out.row_ptr_.assign(static_cast<size_t>(n) + 1, 0);
    out.col_.reserve(m);
    out.vals_.reserve(m);

    std::int64_t cur_row = -1;
    std::int64_t cur_col = -1;
    for (size_t k : order) {
        const std::int64_t r = rows[k];
        const std::int64_t c = cols[k];
        if (r < 0 || r >= n || c < 0 || c >= n) {
            throw std::invalid_argument("triplet index out of range");
        }
        if (r == cur_row && c == cur_col) {
            out.vals_.back() += vals[k];
        } else {
            out.col_.push_back(c);
            out.vals_.push_back(vals[k]);
            out.row_ptr_[static_cast<size_t>(r) + 1] += 1;
            cur_row = r;
            cur_col = c;
        }
    }
    for (std::int64_t r = 0; r < n; ++r) {
        out.row_ptr_[static_cast<size_t>(r) + 1] += out.row_ptr_[static_cast<size_t>(r)];
    }
    return out;
}

void SparseMatrix::multiply(const double* x, double* y) const {
    for (std::int64_t r = 0; r < n_; ++r) {
        double acc = 0.0;
        for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            acc += vals_[static_cast<size_t>(k)] * x[col_[static_cast<size_t>(k)]];
        }
        y[r] = acc;
    }
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<size_t>(n_), 0.0);
    multiply(x.data(), y.data());
    return y;
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(static_cast<size_t>(n_), 0.0);
    for (std::int64_t r = 0; r < n_; ++r) {
        for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            if (col_[static_cast<size_t>(k)] == r) d[static_cast<size_t>(r)] = vals_[static_cast<size_t>(k)];
        }
    }
    return d;
}

double SparseMatrix::symmetry_defect() const {
    double scale = 0.0;
    for (double v : vals_) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return 0.0;

    auto entry = [&](std::int64_t r, std::int64_t c) {
        const auto begin = col_.begin() + row_ptr_[r];
        const auto end = col_.begin() + row_ptr_[r + 1];
        const auto it = std::lower_bound(begin, end, c);
        if (it == end || *it != c) return 0.0;
        return vals_[static_cast<size_t>(it - col_.begin())];
    };

    double defect = 0.0;
    for (std::int64_t r = 0; r < n_; ++r) {
        for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const std::int64_t c = col_[static_cast<size_t>(k)];
            if (c <= r) continue;
            defect = std::max(defect, std::fabs(vals_[static_cast<size_t>(k)] - entry(c, r)));
        }
    }
    return defect / scale;
}

} // namespace thinhomog
