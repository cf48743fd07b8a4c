#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Sparse>
#include <boost/multiprecision/cpp_int.hpp>

namespace dectk {

using Integer = boost::multiprecision::cpp_int;

struct IntEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Integer value;

    bool operator==(const IntEntry&) const = default;
};

/// Exact sparse integer matrix. Entries are kept sorted column-major with
/// no duplicate positions and no stored zeros.
class IntSparseMatrix {
public:
    IntSparseMatrix() = default;
    IntSparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_start_(cols + 1, 0) {}

    /// Sums duplicate positions and drops zeros.
    static IntSparseMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<IntEntry> entries);
    static IntSparseMatrix from_dense(const std::vector<std::vector<Integer>>& dense);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<IntEntry>& entries() const { return entries_; }
    std::span<const IntEntry> column(std::size_t c) const
    {
        return {entries_.data() + col_start_[c], col_start_[c + 1] - col_start_[c]};
    }

    Integer at(std::size_t r, std::size_t c) const;
    bool is_zero() const { return entries_.empty(); }

    IntSparseMatrix transpose() const;
    IntSparseMatrix operator*(const IntSparseMatrix& rhs) const;
    std::vector<std::vector<Integer>> to_dense() const;
    Eigen::SparseMatrix<double> to_real() const;

    bool operator==(const IntSparseMatrix& other) const
    {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<IntEntry> entries_;
    std::vector<std::size_t> col_start_{0};
};

} // namespace dectk
