#include "dectk/int_matrix.hpp"

#include <algorithm>
#include <map>

#include "dectk/errors.hpp"

namespace dectk {

IntSparseMatrix IntSparseMatrix::from_entries(std::size_t rows, std::size_t cols, std::vector<IntEntry> entries)
{
    IntSparseMatrix m(rows, cols);
    std::sort(entries.begin(), entries.end(), [](const IntEntry& a, const IntEntry& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    for (auto& e : entries) {
        if (e.row >= rows || e.col >= cols) {
            throw IndexError("matrix entry outside " + std::to_string(rows) + " x " + std::to_string(cols));
        }
        if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
            m.entries_.back().value += e.value;
            if (m.entries_.back().value == 0) {
                m.entries_.pop_back();
            }
        } else if (e.value != 0) {
            m.entries_.push_back(std::move(e));
        }
    }
    for (const auto& e : m.entries_) {
        ++m.col_start_[e.col + 1];
    }
    for (std::size_t c = 0; c < cols; ++c) {
        m.col_start_[c + 1] += m.col_start_[c];
    }
    return m;
}

IntSparseMatrix IntSparseMatrix::from_dense(const std::vector<std::vector<Integer>>& dense)
{
    const std::size_t r = dense.size();
    const std::size_t c = r == 0 ? 0 : dense.front().size();
    std::vector<IntEntry> entries;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (dense[i][j] != 0) {
                entries.push_back({i, j, dense[i][j]});
            }
        }
    }
    return from_entries(r, c, std::move(entries));
}

Integer IntSparseMatrix::at(std::size_t r, std::size_t c) const
{
    const auto col = column(c);
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const IntEntry& e, std::size_t row) { return e.row < row; });
    return (it != col.end() && it->row == r) ? it->value : Integer(0);
}

IntSparseMatrix IntSparseMatrix::transpose() const
{
    std::vector<IntEntry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) {
        t.push_back({e.col, e.row, e.value});
    }
    return from_entries(cols_, rows_, std::move(t));
}

IntSparseMatrix IntSparseMatrix::operator*(const IntSparseMatrix& rhs) const
{
    if (cols_ != rhs.rows_) {
        throw IndexError("matrix product shape mismatch");
    }
    std::vector<IntEntry> out;
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
        std::map<std::size_t, Integer> acc;
        for (const auto& b : rhs.column(j)) {
            for (const auto& a : column(b.row)) {
                acc[a.row] += a.value * b.value;
            }
        }
        for (auto& [r, v] : acc) {
            if (v != 0) {
                out.push_back({r, j, std::move(v)});
            }
        }
    }
    return from_entries(rows_, rhs.cols_, std::move(out));
}

std::vector<std::vector<Integer>> IntSparseMatrix::to_dense() const
{
    std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_, 0));
    for (const auto& e : entries_) {
        d[e.row][e.col] = e.value;
    }
    return d;
}

Eigen::SparseMatrix<double> IntSparseMatrix::to_real() const
{
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries_.size());
    for (const auto& e : entries_) {
        trips.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value.convert_to<double>());
    }
    Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

} // namespace dectk
