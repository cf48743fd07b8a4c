#include "dectk/chain_complex.hpp"

#include <algorithm>

#include "dectk/combinatorics.hpp"
#include "dectk/errors.hpp"

namespace dectk {

IntSparseMatrix boundary_matrix(const AbstractComplex& ac, int p)
{
    if (p < 1 || p > ac.dim()) {
        throw IndexError("boundary degree " + std::to_string(p) + " outside [1, " + std::to_string(ac.dim()) + "]");
    }
    std::vector<IntEntry> entries;
    const auto& cells = ac.simplices(p);
    entries.reserve(cells.size() * static_cast<std::size_t>(p + 1));
    Simplex face(static_cast<std::size_t>(p));
    for (std::size_t j = 0; j < cells.size(); ++j) {
        const Simplex& s = cells[j];
        for (int k = 0; k <= p; ++k) {
            std::copy(s.begin(), s.begin() + k, face.begin());
            std::copy(s.begin() + k + 1, s.end(), face.begin() + k);
            const auto row = ac.index_of(p - 1, face);
            if (!row) {
                throw ValidationError("complex is not closed under faces");
            }
            entries.push_back({*row, j, Integer(k % 2 == 0 ? 1 : -1)});
        }
    }
    return IntSparseMatrix::from_entries(ac.count(p - 1), cells.size(), std::move(entries));
}

IntSparseMatrix coboundary_matrix(const AbstractComplex& ac, int p)
{
    if (p < 0 || p > ac.dim() - 1) {
        throw IndexError("coboundary degree " + std::to_string(p) + " outside [0, " + std::to_string(ac.dim() - 1)
                         + "]");
    }
    return boundary_matrix(ac, p + 1).transpose();
}

ComplexMatrices::ComplexMatrices(const AbstractComplex& ac)
{
    const int n = ac.dim();
    for (int p = 0; p <= n; ++p) {
        counts_.push_back(ac.count(p));
    }
    // boundary_[p + 1] for p = -1 .. n + 1
    boundary_.push_back(IntSparseMatrix(0, 0));
    boundary_.push_back(IntSparseMatrix(0, count(0)));
    for (int p = 1; p <= n; ++p) {
        boundary_.push_back(boundary_matrix(ac, p));
    }
    boundary_.push_back(IntSparseMatrix(count(n), 0));
    for (int p = -1; p <= n; ++p) {
        coboundary_.push_back(boundary(p + 1).transpose());
    }
}

const IntSparseMatrix& ComplexMatrices::boundary(int p) const
{
    static const IntSparseMatrix empty(0, 0);
    if (p < -1 || p > dim() + 1) {
        return empty;
    }
    return boundary_[static_cast<std::size_t>(p + 1)];
}

const IntSparseMatrix& ComplexMatrices::coboundary(int p) const
{
    static const IntSparseMatrix empty(0, 0);
    if (p < -1 || p > dim()) {
        return empty;
    }
    return coboundary_[static_cast<std::size_t>(p + 1)];
}

bool ComplexMatrices::is_complex() const
{
    for (int p = 1; p < dim(); ++p) {
        if (!(boundary(p) * boundary(p + 1)).is_zero()) {
            return false;
        }
    }
    return true;
}

IntSparseMatrix induced_chain_map(const AbstractComplex& from, const AbstractComplex& to,
                                  std::span<const Index> vertex_map, int p)
{
    if (vertex_map.size() != from.count(0)) {
        throw IndexError("vertex map must have one entry per vertex of the source complex");
    }
    std::vector<IntEntry> entries;
    const auto& cells = from.simplices(p);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        Simplex image;
        image.reserve(cells[j].size());
        for (Index v : cells[j]) {
            image.push_back(vertex_map[v]);
        }
        Simplex support = image;
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        const auto target = to.index_of(static_cast<int>(support.size()) - 1, support);
        if (!target) {
            throw ValidationError("vertex map does not send simplex " + std::to_string(j) + " of degree "
                                  + std::to_string(p) + " to a simplex");
        }
        if (support.size() == image.size()) {
            entries.push_back({*target, j, Integer(permutation_parity(image))});
        }
    }
    return IntSparseMatrix::from_entries(to.count(p), cells.size(), std::move(entries));
}

bool apply_chain_map_check(const AbstractComplex& from, const AbstractComplex& to, std::span<const Index> vertex_map)
{
    const ComplexMatrices a(from);
    const ComplexMatrices b(to);
    std::vector<IntSparseMatrix> maps;
    for (int p = 0; p <= from.dim(); ++p) {
        maps.push_back(induced_chain_map(from, to, vertex_map, p));
    }
    for (int p = 1; p <= from.dim(); ++p) {
        const IntSparseMatrix lhs = maps[p - 1] * a.boundary(p);
        if (p <= to.dim()) {
            if (!(lhs == b.boundary(p) * maps[p])) {
                return false;
            }
        } else if (!lhs.is_zero()) {
            return false;
        }
    }
    return true;
}

} // namespace dectk
