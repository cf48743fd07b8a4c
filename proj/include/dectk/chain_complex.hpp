#pragma once

#include <span>
#include <vector>

#include "dectk/int_matrix.hpp"
#include "dectk/mesh.hpp"

namespace dectk {

/// Boundary operator from p-chains to (p-1)-chains, 1 <= p <= n. The column
/// of (i0 < ... < ip) carries (-1)^k in the row of the face omitting ik.
IntSparseMatrix boundary_matrix(const AbstractComplex& ac, int p);

/// Coboundary d_p from p-cochains to (p+1)-cochains, 0 <= p <= n-1; the
/// transpose of boundary_matrix(p+1).
IntSparseMatrix coboundary_matrix(const AbstractComplex& ac, int p);

/// All boundary and coboundary matrices of a complex.
class ComplexMatrices {
public:
    ComplexMatrices() = default;
    explicit ComplexMatrices(const AbstractComplex& ac);

    int dim() const { return static_cast<int>(counts_.size()) - 1; }
    std::size_t count(int p) const { return (p < 0 || p > dim()) ? 0 : counts_[p]; }

    /// boundary(p) for any integer p; outside 1..n this is the zero map of
    /// the right shape (count(p-1) x count(p)).
    const IntSparseMatrix& boundary(int p) const;
    /// coboundary(p) = boundary(p+1)^T, also total in p.
    const IntSparseMatrix& coboundary(int p) const;

    /// Every composite boundary(p) * boundary(p+1) is the zero matrix.
    bool is_complex() const;

private:
    std::vector<std::size_t> counts_;
    std::vector<IntSparseMatrix> boundary_;   // index p + 1, p = -1 .. n+1
    std::vector<IntSparseMatrix> coboundary_; // index p + 1, p = -1 .. n
};

/// Matrix of the chain map induced in degree p by a vertex map from `from`
/// to `to`. Simplices whose image repeats a vertex map to zero; otherwise
/// the image carries the sign of the sorting permutation. Throws
/// ValidationError if some simplex is not sent to a simplex of `to`.
IntSparseMatrix induced_chain_map(const AbstractComplex& from, const AbstractComplex& to,
                                  std::span<const Index> vertex_map, int p);

/// True iff the induced chain maps commute with every boundary matrix,
/// checked in exact integer arithmetic.
bool apply_chain_map_check(const AbstractComplex& from, const AbstractComplex& to,
                           std::span<const Index> vertex_map);

} // namespace dectk
