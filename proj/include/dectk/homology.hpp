#pragma once

#include <vector>

#include "dectk/chain_complex.hpp"
#include "dectk/int_matrix.hpp"

namespace dectk {

/// Smith normal form U * A * V = D of an integer matrix.
///
/// `diag` holds the nonzero invariant factors d1 | d2 | ... (all positive),
/// placed at D(k, k). U and V are unimodular; their inverses are returned
/// alongside because homology generators need both directions.
struct SnfResult {
    std::vector<Integer> diag;
    std::size_t rank = 0;
    IntSparseMatrix left;           // U
    IntSparseMatrix right;          // V
    IntSparseMatrix left_inverse;   // U^-1
    IntSparseMatrix right_inverse;  // V^-1
    bool has_transforms = false;
};

/// Deterministic Smith normal form. Pivots minimize |value|, then the
/// Markowitz fill-in estimate, then (row, col). Transforms are accumulated
/// only when requested.
SnfResult smith_normal_form(const IntSparseMatrix& a, bool with_transforms = true);

/// Rank over Z (equivalently Q).
std::size_t integer_rank(const IntSparseMatrix& a);

/// beta_p = #p-simplices - rank d_p - rank d_{p+1}, p = 0..n.
std::vector<std::size_t> betti_numbers(const ComplexMatrices& cm);

/// Invariant factors of boundary(p+1) larger than one.
std::vector<Integer> torsion_coefficients(const ComplexMatrices& cm, int p);

/// Integer chain over the p-simplices, indexed canonically.
using IntChain = std::vector<Integer>;

struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<IntChain> free_generators;
    std::vector<Integer> torsion;
    std::vector<IntChain> torsion_generators;  // one per torsion coefficient
};

/// Free and torsion cycle representatives of H_p(Z) from the SNF bases of
/// boundary(p) and boundary(p+1).
HomologyGroup homology_group(const ComplexMatrices& cm, int p);

/// The free generators of H_p: beta_p cycles, independent modulo boundaries.
std::vector<IntChain> homology_generators(const ComplexMatrices& cm, int p);

/// dim ker d_p - rank d_{p-1} computed from the coboundary matrices.
std::size_t cohomology_betti(const ComplexMatrices& cm, int p);

struct HomologySummary {
    std::vector<std::size_t> betti;
    std::vector<std::vector<Integer>> torsion;
    std::vector<std::vector<IntChain>> generators;
};

HomologySummary homology_summary(const ComplexMatrices& cm, bool with_generators = true);

/// boundary * chain, exact.
IntChain apply(const IntSparseMatrix& m, const IntChain& chain);

} // namespace dectk
