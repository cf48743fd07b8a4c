#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "dectk/chain_complex.hpp"
#include "dectk/mesh.hpp"
#include "dectk/whitney.hpp"

namespace dectk {

enum class HodgeKind { Galerkin, Diagonal };

std::string to_string(HodgeKind kind);
HodgeKind parse_hodge_kind(const std::string& name);

/// Discrete Hodge operator on p-cochains: a symmetric positive definite
/// mass matrix (Galerkin) or a positive diagonal (dual/primal volume ratio).
struct DiscreteHodge {
    HodgeKind kind = HodgeKind::Galerkin;
    int degree = 0;
    Eigen::SparseMatrix<double> matrix;
};

/// M(s, t) = sum over top simplices T of int_T <W_s, W_t>. `material`
/// optionally gives one symmetric positive d x d tensor per top simplex
/// (canonical order) defining the pointwise inner product of 1-forms.
DiscreteHodge galerkin_mass_matrix(const AbstractComplex& ac, const GeometricComplex& gc, int p,
                                   std::span<const Eigen::MatrixXd> material = {});

/// diag(dual cell volume / primal volume) with barycentric duals.
DiscreteHodge diagonal_hodge(const AbstractComplex& ac, const GeometricComplex& gc, int p);

/// Coboundaries and Hodge matrices of every degree, with factorized masses.
class HodgeComplex {
public:
    HodgeComplex(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind,
                 std::span<const Eigen::MatrixXd> material = {});

    int dim() const { return static_cast<int>(mass_.size()) - 1; }
    HodgeKind kind() const { return kind_; }
    std::size_t count(int p) const { return static_cast<std::size_t>(mass_[p].matrix.rows()); }
    /// Real coboundary d_p, 0 <= p < n.
    const Eigen::SparseMatrix<double>& d(int p) const { return d_[p]; }
    const DiscreteHodge& mass(int p) const { return mass_[p]; }

    /// Solves mass(p) y = rhs. Throws SolverError if the factorization failed.
    Eigen::VectorXd solve_mass(int p, const Eigen::VectorXd& rhs) const;

    /// <a, b>_{M_p}
    double inner(const Cochain& a, const Cochain& b) const;

private:
    HodgeKind kind_;
    std::vector<Eigen::SparseMatrix<double>> d_;
    std::vector<DiscreteHodge> mass_;
    std::vector<std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>> factor_;
};

/// delta c = M_{p-1}^{-1} d_{p-1}^T M_p c, the weak adjoint of d.
Cochain codifferential(const Cochain& c, const HodgeComplex& hodges);

/// delta d c + d delta c, dropping the term that leaves [0, n].
Cochain hodge_laplacian_apply(const Cochain& c, const HodgeComplex& hodges);

struct HarmonicBasis {
    int degree = 0;
    std::vector<Cochain> vectors;
    Eigen::MatrixXd gram;  // under M_p
};

/// Basis of { x : d_p x = 0, d_{p-1}^T M_p x = 0 } from a singular value
/// decomposition of the stacked operator; singular values below
/// rank_tol * largest count as zero.
HarmonicBasis harmonic_basis(const HodgeComplex& hodges, int p, double rank_tol = 1e-10);

} // namespace dectk
