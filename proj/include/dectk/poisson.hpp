#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "dectk/hodge.hpp"
#include "dectk/mesh.hpp"

namespace dectk {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Exact solution u of -lap u = f with its gradient.
struct ManufacturedSolution {
    std::string name;
    ScalarField u;
    VectorField grad;
    ScalarField source;
    /// True if u lies in the piecewise-linear space (errors should vanish).
    bool affine = false;

    /// u = sin(pi x) sin(pi y), zero on the boundary of the unit square.
    static ManufacturedSolution sine();
    /// u = c0 + sum_i c_i x_i, harmonic.
    static ManufacturedSolution affine_field(double c0, const Eigen::VectorXd& c);
};

/// A x = rhs after Dirichlet elimination. `stiffness` keeps the assembled
/// operator before elimination; constrained rows and columns of `matrix`
/// are replaced by the identity, so `matrix` stays symmetric.
struct LinearSystem {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::SparseMatrix<double> matrix;
    Eigen::VectorXd rhs;
    std::vector<std::pair<std::size_t, double>> constrained;
};

/// d_0^T M_1 d_0 with the chosen Hodge on 1-cochains.
Eigen::SparseMatrix<double> whitney_stiffness(const AbstractComplex& ac, const GeometricComplex& gc,
                                              HodgeKind kind = HodgeKind::Galerkin);

/// Piecewise-linear Galerkin stiffness from edge lengths and angles alone
/// (1/length for segments, cotangents for triangles, dihedral cotangents for
/// tetrahedra). Throws ValidationError for other dimensions.
Eigen::SparseMatrix<double> cotangent_stiffness(const AbstractComplex& ac, const GeometricComplex& gc);

/// Assembles the 0-form Poisson problem -lap u = f with load M_0 R(f).
/// With `dirichlet` set, every boundary vertex is fixed to its value; a
/// complex without boundary then raises ValidationError.
LinearSystem assemble_poisson(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind,
                              const ScalarField& source, const std::optional<ScalarField>& dirichlet);

struct CgResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0.0;  // final ||rhs - A x||
};

/// Unpreconditioned conjugate gradients from x = 0, stopping when
/// ||r|| <= tol * ||rhs||. Throws SolverError with the achieved residual
/// when max_iter is exceeded.
CgResult cg_solve(const LinearSystem& sys, double tol, int max_iter);

/// Midpoint subdivision of a triangle mesh: new vertex k0 + e for edge e
/// (canonical edge order), each triangle split into four with its
/// orientation kept. Throws ValidationError unless n = 2.
GeometricComplex uniform_refine(const GeometricComplex& gc);

/// ||u - u_h||_{L2} with u_h the piecewise-linear interpolant of vertex
/// values, integrated with a degree-5 rule.
double l2_error(const AbstractComplex& ac, const GeometricComplex& gc, const Eigen::VectorXd& uh,
                const ScalarField& u);
/// |u - u_h|_{H1}, same rule.
double energy_error(const AbstractComplex& ac, const GeometricComplex& gc, const Eigen::VectorXd& uh,
                    const VectorField& grad);

struct PoissonSolution {
    Eigen::VectorXd values;
    int iterations = 0;
    double residual = 0.0;
    std::size_t dofs = 0;
};

/// Assembles with the manufactured boundary data and solves.
PoissonSolution solve_poisson(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind,
                              const ManufacturedSolution& m, double tol = 1e-12, int max_iter = 100000);

struct ConvergenceLevel {
    double h = 0.0;
    std::size_t dofs = 0;
    double l2 = 0.0;
    double energy = 0.0;
    int iterations = 0;
};

struct ConvergenceReport {
    HodgeKind kind = HodgeKind::Galerkin;
    std::string solution;
    std::vector<ConvergenceLevel> levels;
    /// log2(e_k / e_{k+1}); empty when both errors are at rounding level.
    std::vector<std::optional<double>> l2_rates;
    std::vector<std::optional<double>> energy_rates;

    std::string table() const;
    std::string json() const;
};

/// Solves on `base` refined 1, 2, ..., levels times. Requires levels >= 3.
ConvergenceReport convergence_study(const GeometricComplex& base, int levels, const ManufacturedSolution& m,
                                    HodgeKind kind, double tol = 1e-12);

} // namespace dectk
