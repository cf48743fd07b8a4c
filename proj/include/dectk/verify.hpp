#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dectk/chain_complex.hpp"
#include "dectk/hodge.hpp"
#include "dectk/mesh.hpp"

namespace dectk {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    double rw_tol = 1e-12;
    double stokes_tol = 1e-10;
    double stiffness_tol = 1e-12;
    double leibniz_tol = 1e-10;
    double adjoint_tol = 1e-10;
    int stokes_poly_degree = 3;
    int random_pairs = 10;
    std::uint64_t seed = 20240611;
};

CheckResult check_boundary_squared(const ComplexMatrices& cm);
/// Alternating face count against the alternating Betti sum.
CheckResult check_euler(const AbstractComplex& ac, const ComplexMatrices& cm);
/// max over p and sigma of |R W e_sigma - e_sigma|.
CheckResult check_rw_identity(const AbstractComplex& ac, const GeometricComplex& gc, double tol);
/// |R(d w) - d R(w)| for random polynomial p-forms, p < n, relative to the
/// largest entry of R(d w) when that exceeds one.
CheckResult check_stokes(const AbstractComplex& ac, const GeometricComplex& gc, int poly_degree, double tol,
                         std::uint64_t seed);
/// dim harmonic_basis(p) = beta_p for every p.
CheckResult check_harmonic_betti(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind);
/// Whitney stiffness against the cotangent formula.
CheckResult check_stiffness(const AbstractComplex& ac, const GeometricComplex& gc, double tol);
/// a cup b = (-1)^{pq} b cup a, compared exactly.
CheckResult check_cup_commutativity(const AbstractComplex& ac, const GeometricComplex& gc, std::uint64_t seed);
/// d(a cup b) = da cup b + (-1)^p a cup db.
CheckResult check_cup_leibniz(const AbstractComplex& ac, const GeometricComplex& gc, double tol,
                              std::uint64_t seed);
/// <delta c, w>_{M_{p-1}} = <c, d w>_{M_p} on random pairs in every degree.
CheckResult check_adjointness(const HodgeComplex& hodges, int pairs, double tol, std::uint64_t seed);

std::vector<CheckResult> run_verification(const GeometricComplex& gc, const VerifyOptions& options = {});

} // namespace dectk
