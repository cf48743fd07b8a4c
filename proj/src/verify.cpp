#include "dectk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dectk/errors.hpp"
#include "dectk/homology.hpp"
#include "dectk/poisson.hpp"
#include "dectk/whitney.hpp"

namespace dectk {

namespace {

Cochain random_cochain(const AbstractComplex& ac, int p, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Cochain c = Cochain::zero(ac, p);
    for (Eigen::Index i = 0; i < c.values.size(); ++i) {
        c.values[i] = u(rng);
    }
    return c;
}

double max_abs(const Eigen::VectorXd& v)
{
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

CheckResult finish(std::string name, double measured, double tol, std::string detail = {})
{
    return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

std::string join(const std::vector<std::size_t>& v)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s << (i ? " " : "") << v[i];
    }
    return s.str();
}

} // namespace

CheckResult check_boundary_squared(const ComplexMatrices& cm)
{
    std::size_t bad = 0;
    for (int p = 1; p < cm.dim(); ++p) {
        bad += (cm.boundary(p) * cm.boundary(p + 1)).nnz();
    }
    return finish("boundary squared is zero", static_cast<double>(bad), 0.0,
                  std::to_string(bad) + " nonzero entries in composites");
}

CheckResult check_euler(const AbstractComplex& ac, const ComplexMatrices& cm)
{
    const auto betti = betti_numbers(cm);
    long long alt = 0;
    for (std::size_t p = 0; p < betti.size(); ++p) {
        alt += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(betti[p]);
    }
    const long long chi = ac.euler_characteristic();
    return finish("Euler characteristic", static_cast<double>(std::llabs(chi - alt)), 0.0,
                  "chi = " + std::to_string(chi) + ", alternating Betti sum = " + std::to_string(alt));
}

CheckResult check_rw_identity(const AbstractComplex& ac, const GeometricComplex& gc, double tol)
{
    double worst = 0.0;
    for (int p = 0; p <= ac.dim(); ++p) {
        for (std::size_t s = 0; s < ac.count(p); ++s) {
            const Cochain e = Cochain::unit(ac, p, s);
            const Cochain back = de_rham_map(whitney_interpolate(ac, gc, e), ac, gc, p);
            worst = std::max(worst, max_abs(back.values - e.values));
        }
    }
    return finish("de Rham of Whitney is the identity", worst, tol);
}

CheckResult check_stokes(const AbstractComplex& ac, const GeometricComplex& gc, int poly_degree, double tol,
                         std::uint64_t seed)
{
    const ComplexMatrices cm(ac);
    double worst = 0.0;
    for (int p = 0; p < ac.dim(); ++p) {
        const auto form = PolynomialForm::random(gc.embed_dim(), p, poly_degree, static_cast<unsigned>(seed + p));
        const Cochain lhs = de_rham_map(form.exterior_derivative().field(), ac, gc, p + 1);
        const Cochain rhs = coboundary_apply(cm, de_rham_map(form.field(), ac, gc, p));
        const double scale = std::max(1.0, max_abs(lhs.values));
        worst = std::max(worst, max_abs(lhs.values - rhs.values) / scale);
    }
    return finish("Stokes commutation R d = d R", worst, tol,
                  "polynomial coefficients up to degree " + std::to_string(poly_degree));
}

CheckResult check_harmonic_betti(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind)
{
    const ComplexMatrices cm(ac);
    const auto betti = betti_numbers(cm);
    const HodgeComplex hodges(ac, gc, kind);
    std::vector<std::size_t> dims;
    std::size_t mismatches = 0;
    for (int p = 0; p <= ac.dim(); ++p) {
        dims.push_back(harmonic_basis(hodges, p).vectors.size());
        mismatches += dims.back() != betti[p];
    }
    return finish("harmonic dimensions equal Betti numbers (" + to_string(kind) + ")",
                  static_cast<double>(mismatches), 0.0, "harmonic " + join(dims) + ", Betti " + join(betti));
}

CheckResult check_stiffness(const AbstractComplex& ac, const GeometricComplex& gc, double tol)
{
    if (ac.dim() < 1 || ac.dim() > 3) {
        return {"Whitney stiffness equals cotangent stiffness", true, 0.0, tol, "skipped: dimension"};
    }
    const Eigen::SparseMatrix<double> diff = whitney_stiffness(ac, gc) - cotangent_stiffness(ac, gc);
    double worst = 0.0;
    for (int c = 0; c < diff.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it) {
            worst = std::max(worst, std::abs(it.value()));
        }
    }
    return finish("Whitney stiffness equals cotangent stiffness", worst, tol);
}

CheckResult check_cup_commutativity(const AbstractComplex& ac, const GeometricComplex& gc, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int p = 0; p <= ac.dim(); ++p) {
        for (int q = 0; p + q <= ac.dim(); ++q) {
            const Cochain a = random_cochain(ac, p, rng);
            const Cochain b = random_cochain(ac, q, rng);
            const double sign = (p * q) % 2 == 0 ? 1.0 : -1.0;
            const Cochain ab = cup_product(ac, gc, a, b);
            const Cochain ba = cup_product(ac, gc, b, a);
            worst = std::max(worst, max_abs(ab.values - sign * ba.values));
        }
    }
    return finish("cup product graded commutativity", worst, 0.0);
}

CheckResult check_cup_leibniz(const AbstractComplex& ac, const GeometricComplex& gc, double tol,
                              std::uint64_t seed)
{
    const ComplexMatrices cm(ac);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int p = 0; p < ac.dim(); ++p) {
        for (int q = 0; p + q < ac.dim(); ++q) {
            const Cochain a = random_cochain(ac, p, rng);
            const Cochain b = random_cochain(ac, q, rng);
            const Cochain lhs = coboundary_apply(cm, cup_product(ac, gc, a, b));
            const Cochain t1 = cup_product(ac, gc, coboundary_apply(cm, a), b);
            const Cochain t2 = cup_product(ac, gc, a, coboundary_apply(cm, b));
            const double sign = p % 2 == 0 ? 1.0 : -1.0;
            worst = std::max(worst, max_abs(lhs.values - t1.values - sign * t2.values));
        }
    }
    return finish("cup product Leibniz rule", worst, tol);
}

CheckResult check_adjointness(const HodgeComplex& hodges, int pairs, double tol, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_vec = [&](std::size_t n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v[i] = u(rng);
        }
        return v;
    };
    double worst = 0.0;
    for (int p = 1; p <= hodges.dim(); ++p) {
        for (int k = 0; k < pairs; ++k) {
            const Cochain c{p, random_vec(hodges.count(p))};
            const Cochain w{p - 1, random_vec(hodges.count(p - 1))};
            const Cochain dw{p, hodges.d(p - 1) * w.values};
            const double lhs = hodges.inner(codifferential(c, hodges), w);
            const double rhs = hodges.inner(c, dw);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return finish("codifferential is the adjoint of d (" + to_string(hodges.kind()) + ")", worst, tol);
}

std::vector<CheckResult> run_verification(const GeometricComplex& gc, const VerifyOptions& options)
{
    const AbstractComplex ac = abstr(gc);
    const ComplexMatrices cm(ac);
    std::vector<CheckResult> out;
    out.push_back(check_boundary_squared(cm));
    out.push_back(check_euler(ac, cm));
    out.push_back(check_rw_identity(ac, gc, options.rw_tol));
    out.push_back(check_stokes(ac, gc, options.stokes_poly_degree, options.stokes_tol, options.seed));
    for (HodgeKind kind : {HodgeKind::Galerkin, HodgeKind::Diagonal}) {
        out.push_back(check_harmonic_betti(ac, gc, kind));
    }
    out.push_back(check_stiffness(ac, gc, options.stiffness_tol));
    out.push_back(check_cup_commutativity(ac, gc, options.seed + 1));
    out.push_back(check_cup_leibniz(ac, gc, options.leibniz_tol, options.seed + 2));
    for (HodgeKind kind : {HodgeKind::Galerkin, HodgeKind::Diagonal}) {
        out.push_back(check_adjointness(HodgeComplex(ac, gc, kind), options.random_pairs, options.adjoint_tol,
                                        options.seed + 3));
    }
    return out;
}

} // namespace dectk
