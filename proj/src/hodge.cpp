#include "dectk/hodge.hpp"

#include <Eigen/SVD>

#include "dectk/combinatorics.hpp"
#include "dectk/errors.hpp"

namespace dectk {

std::string to_string(HodgeKind kind)
{
    return kind == HodgeKind::Galerkin ? "galerkin" : "diagonal";
}

HodgeKind parse_hodge_kind(const std::string& name)
{
    if (name == "galerkin") {
        return HodgeKind::Galerkin;
    }
    if (name == "diagonal") {
        return HodgeKind::Diagonal;
    }
    throw ValidationError("unknown Hodge kind \"" + name + "\" (expected galerkin or diagonal)");
}

DiscreteHodge galerkin_mass_matrix(const AbstractComplex& ac, const GeometricComplex& gc, int p,
                                   std::span<const Eigen::MatrixXd> material)
{
    const int n = ac.dim();
    if (p < 0 || p > n) {
        throw IndexError("mass matrix degree out of range");
    }
    if (!material.empty() && material.size() != ac.count(n)) {
        throw IndexError("material tensors must be given for every top simplex");
    }
    const QuadratureRule& rule = simplex_rule(n, 2);
    const auto& combos = basis_multi_indices(n + 1, p + 1);
    const std::size_t k = combos.size();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(ac.count(n) * k * k);

    std::vector<std::vector<Covector>> basis(rule.points.size());
    for (std::size_t t = 0; t < ac.count(n); ++t) {
        const Simplex& top = ac.simplex(n, t);
        const double vol = simplex_volume(gc, top);
        const Eigen::MatrixXd grads = barycentric_gradients(gc, top);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            basis[q].clear();
            for (std::size_t a = 0; a < k; ++a) {
                basis[q].push_back(local_whitney_form(grads, combos[a], rule.points[q]));
            }
        }
        const auto faces = ac.faces_of_top(p, t);
        for (std::size_t a = 0; a < k; ++a) {
            // upper triangle only, mirrored so the result is exactly symmetric
            for (std::size_t b = a; b < k; ++b) {
                double s = 0.0;
                for (std::size_t q = 0; q < rule.points.size(); ++q) {
                    const double ip = material.empty() ? inner(basis[q][a], basis[q][b])
                                                       : inner(basis[q][a], basis[q][b], material[t]);
                    s += rule.weights[q] * ip;
                }
                trips.emplace_back(static_cast<int>(faces[a]), static_cast<int>(faces[b]), vol * s);
                if (b != a) {
                    trips.emplace_back(static_cast<int>(faces[b]), static_cast<int>(faces[a]), vol * s);
                }
            }
        }
    }
    DiscreteHodge h{HodgeKind::Galerkin, p, {}};
    const auto m = static_cast<Eigen::Index>(ac.count(p));
    h.matrix.resize(m, m);
    h.matrix.setFromTriplets(trips.begin(), trips.end());
    return h;
}

DiscreteHodge diagonal_hodge(const AbstractComplex& ac, const GeometricComplex& gc, int p)
{
    if (p < 0 || p > ac.dim()) {
        throw IndexError("Hodge degree out of range");
    }
    const DualVolumes dv = barycentric_dual_volumes(gc, ac);
    const auto primal = primal_volumes(gc, ac, p);
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t i = 0; i < primal.size(); ++i) {
        trips.emplace_back(static_cast<int>(i), static_cast<int>(i), dv.cell[p][i] / primal[i]);
    }
    DiscreteHodge h{HodgeKind::Diagonal, p, {}};
    const auto m = static_cast<Eigen::Index>(primal.size());
    h.matrix.resize(m, m);
    h.matrix.setFromTriplets(trips.begin(), trips.end());
    return h;
}

HodgeComplex::HodgeComplex(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind,
                           std::span<const Eigen::MatrixXd> material)
    : kind_(kind)
{
    const int n = ac.dim();
    for (int p = 0; p < n; ++p) {
        d_.push_back(coboundary_matrix(ac, p).to_real());
    }
    for (int p = 0; p <= n; ++p) {
        mass_.push_back(kind == HodgeKind::Galerkin ? galerkin_mass_matrix(ac, gc, p, material)
                                                    : diagonal_hodge(ac, gc, p));
        auto f = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
        f->compute(mass_.back().matrix);
        factor_.push_back(f->info() == Eigen::Success ? f : nullptr);
    }
}

Eigen::VectorXd HodgeComplex::solve_mass(int p, const Eigen::VectorXd& rhs) const
{
    if (p < 0 || p > dim()) {
        throw IndexError("mass degree out of range");
    }
    if (!factor_[p]) {
        throw SolverError("factorization of the degree-" + std::to_string(p) + " Hodge matrix failed");
    }
    Eigen::VectorXd y = factor_[p]->solve(rhs);
    if (factor_[p]->info() != Eigen::Success) {
        throw SolverError("Hodge solve failed in degree " + std::to_string(p));
    }
    return y;
}

double HodgeComplex::inner(const Cochain& a, const Cochain& b) const
{
    if (a.degree != b.degree || a.degree < 0 || a.degree > dim()) {
        throw IndexError("inner product of cochains of different degrees");
    }
    return a.values.dot(mass_[a.degree].matrix * b.values);
}

Cochain codifferential(const Cochain& c, const HodgeComplex& hodges)
{
    const int p = c.degree;
    if (p < 1 || p > hodges.dim()) {
        throw IndexError("codifferential needs a cochain of degree 1.." + std::to_string(hodges.dim()));
    }
    if (static_cast<std::size_t>(c.values.size()) != hodges.count(p)) {
        throw IndexError("cochain length does not match the complex");
    }
    const Eigen::VectorXd rhs = hodges.d(p - 1).transpose() * (hodges.mass(p).matrix * c.values);
    return {p - 1, hodges.solve_mass(p - 1, rhs)};
}

Cochain hodge_laplacian_apply(const Cochain& c, const HodgeComplex& hodges)
{
    const int p = c.degree;
    const int n = hodges.dim();
    if (p < 0 || p > n || static_cast<std::size_t>(c.values.size()) != hodges.count(p)) {
        throw IndexError("cochain does not match the complex");
    }
    Cochain out{p, Eigen::VectorXd::Zero(c.values.size())};
    if (p < n) {
        const Cochain dc{p + 1, hodges.d(p) * c.values};
        out.values += codifferential(dc, hodges).values;
    }
    if (p > 0) {
        const Cochain delta = codifferential(c, hodges);
        out.values += hodges.d(p - 1) * delta.values;
    }
    return out;
}

HarmonicBasis harmonic_basis(const HodgeComplex& hodges, int p, double rank_tol)
{
    const int n = hodges.dim();
    if (p < 0 || p > n) {
        throw IndexError("harmonic degree out of range");
    }
    const auto cols = static_cast<Eigen::Index>(hodges.count(p));
    Eigen::MatrixXd upper = p < n ? Eigen::MatrixXd(hodges.d(p)) : Eigen::MatrixXd(0, cols);
    Eigen::MatrixXd lower = p > 0 ? Eigen::MatrixXd(Eigen::SparseMatrix<double>(
                                        hodges.d(p - 1).transpose() * hodges.mass(p).matrix))
                                  : Eigen::MatrixXd(0, cols);
    // Bring the metric block to the scale of the +-1 coboundary block.
    if (lower.size() > 0) {
        const double scale = lower.cwiseAbs().maxCoeff();
        if (scale > 0.0) {
            lower /= scale;
        }
    }
    Eigen::MatrixXd stacked(upper.rows() + lower.rows(), cols);
    stacked << upper, lower;

    Eigen::MatrixXd kernel;
    if (stacked.rows() == 0) {
        kernel = Eigen::MatrixXd::Identity(cols, cols);
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double largest = sv.size() > 0 ? sv(0) : 0.0;
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            rank += sv(i) > rank_tol * largest;
        }
        kernel = svd.matrixV().rightCols(cols - rank);
    }

    HarmonicBasis hb;
    hb.degree = p;
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
        hb.vectors.push_back({p, kernel.col(j)});
    }
    hb.gram = kernel.transpose() * (hodges.mass(p).matrix * kernel);
    return hb;
}

} // namespace dectk
