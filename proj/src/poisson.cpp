#include "dectk/poisson.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dectk/chain_complex.hpp"
#include "dectk/errors.hpp"
#include "dectk/quadrature.hpp"

namespace dectk {

namespace {

// cot of the angle between a and b, in any dimension.
double cot_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    const double dot = a.dot(b);
    const double cross = std::sqrt(std::max(a.squaredNorm() * b.squaredNorm() - dot * dot, 0.0));
    return dot / cross;
}

void add_edge_weight(std::vector<Eigen::Triplet<double>>& trips, Index i, Index j, double w)
{
    trips.emplace_back(i, j, -w);
    trips.emplace_back(j, i, -w);
    trips.emplace_back(i, i, w);
    trips.emplace_back(j, j, w);
}

} // namespace

ManufacturedSolution ManufacturedSolution::sine()
{
    constexpr double pi = std::numbers::pi;
    ManufacturedSolution m;
    m.name = "sin(pi x) sin(pi y)";
    m.u = [](const Eigen::VectorXd& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); };
    m.grad = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
        g[0] = pi * std::cos(pi * x[0]) * std::sin(pi * x[1]);
        g[1] = pi * std::sin(pi * x[0]) * std::cos(pi * x[1]);
        return g;
    };
    m.source = [](const Eigen::VectorXd& x) { return 2.0 * pi * pi * std::sin(pi * x[0]) * std::sin(pi * x[1]); };
    return m;
}

ManufacturedSolution ManufacturedSolution::affine_field(double c0, const Eigen::VectorXd& c)
{
    ManufacturedSolution m;
    m.name = "affine";
    m.affine = true;
    m.u = [c0, c](const Eigen::VectorXd& x) { return c0 + c.dot(x.head(c.size())); };
    m.grad = [c](const Eigen::VectorXd& x) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
        g.head(c.size()) = c;
        return g;
    };
    m.source = [](const Eigen::VectorXd&) { return 0.0; };
    return m;
}

Eigen::SparseMatrix<double> whitney_stiffness(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind)
{
    if (ac.dim() < 1) {
        throw ValidationError("stiffness needs a complex of dimension at least 1");
    }
    const Eigen::SparseMatrix<double> d0 = coboundary_matrix(ac, 0).to_real();
    const DiscreteHodge m1 =
        kind == HodgeKind::Galerkin ? galerkin_mass_matrix(ac, gc, 1) : diagonal_hodge(ac, gc, 1);
    const Eigen::SparseMatrix<double> product = d0.transpose() * (m1.matrix * d0);
    // the product is symmetric only up to rounding
    Eigen::SparseMatrix<double> a = 0.5 * (product + Eigen::SparseMatrix<double>(product.transpose()));
    a.prune(0.0);
    return a;
}

Eigen::SparseMatrix<double> cotangent_stiffness(const AbstractComplex& ac, const GeometricComplex& gc)
{
    const int n = ac.dim();
    if (n < 1 || n > 3) {
        throw ValidationError("cotangent stiffness is defined for dimensions 1 to 3, got " + std::to_string(n));
    }
    std::vector<Eigen::Triplet<double>> trips;
    for (const auto& t : ac.simplices(n)) {
        auto v = [&](int k) { return gc.vertex(t[k]); };
        if (n == 1) {
            add_edge_weight(trips, t[0], t[1], 1.0 / (v(1) - v(0)).norm());
        } else if (n == 2) {
            for (int k = 0; k < 3; ++k) {
                const int i = (k + 1) % 3;
                const int j = (k + 2) % 3;
                add_edge_weight(trips, t[i], t[j], 0.5 * cot_between(v(i) - v(k), v(j) - v(k)));
            }
        } else {
            // Edge (i, j) couples through the opposite edge (k, l) and the
            // dihedral angle along it.
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) {
                    int k = 0;
                    while (k == i || k == j) {
                        ++k;
                    }
                    int l = k + 1;
                    while (l == i || l == j) {
                        ++l;
                    }
                    const Eigen::VectorXd e = v(l) - v(k);
                    const Eigen::VectorXd dir = e.normalized();
                    Eigen::VectorXd a = v(i) - v(k);
                    Eigen::VectorXd b = v(j) - v(k);
                    a -= a.dot(dir) * dir;
                    b -= b.dot(dir) * dir;
                    add_edge_weight(trips, t[i], t[j], e.norm() * cot_between(a, b) / 6.0);
                }
            }
        }
    }
    const auto m = static_cast<Eigen::Index>(ac.count(0));
    Eigen::SparseMatrix<double> a(m, m);
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

LinearSystem assemble_poisson(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind,
                              const ScalarField& source, const std::optional<ScalarField>& dirichlet)
{
    LinearSystem sys;
    sys.stiffness = whitney_stiffness(ac, gc, kind);
    const DiscreteHodge m0 = kind == HodgeKind::Galerkin ? galerkin_mass_matrix(ac, gc, 0) : diagonal_hodge(ac, gc, 0);
    const auto m = static_cast<Eigen::Index>(ac.count(0));
    Eigen::VectorXd f(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        f[i] = source(gc.vertex(static_cast<Index>(i)));
    }
    sys.rhs = m0.matrix * f;

    if (!dirichlet) {
        sys.matrix = sys.stiffness;
        return sys;
    }
    const auto boundary = boundary_vertices(ac);
    if (boundary.empty()) {
        throw ValidationError("Dirichlet problem on a complex without boundary");
    }
    std::vector<char> fixed(static_cast<std::size_t>(m), 0);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
    for (std::size_t b : boundary) {
        fixed[b] = 1;
        g[static_cast<Eigen::Index>(b)] = (*dirichlet)(gc.vertex(static_cast<Index>(b)));
        sys.constrained.emplace_back(b, g[static_cast<Eigen::Index>(b)]);
    }
    sys.rhs -= sys.stiffness * g;
    std::vector<Eigen::Triplet<double>> trips;
    for (int c = 0; c < sys.stiffness.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(sys.stiffness, c); it; ++it) {
            if (!fixed[it.row()] && !fixed[it.col()]) {
                trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
            }
        }
    }
    for (const auto& [b, value] : sys.constrained) {
        trips.emplace_back(static_cast<int>(b), static_cast<int>(b), 1.0);
        sys.rhs[static_cast<Eigen::Index>(b)] = value;
    }
    sys.matrix.resize(m, m);
    sys.matrix.setFromTriplets(trips.begin(), trips.end());
    return sys;
}

CgResult cg_solve(const LinearSystem& sys, double tol, int max_iter)
{
    const Eigen::SparseMatrix<double>& a = sys.matrix;
    const Eigen::VectorXd& b = sys.rhs;
    CgResult res;
    res.x = Eigen::VectorXd::Zero(b.size());
    const double target = tol * b.norm();
    Eigen::VectorXd r = b;
    double rr = r.squaredNorm();
    if (std::sqrt(rr) <= target) {
        res.residual = std::sqrt(rr);
        return res;
    }
    Eigen::VectorXd p = r;
    Eigen::VectorXd ap(b.size());
    while (res.iterations < max_iter) {
        ap.noalias() = a * p;
        const double alpha = rr / p.dot(ap);
        res.x += alpha * p;
        r -= alpha * ap;
        ++res.iterations;
        const double rr_new = r.squaredNorm();
        if (std::sqrt(rr_new) <= target) {
            // Confirm against the true residual; restart from it if the
            // recurrence has drifted.
            r = b - a * res.x;
            rr = r.squaredNorm();
            if (std::sqrt(rr) <= target) {
                res.residual = std::sqrt(rr);
                return res;
            }
            p = r;
            continue;
        }
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    res.residual = (b - a * res.x).norm();
    if (res.residual <= target) {
        return res;
    }
    std::ostringstream msg;
    msg << "conjugate gradients did not converge in " << max_iter << " iterations (residual " << res.residual
        << ", target " << target << ")";
    throw SolverError(msg.str());
}

GeometricComplex uniform_refine(const GeometricComplex& gc)
{
    if (gc.complex_dim() != 2) {
        throw ValidationError("uniform refinement supports triangle meshes only, got dimension "
                              + std::to_string(gc.complex_dim()));
    }
    const AbstractComplex ac = abstr(gc);
    const auto m0 = static_cast<Index>(gc.vertex_count());
    Eigen::MatrixXd verts(gc.vertex_count() + ac.count(1), gc.embed_dim());
    verts.topRows(m0) = gc.vertices();
    for (std::size_t e = 0; e < ac.count(1); ++e) {
        const auto& s = ac.simplex(1, e);
        verts.row(m0 + static_cast<Index>(e)) = 0.5 * (gc.vertices().row(s[0]) + gc.vertices().row(s[1]));
    }
    auto mid = [&](Index a, Index b) {
        const Index s[2] = {std::min(a, b), std::max(a, b)};
        return m0 + static_cast<Index>(*ac.index_of(1, s));
    };
    std::vector<Simplex> tops;
    tops.reserve(4 * gc.top_count());
    for (const auto& t : gc.top_simplices()) {
        const Index a = t[0], b = t[1], c = t[2];
        const Index ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
        tops.push_back({a, ab, ca});
        tops.push_back({ab, b, bc});
        tops.push_back({ca, bc, c});
        tops.push_back({ab, bc, ca});
    }
    return GeometricComplex(2, std::move(verts), std::move(tops));
}

double l2_error(const AbstractComplex& ac, const GeometricComplex& gc, const Eigen::VectorXd& uh,
                const ScalarField& u)
{
    const int n = ac.dim();
    const QuadratureRule& rule = simplex_rule(n, 5);
    double sum = 0.0;
    for (const auto& t : ac.simplices(n)) {
        const double vol = simplex_volume(gc, t);
        double local = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto& xi = rule.points[q];
            double approx = 0.0;
            for (int k = 0; k <= n; ++k) {
                approx += xi[k] * uh[t[k]];
            }
            const double diff = u(barycentric_point(gc, t, xi)) - approx;
            local += rule.weights[q] * diff * diff;
        }
        sum += vol * local;
    }
    return std::sqrt(sum);
}

double energy_error(const AbstractComplex& ac, const GeometricComplex& gc, const Eigen::VectorXd& uh,
                    const VectorField& grad)
{
    const int n = ac.dim();
    const QuadratureRule& rule = simplex_rule(n, 5);
    double sum = 0.0;
    for (const auto& t : ac.simplices(n)) {
        const double vol = simplex_volume(gc, t);
        const Eigen::MatrixXd g = barycentric_gradients(gc, t);
        Eigen::VectorXd gh = Eigen::VectorXd::Zero(gc.embed_dim());
        for (int k = 0; k <= n; ++k) {
            gh += uh[t[k]] * g.col(k);
        }
        double local = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            local += rule.weights[q] * (grad(barycentric_point(gc, t, rule.points[q])) - gh).squaredNorm();
        }
        sum += vol * local;
    }
    return std::sqrt(sum);
}

PoissonSolution solve_poisson(const AbstractComplex& ac, const GeometricComplex& gc, HodgeKind kind,
                              const ManufacturedSolution& m, double tol, int max_iter)
{
    const LinearSystem sys = assemble_poisson(ac, gc, kind, m.source, m.u);
    const CgResult cg = cg_solve(sys, tol, max_iter);
    return {cg.x, cg.iterations, cg.residual, ac.count(0) - sys.constrained.size()};
}

ConvergenceReport convergence_study(const GeometricComplex& base, int levels, const ManufacturedSolution& m,
                                    HodgeKind kind, double tol)
{
    if (levels < 3) {
        throw ValidationError("a convergence study needs at least 3 levels, got " + std::to_string(levels));
    }
    ConvergenceReport report;
    report.kind = kind;
    report.solution = m.name;
    GeometricComplex mesh = base;
    for (int k = 1; k <= levels; ++k) {
        mesh = uniform_refine(mesh);
        const AbstractComplex ac = abstr(mesh);
        const PoissonSolution sol = solve_poisson(ac, mesh, kind, m, tol);
        ConvergenceLevel lvl;
        lvl.h = mesh_size(mesh, ac);
        lvl.dofs = sol.dofs;
        lvl.l2 = l2_error(ac, mesh, sol.values, m.u);
        lvl.energy = energy_error(ac, mesh, sol.values, m.grad);
        lvl.iterations = sol.iterations;
        report.levels.push_back(lvl);
    }
    auto rate = [](double coarse, double fine) -> std::optional<double> {
        constexpr double floor = 1e-12;
        if (coarse <= floor || fine <= floor) {
            return std::nullopt;
        }
        return std::log2(coarse / fine);
    };
    for (std::size_t k = 0; k + 1 < report.levels.size(); ++k) {
        report.l2_rates.push_back(rate(report.levels[k].l2, report.levels[k + 1].l2));
        report.energy_rates.push_back(rate(report.levels[k].energy, report.levels[k + 1].energy));
    }
    return report;
}

std::string ConvergenceReport::table() const
{
    auto show_rate = [](const std::optional<double>& r) {
        std::ostringstream s;
        if (r) {
            s << std::fixed << std::setprecision(3) << *r;
        } else {
            s << "-";
        }
        return s.str();
    };
    std::ostringstream out;
    out << "hodge " << to_string(kind) << ", u = " << solution << '\n';
    out << std::setw(5) << "level" << std::setw(12) << "h" << std::setw(9) << "dofs" << std::setw(14) << "L2 error"
        << std::setw(8) << "rate" << std::setw(14) << "energy" << std::setw(8) << "rate" << '\n';
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& l = levels[k];
        out << std::setw(5) << k + 1 << std::setw(12) << std::setprecision(5) << l.h << std::setw(9) << l.dofs
            << std::setw(14) << std::scientific << std::setprecision(4) << l.l2 << std::setw(8)
            << (k == 0 ? "" : show_rate(l2_rates[k - 1])) << std::setw(14) << l.energy << std::setw(8)
            << (k == 0 ? "" : show_rate(energy_rates[k - 1])) << std::defaultfloat << '\n';
    }
    return out.str();
}

std::string ConvergenceReport::json() const
{
    nlohmann::json j;
    j["hodge"] = to_string(kind);
    j["solution"] = solution;
    j["levels"] = nlohmann::json::array();
    for (const auto& l : levels) {
        j["levels"].push_back({{"h", l.h}, {"dofs", l.dofs}, {"l2_error", l.l2}, {"energy_error", l.energy},
                               {"iterations", l.iterations}});
    }
    auto rates = [](const std::vector<std::optional<double>>& rs) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& r : rs) {
            a.push_back(r ? nlohmann::json(*r) : nlohmann::json(nullptr));
        }
        return a;
    };
    j["l2_rates"] = rates(l2_rates);
    j["energy_rates"] = rates(energy_rates);
    return j.dump(2);
}

} // namespace dectk
