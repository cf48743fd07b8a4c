#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "dectk/errors.hpp"
#include "dectk/fixtures.hpp"
#include "dectk/homology.hpp"
#include "dectk/poisson.hpp"
#include "oracles.hpp"

using namespace dectk;

namespace {

Eigen::MatrixXd to_dense(const Eigen::SparseMatrix<double>& m)
{
    return Eigen::MatrixXd(m);
}

GeometricComplex refined(const std::string& name, int times)
{
    auto gc = load_mesh_file(oracle::fixture(name));
    for (int i = 0; i < times; ++i) {
        gc = uniform_refine(gc);
    }
    return gc;
}

Eigen::VectorXd vertex_values(const GeometricComplex& gc, const ScalarField& u)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(gc.vertex_count()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = u(gc.vertex(static_cast<Index>(i)));
    }
    return v;
}

Eigen::VectorXd vec2(double a, double b)
{
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

} // namespace

TEST_CASE("stiffness of the reference triangle")
{
    const auto gc = fixtures::reference_triangle();
    const auto ac = abstr(gc);
    Eigen::Matrix3d expected;
    expected << 2, -1, -1, -1, 1, 0, -1, 0, 1;
    expected *= 0.5;
    CHECK(oracle::max_abs_diff(to_dense(whitney_stiffness(ac, gc)), expected) <= 1e-15);
    CHECK(oracle::max_abs_diff(to_dense(cotangent_stiffness(ac, gc)), expected) <= 1e-15);
}

TEST_CASE("Whitney and cotangent stiffness agree")
{
    for (const auto& name : {"square", "grid8", "disk", "annulus", "torus", "torus_fine", "rp2",
                             "tetrahedron_boundary", "hollow_triangle", "tet", "cube"}) {
        CAPTURE(name);
        const auto gc = load_mesh_file(oracle::fixture(name));
        const auto ac = abstr(gc);
        const auto a = to_dense(whitney_stiffness(ac, gc));
        const auto b = to_dense(cotangent_stiffness(ac, gc));
        CHECK(oracle::max_abs_diff(a, b) <= 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
        // rows of a Laplacian sum to zero
        CHECK((a * Eigen::VectorXd::Ones(a.cols())).cwiseAbs().maxCoeff() <= 1e-12);
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto gc = fixtures::random_planar_mesh(seed, 4);
        const auto ac = abstr(gc);
        CHECK(oracle::max_abs_diff(to_dense(whitney_stiffness(ac, gc)), to_dense(cotangent_stiffness(ac, gc)))
              <= 1e-12);
    }
}

TEST_CASE("conjugate gradients on small systems")
{
    LinearSystem eye;
    eye.matrix.resize(3, 3);
    eye.matrix.setIdentity();
    eye.rhs = Eigen::Vector3d(1, -2, 3);
    const auto r1 = cg_solve(eye, 1e-14, 10);
    CHECK(r1.iterations == 1);
    CHECK(r1.x == eye.rhs);

    LinearSystem two;
    Eigen::MatrixXd a(2, 2);
    a << 4, 1, 1, 3;
    two.matrix = a.sparseView();
    two.rhs = vec2(1, 2);
    const auto r2 = cg_solve(two, 1e-14, 10);
    CHECK(r2.iterations <= 2);
    CHECK(r2.x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
    CHECK(r2.x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-14));

    LinearSystem zero = two;
    zero.rhs.setZero();
    CHECK(cg_solve(zero, 1e-12, 10).iterations == 0);
}

TEST_CASE("conjugate gradients on the h = 1/8 grid")
{
    const auto gc = load_mesh_file(oracle::fixture("grid8"));
    const auto ac = abstr(gc);
    const auto m = ManufacturedSolution::sine();
    const auto sys = assemble_poisson(ac, gc, HodgeKind::Galerkin, m.source, m.u);
    const auto res = cg_solve(sys, 1e-10, 200);
    CHECK(res.residual <= 1e-10 * sys.rhs.norm());
    CHECK((sys.rhs - sys.matrix * res.x).norm() == doctest::Approx(res.residual));
    try {
        cg_solve(sys, 1e-10, 2);
        FAIL("expected a solver error");
    } catch (const SolverError& e) {
        CHECK(std::string(e.what()).find("did not converge in 2 iterations") != std::string::npos);
    }
}

TEST_CASE("Dirichlet elimination keeps the system symmetric")
{
    const auto gc = refined("square", 2);
    const auto ac = abstr(gc);
    const auto m = ManufacturedSolution::sine();
    const auto sys = assemble_poisson(ac, gc, HodgeKind::Galerkin, m.source, m.u);
    const auto a = to_dense(sys.matrix);
    CHECK(oracle::max_abs_diff(a, a.transpose()) == 0.0);
    const auto boundary = boundary_vertices(ac);
    CHECK(sys.constrained.size() == boundary.size());
    for (const auto& [v, value] : sys.constrained) {
        const auto i = static_cast<Eigen::Index>(v);
        CHECK(a(i, i) == 1.0);
        CHECK(a.row(i).cwiseAbs().sum() == 1.0);
        CHECK(sys.rhs[i] == value);
    }
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff() > 0.0);
    // without boundary data the stiffness is returned as is
    const auto free = assemble_poisson(ac, gc, HodgeKind::Galerkin, m.source, std::nullopt);
    CHECK(free.constrained.empty());
    CHECK(oracle::max_abs_diff(to_dense(free.matrix), to_dense(free.stiffness)) == 0.0);
}

TEST_CASE("a closed surface has no Dirichlet boundary")
{
    const auto gc = load_mesh_file(oracle::fixture("torus"));
    const auto ac = abstr(gc);
    const auto m = ManufacturedSolution::sine();
    CHECK_THROWS_AS(assemble_poisson(ac, gc, HodgeKind::Galerkin, m.source, m.u), ValidationError);
}

TEST_CASE("uniform refinement")
{
    const auto tri = uniform_refine(fixtures::reference_triangle());
    CHECK(tri.vertex_count() == 6);
    CHECK(tri.top_count() == 4);
    const auto sq = uniform_refine(load_mesh_file(oracle::fixture("square")));
    CHECK(sq.vertex_count() == 9);
    CHECK(sq.top_count() == 8);
    const auto base = load_mesh_file(oracle::fixture("disk"));
    const auto fine = uniform_refine(base);
    const auto base_ac = abstr(base);
    CHECK(fine.vertex_count() == base.vertex_count() + base_ac.count(1));
    // children keep the orientation of their parent and a quarter of its area
    for (std::size_t t = 0; t < base.top_count(); ++t) {
        const double parent = signed_volume(base, base.top_simplices()[t]);
        for (std::size_t c = 4 * t; c < 4 * t + 4; ++c) {
            const double child = signed_volume(fine, fine.top_simplices()[c]);
            CHECK(child == doctest::Approx(parent / 4.0).epsilon(1e-13));
        }
    }
    CHECK(mesh_size(fine, abstr(fine)) == doctest::Approx(mesh_size(base, base_ac) / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(uniform_refine(fixtures::unit_cube()), ValidationError);
    CHECK_THROWS_AS(uniform_refine(fixtures::hollow_triangle()), ValidationError);
}

TEST_CASE("refinement preserves homology")
{
    for (const auto& name : {"annulus", "torus", "rp2", "tetrahedron_boundary"}) {
        CAPTURE(name);
        const auto gc = load_mesh_file(oracle::fixture(name));
        const ComplexMatrices coarse(abstr(gc));
        const ComplexMatrices fine(abstr(uniform_refine(gc)));
        CHECK(betti_numbers(fine) == betti_numbers(coarse));
        for (int p = 0; p <= 2; ++p) {
            CHECK(torsion_coefficients(fine, p) == torsion_coefficients(coarse, p));
        }
    }
}

TEST_CASE("error norms")
{
    const auto gc = load_mesh_file(oracle::fixture("square"));
    const auto ac = abstr(gc);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
    CHECK(l2_error(ac, gc, zero, [](const Eigen::VectorXd&) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    // int x^2 over the unit square is 1/3
    CHECK(l2_error(ac, gc, zero, [](const Eigen::VectorXd& x) { return x[0]; })
          == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
    CHECK(energy_error(ac, gc, zero, [](const Eigen::VectorXd&) { return vec2(1, 0); })
          == doctest::Approx(1.0).epsilon(1e-14));
    const ScalarField u = [](const Eigen::VectorXd& x) { return 1.0 + 2.0 * x[0] - x[1]; };
    CHECK(l2_error(ac, gc, vertex_values(gc, u), u) <= 1e-15);
    CHECK(energy_error(ac, gc, vertex_values(gc, u), [](const Eigen::VectorXd&) { return vec2(2, -1); }) <= 1e-14);
}

TEST_CASE("affine solutions are reproduced")
{
    const auto gc = refined("square", 3);
    const auto ac = abstr(gc);
    for (const auto& m : {ManufacturedSolution::affine_field(0.0, vec2(1, 0)),
                          ManufacturedSolution::affine_field(1.0, vec2(2, -3))}) {
        CHECK(m.affine);
        const auto sol = solve_poisson(ac, gc, HodgeKind::Galerkin, m);
        CHECK((sol.values - vertex_values(gc, m.u)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(sol.dofs == 49);
    }
    const auto disk = load_mesh_file(oracle::fixture("disk"));
    const auto dac = abstr(disk);
    const auto m = ManufacturedSolution::affine_field(0.5, vec2(-1, 2));
    CHECK((solve_poisson(dac, disk, HodgeKind::Galerkin, m).values - vertex_values(disk, m.u)).cwiseAbs().maxCoeff()
          <= 1e-12);
}

TEST_CASE("discrete maximum principle on right-triangle grids")
{
    const auto gc = load_mesh_file(oracle::fixture("grid8"));
    const auto ac = abstr(gc);
    const auto sine = ManufacturedSolution::sine();
    const auto sol = solve_poisson(ac, gc, HodgeKind::Galerkin, sine);
    CHECK(sol.values.minCoeff() >= -1e-14);

    // harmonic data: interior values stay within the boundary range
    ManufacturedSolution saddle;
    saddle.name = "saddle";
    saddle.u = [](const Eigen::VectorXd& x) { return x[0] * x[0] - x[1] * x[1]; };
    saddle.grad = [](const Eigen::VectorXd& x) { return vec2(2 * x[0], -2 * x[1]); };
    saddle.source = [](const Eigen::VectorXd&) { return 0.0; };
    const auto h = solve_poisson(ac, gc, HodgeKind::Galerkin, saddle);
    const auto boundary = boundary_vertices(ac);
    double lo = 1e300, hi = -1e300;
    for (auto b : boundary) {
        lo = std::min(lo, h.values[static_cast<Eigen::Index>(b)]);
        hi = std::max(hi, h.values[static_cast<Eigen::Index>(b)]);
    }
    CHECK(h.values.minCoeff() >= lo - 1e-12);
    CHECK(h.values.maxCoeff() <= hi + 1e-12);
}

TEST_CASE("Galerkin convergence for the sine solution")
{
    const auto base = load_mesh_file(oracle::fixture("square"));
    const auto report = convergence_study(base, 4, ManufacturedSolution::sine(), HodgeKind::Galerkin);
    REQUIRE(report.levels.size() == 4);
    REQUIRE(report.l2_rates.size() == 3);
    CHECK(report.levels.front().h == doctest::Approx(std::sqrt(0.5)));
    CHECK(report.levels.back().h == doctest::Approx(std::sqrt(2.0) / 16.0));
    CHECK(report.levels.back().dofs == 225);
    for (std::size_t k = 0; k + 1 < report.levels.size(); ++k) {
        CHECK(report.levels[k + 1].l2 < report.levels[k].l2);
        CHECK(report.levels[k + 1].energy < report.levels[k].energy);
    }
    for (std::size_t k = 1; k < 3; ++k) {
        REQUIRE(report.l2_rates[k].has_value());
        CHECK(*report.l2_rates[k] >= 1.8);
        CHECK(*report.l2_rates[k] <= 2.2);
    }
    REQUIRE(report.energy_rates[2].has_value());
    CHECK(*report.energy_rates[2] >= 0.9);
    CHECK(*report.energy_rates[2] <= 1.1);

    const auto j = nlohmann::json::parse(report.json());
    CHECK(j["hodge"] == "galerkin");
    CHECK(j["levels"].size() == 4);
    CHECK(j["l2_rates"][2].get<double>() == doctest::Approx(*report.l2_rates[2]));
    const auto table = report.table();
    CHECK(table.find("hodge galerkin") != std::string::npos);
    CHECK(std::count(table.begin(), table.end(), '\n') == 6);
}

TEST_CASE("affine convergence study has no meaningful rates")
{
    const auto base = load_mesh_file(oracle::fixture("square"));
    const auto m = ManufacturedSolution::affine_field(1.0, vec2(2, -3));
    const auto report = convergence_study(base, 4, m, HodgeKind::Galerkin, 1e-14);
    for (const auto& l : report.levels) {
        CHECK(l.l2 <= 1e-13);
        CHECK(l.energy <= 1e-12);
    }
    for (const auto& r : report.l2_rates) {
        CHECK_FALSE(r.has_value());
    }
    for (const auto& r : report.energy_rates) {
        CHECK_FALSE(r.has_value());
    }
    const auto j = nlohmann::json::parse(report.json());
    CHECK(j["l2_rates"][0].is_null());
}

TEST_CASE("diagonal Hodge stalls on one-way diagonal grids")
{
    // Barycentric dual weights on this grid are 2/3 on axis edges and 1/3 on
    // diagonals, which adds (2/3) h^2 u_xy to the stencil. The scheme is not
    // consistent there, so the error levels off instead of converging.
    const auto base = load_mesh_file(oracle::fixture("square"));
    const auto report = convergence_study(base, 5, ManufacturedSolution::sine(), HodgeKind::Diagonal);
    REQUIRE(report.levels.size() == 5);
    CHECK(*report.l2_rates[0] > 1.5);
    CHECK(*report.l2_rates[3] < 0.1);
    CHECK(report.levels.back().l2 > 0.03);
    CHECK(report.levels.back().l2 < 0.04);
    const auto galerkin = convergence_study(base, 5, ManufacturedSolution::sine(), HodgeKind::Galerkin);
    CHECK(galerkin.levels.back().l2 < report.levels.back().l2 / 5.0);
}

TEST_CASE("convergence studies need three levels")
{
    const auto base = load_mesh_file(oracle::fixture("square"));
    CHECK_THROWS_AS(convergence_study(base, 2, ManufacturedSolution::sine(), HodgeKind::Galerkin), ValidationError);
}
