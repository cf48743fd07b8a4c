#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dectk/chain_complex.hpp"
#include "dectk/combinatorics.hpp"
#include "dectk/errors.hpp"
#include "dectk/exterior.hpp"
#include "dectk/fixtures.hpp"
#include "dectk/quadrature.hpp"
#include "dectk/whitney.hpp"
#include "oracles.hpp"

using namespace dectk;

namespace {

std::vector<double> random_bary(std::mt19937& rng, int n)
{
    std::exponential_distribution<double> e(1.0);
    std::vector<double> b(static_cast<std::size_t>(n + 1));
    double s = 0.0;
    for (auto& v : b) {
        v = e(rng);
        s += v;
    }
    for (auto& v : b) {
        v /= s;
    }
    // exact unit sum
    double rest = 1.0;
    for (int i = 0; i < n; ++i) {
        rest -= b[i];
    }
    b[n] = std::max(rest, 0.0);
    return b;
}

Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        out[i++] = x;
    }
    return out;
}

} // namespace

TEST_CASE("quadrature weights and exactness")
{
    for (int dim = 0; dim <= 3; ++dim) {
        for (int degree = 0; degree <= 6; ++degree) {
            const auto& rule = simplex_rule(dim, degree);
            CHECK(rule.exactness_degree >= degree);
            double sum = 0.0;
            for (double w : rule.weights) {
                sum += w;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
            // every barycentric monomial of total degree <= degree
            std::vector<int> alpha(static_cast<std::size_t>(dim + 1), 0);
            while (true) {
                int total = 0;
                for (int a : alpha) {
                    total += a;
                }
                if (total <= degree) {
                    double q = 0.0;
                    for (std::size_t k = 0; k < rule.points.size(); ++k) {
                        double m = rule.weights[k];
                        for (int i = 0; i <= dim; ++i) {
                            m *= std::pow(rule.points[k][i], alpha[i]);
                        }
                        q += m;
                    }
                    CHECK(q == doctest::Approx(oracle::barycentric_monomial(dim, 1.0, alpha)).epsilon(1e-13));
                }
                int i = 0;
                while (i <= dim && alpha[i] == degree) {
                    alpha[i] = 0;
                    ++i;
                }
                if (i > dim) {
                    break;
                }
                ++alpha[i];
            }
        }
    }
}

TEST_CASE("covector algebra")
{
    const Covector dx = Covector::one_form(vec({1, 0, 0}));
    const Covector dy = Covector::one_form(vec({0, 1, 0}));
    const Covector dz = Covector::one_form(vec({0, 0, 1}));
    const Covector dxdy = wedge(dx, dy);
    CHECK(dxdy.evaluate(Eigen::MatrixXd::Identity(3, 2)) == 1.0);
    CHECK(wedge(dy, dx).evaluate(Eigen::MatrixXd::Identity(3, 2)) == -1.0);
    CHECK(wedge(dxdy, dz).evaluate(Eigen::MatrixXd::Identity(3, 3)) == 1.0);
    CHECK(wedge(dx, dx).evaluate(Eigen::MatrixXd::Identity(3, 2)) == 0.0);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd g(3, 3);
        for (int i = 0; i < 9; ++i) {
            g(i / 3, i % 3) = u(rng);
        }
        // wedge of columns equals the minors, hence det on the full frame
        const Covector w = Covector::wedge_of_columns(g);
        CHECK(w.evaluate(Eigen::MatrixXd::Identity(3, 3)) == doctest::Approx(g.determinant()).epsilon(1e-13));
        Eigen::MatrixXd frame(3, 3);
        for (int i = 0; i < 9; ++i) {
            frame(i / 3, i % 3) = u(rng);
        }
        CHECK(w.evaluate(frame) == doctest::Approx((g.transpose() * frame).determinant()).epsilon(1e-12));
        // metric inner product with the identity metric is Euclidean
        const Covector a = Covector::wedge_of_columns(g.leftCols(2));
        const Covector b = Covector::wedge_of_columns(frame.leftCols(2));
        CHECK(inner(a, b, Eigen::MatrixXd::Identity(3, 3)) == doctest::Approx(inner(a, b)).epsilon(1e-13));
        // graded commutativity
        const Covector one = Covector::one_form(g.col(2));
        const auto ab = wedge(a, one), ba = wedge(one, a);
        for (std::size_t k = 0; k < ab.size(); ++k) {
            CHECK(ab[k] == ba[k]);
        }
    }
}

TEST_CASE("Whitney basis on the reference triangle")
{
    const auto gc = fixtures::reference_triangle();
    const auto ac = abstr(gc);
    const double third = 1.0 / 3.0;
    const std::vector<double> center{third, third, third};
    const Covector w = whitney_basis(ac, gc, 1, 0, 0, center);
    CHECK(w[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const std::vector<double> v0{1, 0, 0};
    const Covector w0 = whitney_basis(ac, gc, 1, 0, 0, v0);
    CHECK(w0[0] == 1.0);
    CHECK(w0[1] == 0.0);
    const std::vector<double> v2{0, 0, 1};
    CHECK(whitney_basis(ac, gc, 0, 2, 0, v2)[0] == 1.0);
    CHECK(whitney_basis(ac, gc, 0, 2, 0, v0)[0] == 0.0);
    // the 2-form is the constant density 1/area
    CHECK(whitney_basis(ac, gc, 2, 0, 0, center)[0] == doctest::Approx(2.0).epsilon(1e-15));

    const std::vector<double> bad{0.5, 0.6, 0.0};
    CHECK_THROWS_AS(whitney_basis(ac, gc, 1, 0, 0, bad), IndexError);
    const std::vector<double> short_point{0.5, 0.5};
    CHECK_THROWS_AS(whitney_basis(ac, gc, 1, 0, 0, short_point), IndexError);
    const auto sq = abstr(fixtures::unit_square());
    // edge (1,2) is not a face of the triangle (0,2,3)
    CHECK_THROWS_AS(whitney_basis(sq, fixtures::unit_square(), 1, 3, 1, center), IndexError);
}

TEST_CASE("Whitney 1-forms against lambda_i grad lambda_j - lambda_j grad lambda_i")
{
    std::mt19937 rng(5);
    for (const auto& name : {"disk", "cube"}) {
        const auto gc = load_mesh_file(oracle::fixture(name));
        const auto ac = abstr(gc);
        const int n = ac.dim();
        for (std::size_t t = 0; t < ac.count(n); t += 7) {
            const auto& top = ac.simplex(n, t);
            const Eigen::MatrixXd g = oracle::gradients_affine(oracle::rows_of(gc, top));
            const auto bary = random_bary(rng, n);
            const auto faces = ac.faces_of_top(1, t);
            const auto local = combinations(n + 1, 2);
            for (std::size_t k = 0; k < local.size(); ++k) {
                const int i = local[k][0], j = local[k][1];
                const Eigen::VectorXd expected = bary[i] * g.col(j) - bary[j] * g.col(i);
                const Covector w = whitney_basis(ac, gc, 1, faces[k], t, bary);
                for (int c = 0; c < n; ++c) {
                    CHECK(w[c] == doctest::Approx(expected[c]).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("Whitney interpolation")
{
    std::mt19937 rng(9);
    for (const auto& name : {"square", "disk", "annulus", "torus", "cube", "tetrahedron_boundary"}) {
        CAPTURE(name);
        const auto gc = load_mesh_file(oracle::fixture(name));
        const auto ac = abstr(gc);
        const int n = ac.dim();
        const auto ones = Cochain{0, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(ac.count(0)))};
        const FormField field = whitney_interpolate(ac, gc, ones);
        CHECK(field.provenance() == FormField::Provenance::WhitneyInterpolated);
        std::uniform_int_distribution<std::size_t> pick(0, ac.count(n) - 1);
        for (int k = 0; k < 100; ++k) {
            const auto t = pick(rng);
            const auto b = random_bary(rng, n);
            CHECK(field.evaluate(t, b, Eigen::VectorXd())[0] == doctest::Approx(1.0).epsilon(1e-14));
        }
        const FormField zero = whitney_interpolate(ac, gc, Cochain::zero(ac, 1));
        const auto w = zero.evaluate(0, random_bary(rng, n), Eigen::VectorXd());
        for (std::size_t c = 0; c < w.size(); ++c) {
            CHECK(w[c] == 0.0);
        }
        // a unit cochain interpolates to its basis form
        const auto faces = ac.faces_of_top(1, 0);
        const auto b = random_bary(rng, n);
        const auto single = whitney_interpolate(ac, gc, Cochain::unit(ac, 1, faces[0])).evaluate(0, b, {});
        const auto basis = whitney_basis(ac, gc, 1, faces[0], 0, b);
        for (std::size_t c = 0; c < basis.size(); ++c) {
            CHECK(single[c] == basis[c]);
        }
    }
    const auto ac = abstr(fixtures::unit_square());
    CHECK_THROWS_AS(whitney_interpolate(ac, fixtures::unit_square(), Cochain{1, Eigen::VectorXd::Zero(3)}),
                    IndexError);
}

TEST_CASE("tangential continuity across interior faces")
{
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const auto& name : {"annulus", "cube", "torus_fine"}) {
        CAPTURE(name);
        const auto gc = load_mesh_file(oracle::fixture(name));
        const auto ac = abstr(gc);
        const int n = ac.dim();
        for (int p = 0; p < n; ++p) {
            Cochain c = Cochain::zero(ac, p);
            for (Eigen::Index i = 0; i < c.values.size(); ++i) {
                c.values[i] = u(rng);
            }
            const FormField field = whitney_interpolate(ac, gc, c);
            for (std::size_t f = 0; f < ac.count(n - 1); ++f) {
                const auto& cof = ac.top_cofaces(n - 1, f);
                if (cof.size() != 2) {
                    continue;
                }
                const auto& face = ac.simplex(n - 1, f);
                const auto xi = random_bary(rng, n - 1);
                // tangent frame of the face: its first p edge vectors
                Eigen::MatrixXd frame(gc.embed_dim(), p);
                for (int j = 0; j < p; ++j) {
                    frame.col(j) = gc.vertex(face[j + 1]) - gc.vertex(face[0]);
                }
                double value[2];
                for (int side = 0; side < 2; ++side) {
                    const auto& top = ac.simplex(n, cof[side]);
                    std::vector<double> bary(static_cast<std::size_t>(n + 1), 0.0);
                    for (int j = 0; j < n; ++j) {
                        bary[std::find(top.begin(), top.end(), face[j]) - top.begin()] = xi[j];
                    }
                    value[side] = field.evaluate(cof[side], bary, {}).evaluate(frame);
                }
                CHECK(std::abs(value[0] - value[1]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("de Rham map of simple analytic forms")
{
    const auto gc = fixtures::reference_triangle();
    const auto ac = abstr(gc);
    const auto dx = FormField::analytic(1, 2, [](const Eigen::VectorXd&) { return Covector::one_form(vec({1, 0})); });
    const Cochain r = de_rham_map(dx, ac, gc, 1);
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(r.values[1]) < 1e-15);
    CHECK(r.values[2] == doctest::Approx(-1.0).epsilon(1e-15));

    const auto disk = load_mesh_file(oracle::fixture("disk"));
    const auto dac = abstr(disk);
    const auto x = FormField::analytic(0, 2, [](const Eigen::VectorXd& p) { return Covector::scalar(2, p[0]); });
    const Cochain xs = de_rham_map(x, dac, disk, 0);
    for (std::size_t i = 0; i < dac.count(0); ++i) {
        CHECK(xs.values[static_cast<Eigen::Index>(i)] == disk.vertex(static_cast<Index>(i))[0]);
    }
    CHECK_THROWS_AS(de_rham_map(x, dac, disk, 1), IndexError);
    CHECK_THROWS_AS(de_rham_map(dx, dac, disk, 1, simplex_rule(2, 2)), IndexError);
}

TEST_CASE("R W is the identity")
{
    for (const auto& name : {"triangle", "square", "disk", "torus", "rp2", "cube", "hollow_triangle"}) {
        CAPTURE(name);
        const auto gc = load_mesh_file(oracle::fixture(name));
        const auto ac = abstr(gc);
        for (int p = 0; p <= ac.dim(); ++p) {
            for (std::size_t s = 0; s < ac.count(p); ++s) {
                const Cochain e = Cochain::unit(ac, p, s);
                const Cochain back = de_rham_map(whitney_interpolate(ac, gc, e), ac, gc, p);
                CHECK((back.values - e.values).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    }
}

TEST_CASE("Stokes for x^2 y on the square")
{
    const auto gc = load_mesh_file(oracle::fixture("square"));
    const auto ac = abstr(gc);
    const ComplexMatrices cm(ac);
    const auto f = FormField::analytic(0, 2, [](const Eigen::VectorXd& p) {
        return Covector::scalar(2, p[0] * p[0] * p[1]);
    });
    const auto df = FormField::analytic(1, 2, [](const Eigen::VectorXd& p) {
        return Covector::one_form(vec({2 * p[0] * p[1], p[0] * p[0]}));
    });
    const Cochain lhs = de_rham_map(df, ac, gc, 1);
    const Cochain rhs = coboundary_apply(cm, de_rham_map(f, ac, gc, 0));
    CHECK((lhs.values - rhs.values).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("polynomial forms")
{
    PolynomialForm w(2, 0);
    w.coefficient(0).add_term({2, 1}, 1.0);  // x^2 y
    const auto dw = w.exterior_derivative();
    const auto at = dw(vec({0.5, 2.0}));
    CHECK(at[0] == doctest::Approx(2.0));   // 2xy
    CHECK(at[1] == doctest::Approx(0.25));  // x^2
    for (int d = 1; d <= 4; ++d) {
        for (int p = 0; p + 2 <= d; ++p) {
            const auto r = PolynomialForm::random(d, p, 3, static_cast<unsigned>(10 * d + p));
            const auto ddr = r.exterior_derivative().exterior_derivative();
            for (std::size_t k = 0; k < binomial(d, p + 2); ++k) {
                for (const auto& term : ddr.coefficient(k).terms()) {
                    CHECK(std::abs(term.second) <= 1e-14);
                }
            }
        }
    }
}

TEST_CASE("coboundary application")
{
    const auto gc = load_mesh_file(oracle::fixture("square"));
    const auto ac = abstr(gc);
    const ComplexMatrices cm(ac);
    const Cochain ones{0, Eigen::VectorXd::Ones(4)};
    CHECK(coboundary_apply(cm, ones).values.cwiseAbs().maxCoeff() == 0.0);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    Cochain c = Cochain::zero(ac, 0);
    for (Eigen::Index i = 0; i < 4; ++i) {
        c.values[i] = u(rng);
    }
    CHECK(coboundary_apply(cm, coboundary_apply(cm, c)).values.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(coboundary_apply(cm, Cochain::zero(ac, 2)), IndexError);
}

TEST_CASE("cup products")
{
    const auto gc = load_mesh_file(oracle::fixture("square"));
    const auto ac = abstr(gc);
    Cochain a{0, vec({1, 2, 3, 4})};
    Cochain b{0, vec({-1, 0.5, 2, 3})};
    const Cochain ab = cup_product(ac, gc, a, b);
    for (Eigen::Index i = 0; i < 4; ++i) {
        CHECK(ab.values[i] == doctest::Approx(a.values[i] * b.values[i]).epsilon(1e-15));
    }
    const Cochain e = Cochain::unit(ac, 1, 0);
    CHECK(cup_product(ac, gc, e, e).values.cwiseAbs().maxCoeff() == 0.0);

    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    Cochain x = Cochain::zero(ac, 1), y = Cochain::zero(ac, 1);
    for (Eigen::Index i = 0; i < x.values.size(); ++i) {
        x.values[i] = u(rng);
        y.values[i] = u(rng);
    }
    const Cochain xy = cup_product(ac, gc, x, y);
    const Cochain yx = cup_product(ac, gc, y, x);
    CHECK((xy.values + yx.values).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(cup_product(ac, gc, x, Cochain::zero(ac, 2)), IndexError);
}

TEST_CASE("cup product is not associative")
{
    // a = b = indicator of vertex 0, c = unit cochain on edge (0,1):
    // (a cup b) cup c = 1/2 and a cup (b cup c) = 1/4 on that edge.
    const auto gc = load_mesh_file(oracle::fixture("square"));
    const auto ac = abstr(gc);
    const Cochain a = Cochain::unit(ac, 0, 0);
    const Cochain c = Cochain::unit(ac, 1, 0);
    const Cochain left = cup_product(ac, gc, cup_product(ac, gc, a, a), c);
    const Cochain right = cup_product(ac, gc, a, cup_product(ac, gc, a, c));
    CHECK(left.values[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(right.values[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK((left.values - right.values).cwiseAbs().maxCoeff() > 1e-6);
}
