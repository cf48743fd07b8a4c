#include <doctest.h>

#include <random>

#include "dectk/chain_complex.hpp"
#include "dectk/fixtures.hpp"
#include "dectk/homology.hpp"
#include "oracles.hpp"

using namespace dectk;

namespace {

oracle::IntDense identity(std::size_t n)
{
    oracle::IntDense m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1;
    }
    return m;
}

void check_snf(const IntSparseMatrix& a)
{
    const SnfResult snf = smith_normal_form(a);
    const auto A = oracle::dense(a);
    const auto U = oracle::dense(snf.left);
    const auto V = oracle::dense(snf.right);
    const auto D = oracle::multiply(oracle::multiply(U, A), V);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Integer expected = (i == j && i < snf.diag.size()) ? snf.diag[i] : Integer(0);
            REQUIRE(D[i][j] == expected);
        }
    }
    CHECK(snf.rank == snf.diag.size());
    for (std::size_t k = 0; k < snf.diag.size(); ++k) {
        CHECK(snf.diag[k] > 0);
        if (k + 1 < snf.diag.size()) {
            CHECK(snf.diag[k + 1] % snf.diag[k] == 0);
        }
    }
    CHECK(oracle::multiply(U, oracle::dense(snf.left_inverse)) == identity(a.rows()));
    CHECK(oracle::multiply(V, oracle::dense(snf.right_inverse)) == identity(a.cols()));
    if (a.rows() <= 12 && a.cols() <= 12) {
        const Integer du = oracle::determinant(U);
        const Integer dv = oracle::determinant(V);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
    }
    CHECK(snf.rank == oracle::rank_bareiss(A));
}

std::vector<std::size_t> betti_oracle(const AbstractComplex& ac)
{
    std::vector<std::size_t> rank(static_cast<std::size_t>(ac.dim() + 2), 0);
    for (int p = 1; p <= ac.dim(); ++p) {
        rank[p] = oracle::rank_bareiss(oracle::dense(boundary_matrix(ac, p)));
    }
    std::vector<std::size_t> b;
    for (int p = 0; p <= ac.dim(); ++p) {
        b.push_back(ac.count(p) - rank[p] - rank[p + 1]);
    }
    return b;
}

// Appends chains as extra columns.
oracle::IntDense with_columns(oracle::IntDense m, const std::vector<IntChain>& chains)
{
    for (std::size_t r = 0; r < m.size(); ++r) {
        for (const auto& c : chains) {
            m[r].push_back(c[r]);
        }
    }
    return m;
}

AbstractComplex load(const std::string& name)
{
    return abstr(load_mesh_file(oracle::fixture(name)));
}

} // namespace

TEST_CASE("Smith normal form of small matrices")
{
    CHECK(smith_normal_form(IntSparseMatrix::from_dense({{2}})).diag == std::vector<Integer>{2});
    CHECK(smith_normal_form(IntSparseMatrix::from_dense({{1, 2}, {3, 4}})).diag == std::vector<Integer>{1, 2});
    const auto zero = smith_normal_form(IntSparseMatrix(3, 4));
    CHECK(zero.diag.empty());
    CHECK(zero.rank == 0);
    check_snf(IntSparseMatrix::from_dense({{1, 2}, {3, 4}}));
    check_snf(IntSparseMatrix(3, 4));
    check_snf(IntSparseMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    CHECK(smith_normal_form(IntSparseMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).diag
          == std::vector<Integer>{2, 6, 12});
    // diag(2, 3) is not in normal form: 1 | 6
    CHECK(smith_normal_form(IntSparseMatrix::from_dense({{2, 0}, {0, 3}})).diag == std::vector<Integer>{1, 6});
}

TEST_CASE("Smith normal form on random integer matrices")
{
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> size(1, 6);
    std::uniform_int_distribution<int> entry(-6, 6);
    std::bernoulli_distribution sparse(0.4);
    for (int trial = 0; trial < 60; ++trial) {
        const int r = size(rng), c = size(rng);
        std::vector<std::vector<Integer>> d(r, std::vector<Integer>(c));
        for (auto& row : d) {
            for (auto& v : row) {
                v = sparse(rng) ? 0 : entry(rng);
            }
        }
        const auto a = IntSparseMatrix::from_dense(d);
        CAPTURE(trial);
        check_snf(a);
        // invariant factors from determinantal divisors
        const auto snf = smith_normal_form(a, false);
        Integer prefix = 1;
        for (std::size_t k = 0; k < snf.diag.size(); ++k) {
            prefix *= snf.diag[k];
            CHECK(prefix == oracle::minor_gcd(d, k + 1));
        }
        CHECK(oracle::minor_gcd(d, snf.diag.size() + 1) == 0);
    }
}

TEST_CASE("Smith normal form is deterministic")
{
    const auto b = boundary_matrix(load("annulus"), 2);
    const auto s1 = smith_normal_form(b);
    const auto s2 = smith_normal_form(b);
    CHECK(s1.diag == s2.diag);
    CHECK(s1.left == s2.left);
    CHECK(s1.right == s2.right);
}

TEST_CASE("unimodular transforms on small boundary matrices")
{
    for (const auto& name : {"triangle", "square", "tetrahedron_boundary", "hollow_triangle", "tet"}) {
        CAPTURE(name);
        const auto ac = load(name);
        for (int p = 1; p <= ac.dim(); ++p) {
            check_snf(boundary_matrix(ac, p));
        }
    }
    const auto torus = load("torus");
    check_snf(boundary_matrix(torus, 1));
    check_snf(boundary_matrix(torus, 2));
}

TEST_CASE("Betti numbers of the classical fixtures")
{
    auto betti = [](const std::string& name) { return betti_numbers(ComplexMatrices(load(name))); };
    CHECK(betti("triangle") == std::vector<std::size_t>{1, 0, 0});
    CHECK(betti("disk") == std::vector<std::size_t>{1, 0, 0});
    CHECK(betti("hollow_triangle") == std::vector<std::size_t>{1, 1});
    CHECK(betti("annulus") == std::vector<std::size_t>{1, 1, 0});
    CHECK(betti("tetrahedron_boundary") == std::vector<std::size_t>{1, 0, 1});
    CHECK(betti("torus") == std::vector<std::size_t>{1, 2, 1});
    CHECK(betti("torus_fine") == std::vector<std::size_t>{1, 2, 1});
    CHECK(betti("rp2") == std::vector<std::size_t>{1, 0, 0});
    CHECK(betti("cube") == std::vector<std::size_t>{1, 0, 0, 0});
}

TEST_CASE("Betti numbers against elimination ranks and Euler characteristic")
{
    for (const auto& name : {"triangle", "square", "disk", "annulus", "hollow_triangle", "tetrahedron_boundary",
                             "torus", "torus_fine", "rp2", "tet", "cube"}) {
        CAPTURE(name);
        const auto ac = load(name);
        const ComplexMatrices cm(ac);
        const auto b = betti_numbers(cm);
        CHECK(b == betti_oracle(ac));
        long long alt = 0;
        for (std::size_t p = 0; p < b.size(); ++p) {
            alt += (p % 2 ? -1 : 1) * static_cast<long long>(b[p]);
            CHECK(cohomology_betti(cm, static_cast<int>(p)) == b[p]);
        }
        CHECK(alt == ac.euler_characteristic());
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto ac = fixtures::random_rips_complex(seed, 20, 0.35);
        const auto b = betti_numbers(ComplexMatrices(ac));
        CHECK(b == betti_oracle(ac));
        long long alt = 0;
        for (std::size_t p = 0; p < b.size(); ++p) {
            alt += (p % 2 ? -1 : 1) * static_cast<long long>(b[p]);
        }
        CHECK(alt == ac.euler_characteristic());
    }
}

TEST_CASE("closed surfaces are structurally valid")
{
    for (const auto& [name, chi] : std::vector<std::pair<std::string, long long>>{{"torus", 0}, {"rp2", 1}}) {
        const auto ac = load(name);
        CHECK(ac.euler_characteristic() == chi);
        for (std::size_t e = 0; e < ac.count(1); ++e) {
            CHECK(ac.top_cofaces(1, e).size() == 2);
        }
    }
}

TEST_CASE("torsion of the projective plane")
{
    const auto ac = load("rp2");
    const ComplexMatrices cm(ac);
    CHECK(torsion_coefficients(cm, 1) == std::vector<Integer>{2});
    CHECK(torsion_coefficients(cm, 0).empty());
    CHECK(torsion_coefficients(cm, 2).empty());
    CHECK(cohomology_betti(cm, 1) == 0);

    // Oracle: the rank of the boundary drops mod 2 only, and the product of
    // the invariant factors is the gcd of the maximal minors.
    const auto d2 = oracle::dense(boundary_matrix(ac, 2));
    CHECK(oracle::rank_bareiss(d2) == 10);
    CHECK(oracle::rank_mod(d2, 2) == 9);
    CHECK(oracle::rank_mod(d2, 3) == 10);
    CHECK(oracle::minor_gcd(d2, 10) == 2);

    const HomologyGroup h1 = homology_group(cm, 1);
    CHECK(h1.betti == 0);
    REQUIRE(h1.torsion_generators.size() == 1);
    const auto& g = h1.torsion_generators[0];
    for (const auto& v : apply(cm.boundary(1), g)) {
        CHECK(v == 0);
    }
    // a boundary over Z would stay a boundary mod 2
    CHECK(oracle::rank_mod(with_columns(d2, {g}), 2) == 10);
}

TEST_CASE("torsion is empty on orientable and contractible fixtures")
{
    for (const auto& name : {"torus", "disk", "annulus", "tetrahedron_boundary", "cube"}) {
        const ComplexMatrices cm(load(name));
        for (int p = 0; p <= cm.dim(); ++p) {
            CHECK(torsion_coefficients(cm, p).empty());
        }
    }
}

TEST_CASE("homology generators")
{
    {
        const auto ac = load("hollow_triangle");
        const ComplexMatrices cm(ac);
        const auto gens = homology_generators(cm, 1);
        REQUIRE(gens.size() == 1);
        // the loop (0,1) + (1,2) - (0,2) up to sign
        const IntChain loop{1, -1, 1};
        const IntChain neg{-1, 1, -1};
        CHECK((gens[0] == loop || gens[0] == neg));
    }
    CHECK(homology_generators(ComplexMatrices(load("disk")), 1).empty());
    for (const auto& [name, p, count] :
         std::vector<std::tuple<std::string, int, std::size_t>>{{"annulus", 1, 1}, {"torus", 1, 2},
                                                                {"torus_fine", 1, 2}, {"tetrahedron_boundary", 2, 1},
                                                                {"disk", 0, 1}}) {
        CAPTURE(name);
        const auto ac = load(name);
        const ComplexMatrices cm(ac);
        const auto gens = homology_generators(cm, p);
        REQUIRE(gens.size() == count);
        for (const auto& g : gens) {
            for (const auto& v : apply(cm.boundary(p), g)) {
                CHECK(v == 0);
            }
        }
        // independent modulo boundaries: appending raises the rank by count
        const auto next = oracle::dense(cm.boundary(p + 1));
        const std::size_t base = oracle::rank_bareiss(next);
        CHECK(oracle::rank_bareiss(with_columns(next, gens)) == base + count);
    }
}

TEST_CASE("homology summary")
{
    const auto hs = homology_summary(ComplexMatrices(load("torus")));
    CHECK(hs.betti == std::vector<std::size_t>{1, 2, 1});
    CHECK(hs.generators[1].size() == 2);
    CHECK(hs.generators[2].size() == 1);
    for (const auto& t : hs.torsion) {
        CHECK(t.empty());
    }
}
