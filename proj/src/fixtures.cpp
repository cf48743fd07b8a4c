#include "dectk/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace dectk::fixtures {

namespace {

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> data)
{
    const auto r = static_cast<Eigen::Index>(data.size());
    const auto c = static_cast<Eigen::Index>(data.begin()->size());
    Eigen::MatrixXd m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : data) {
        Eigen::Index j = 0;
        for (double x : row) {
            m(i, j++) = x;
        }
        ++i;
    }
    return m;
}

// Points on (cos t, sin t, cos 2t, sin 2t). A hyperplane of R^4 meets this
// curve at most four times, so any five of the points are affinely
// independent and every triangle of a small complex is nondegenerate.
Eigen::MatrixXd trig_moment_curve(int count)
{
    Eigen::MatrixXd m(count, 4);
    for (int i = 0; i < count; ++i) {
        const double t = 2.0 * std::numbers::pi * i / count;
        m(i, 0) = std::cos(t);
        m(i, 1) = std::sin(t);
        m(i, 2) = std::cos(2.0 * t);
        m(i, 3) = std::sin(2.0 * t);
    }
    return m;
}

} // namespace

GeometricComplex reference_triangle()
{
    return {2, rows({{0, 0}, {1, 0}, {0, 1}}), {{0, 1, 2}}};
}

GeometricComplex unit_square()
{
    return {2, rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), {{0, 1, 2}, {0, 2, 3}}};
}

GeometricComplex square_grid(int cells)
{
    const int m = cells + 1;
    Eigen::MatrixXd verts(m * m, 2);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            verts(j * m + i, 0) = static_cast<double>(i) / cells;
            verts(j * m + i, 1) = static_cast<double>(j) / cells;
        }
    }
    std::vector<Simplex> tris;
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
            const Index a = j * m + i, b = a + 1, c = a + m + 1, d = a + m;
            tris.push_back({a, b, c});
            tris.push_back({a, c, d});
        }
    }
    return {2, std::move(verts), std::move(tris)};
}

GeometricComplex hollow_triangle()
{
    return {1, rows({{0, 0}, {1, 0}, {0, 1}}), {{0, 1}, {1, 2}, {0, 2}}};
}

GeometricComplex disk(int rings, int segments)
{
    Eigen::MatrixXd verts(1 + rings * segments, 2);
    verts.row(0).setZero();
    auto id = [segments](int ring, int k) {
        return static_cast<Index>(1 + (ring - 1) * segments + (k % segments));
    };
    for (int r = 1; r <= rings; ++r) {
        const double rad = static_cast<double>(r) / rings;
        const double shift = (r % 2) * std::numbers::pi / segments;
        for (int k = 0; k < segments; ++k) {
            const double a = 2.0 * std::numbers::pi * k / segments + shift;
            verts(id(r, k), 0) = rad * std::cos(a);
            verts(id(r, k), 1) = rad * std::sin(a);
        }
    }
    std::vector<Simplex> tris;
    for (int k = 0; k < segments; ++k) {
        tris.push_back({0, id(1, k), id(1, k + 1)});
    }
    for (int r = 1; r < rings; ++r) {
        for (int k = 0; k < segments; ++k) {
            // Odd rings are rotated forward by half a segment.
            if (r % 2 == 1) {
                tris.push_back({id(r, k), id(r + 1, k + 1), id(r, k + 1)});
                tris.push_back({id(r, k), id(r + 1, k), id(r + 1, k + 1)});
            } else {
                tris.push_back({id(r, k), id(r + 1, k), id(r, k + 1)});
                tris.push_back({id(r, k + 1), id(r + 1, k), id(r + 1, k + 1)});
            }
        }
    }
    return {2, std::move(verts), std::move(tris)};
}

GeometricComplex annulus(int rings, int segments, double inner_radius)
{
    const int layers = rings + 1;
    Eigen::MatrixXd verts(layers * segments, 2);
    auto id = [segments](int ring, int k) { return static_cast<Index>(ring * segments + (k % segments)); };
    for (int r = 0; r < layers; ++r) {
        const double rad = inner_radius + (1.0 - inner_radius) * r / rings;
        for (int k = 0; k < segments; ++k) {
            const double a = 2.0 * std::numbers::pi * (k + 0.5 * (r % 2)) / segments;
            verts(id(r, k), 0) = rad * std::cos(a);
            verts(id(r, k), 1) = rad * std::sin(a);
        }
    }
    std::vector<Simplex> tris;
    for (int r = 0; r < rings; ++r) {
        for (int k = 0; k < segments; ++k) {
            if (r % 2 == 0) {
                tris.push_back({id(r, k), id(r + 1, k), id(r, k + 1)});
                tris.push_back({id(r, k + 1), id(r + 1, k), id(r + 1, k + 1)});
            } else {
                tris.push_back({id(r, k), id(r + 1, k + 1), id(r, k + 1)});
                tris.push_back({id(r, k), id(r + 1, k), id(r + 1, k + 1)});
            }
        }
    }
    return {2, std::move(verts), std::move(tris)};
}

GeometricComplex reference_tetrahedron()
{
    return {3, rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {{0, 1, 2, 3}}};
}

GeometricComplex unit_cube()
{
    Eigen::MatrixXd verts(8, 3);
    for (int v = 0; v < 8; ++v) {
        verts(v, 0) = v & 1;
        verts(v, 1) = (v >> 1) & 1;
        verts(v, 2) = (v >> 2) & 1;
    }
    std::vector<Simplex> tets;
    std::array<int, 3> axes{0, 1, 2};
    do {
        Simplex t{0};
        int at = 0;
        for (int ax : axes) {
            at |= 1 << ax;
            t.push_back(at);
        }
        tets.push_back(std::move(t));
    } while (std::next_permutation(axes.begin(), axes.end()));
    return {3, std::move(verts), std::move(tets)};
}

GeometricComplex tetrahedron_boundary()
{
    return {2, rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}};
}

GeometricComplex torus7()
{
    std::vector<Simplex> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return {2, trig_moment_curve(7), std::move(tris)};
}

GeometricComplex torus_grid(int nu, int nv)
{
    constexpr double major = 2.0, minor = 1.0;
    Eigen::MatrixXd verts(nu * nv, 3);
    auto id = [nu, nv](int i, int j) { return static_cast<Index>((i % nu) * nv + (j % nv)); };
    for (int i = 0; i < nu; ++i) {
        const double u = 2.0 * std::numbers::pi * i / nu;
        for (int j = 0; j < nv; ++j) {
            const double v = 2.0 * std::numbers::pi * j / nv;
            verts(id(i, j), 0) = (major + minor * std::cos(v)) * std::cos(u);
            verts(id(i, j), 1) = (major + minor * std::cos(v)) * std::sin(u);
            verts(id(i, j), 2) = minor * std::sin(v);
        }
    }
    std::vector<Simplex> tris;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return {2, std::move(verts), std::move(tris)};
}

GeometricComplex projective_plane6()
{
    std::vector<Simplex> tris{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                              {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
    return {2, trig_moment_curve(6), std::move(tris)};
}

GeometricComplex random_planar_mesh(std::uint64_t seed, int cells)
{
    std::mt19937_64 rng(seed);
    const double h = 1.0 / cells;
    std::uniform_real_distribution<double> jitter(-0.15 * h, 0.15 * h);
    std::bernoulli_distribution flip(0.5);
    const int m = cells + 1;
    Eigen::MatrixXd verts(m * m, 2);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            double x = i * h, y = j * h;
            if (i > 0 && i < cells) {
                x += jitter(rng);
            }
            if (j > 0 && j < cells) {
                y += jitter(rng);
            }
            verts(j * m + i, 0) = x;
            verts(j * m + i, 1) = y;
        }
    }
    std::vector<Simplex> tris;
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
            const Index a = j * m + i, b = a + 1, c = a + m + 1, d = a + m;
            if (flip(rng)) {
                tris.push_back({a, b, c});
                tris.push_back({a, c, d});
            } else {
                tris.push_back({a, b, d});
                tris.push_back({b, c, d});
            }
        }
    }
    return {2, std::move(verts), std::move(tris)};
}

AbstractComplex random_rips_complex(std::uint64_t seed, int points, double radius, int max_dim)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(points));
    for (auto& p : pts) {
        p = {coord(rng), coord(rng)};
    }
    auto close = [&](int a, int b) { return std::hypot(pts[a][0] - pts[b][0], pts[a][1] - pts[b][1]) < radius; };

    std::vector<Simplex> gens;
    for (int a = 0; a < points; ++a) {
        gens.push_back({a});
    }
    // Extend cliques one vertex at a time; faces are added again by closure.
    std::vector<Simplex> frontier = gens;
    for (int k = 1; k <= max_dim; ++k) {
        std::vector<Simplex> next;
        for (const auto& s : frontier) {
            for (int v = s.back() + 1; v < points; ++v) {
                if (std::all_of(s.begin(), s.end(), [&](Index u) { return close(u, v); })) {
                    Simplex t = s;
                    t.push_back(v);
                    next.push_back(std::move(t));
                }
            }
        }
        gens.insert(gens.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return AbstractComplex::closure(gens);
}

} // namespace dectk::fixtures
