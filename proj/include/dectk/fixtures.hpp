#pragma once

#include <cstdint>

#include "dectk/mesh.hpp"

/// Mesh generators used for fixtures, tests and the examples in the README.
namespace dectk::fixtures {

/// (0,0), (1,0), (0,1).
GeometricComplex reference_triangle();
/// Unit square split along the (0,0)-(1,1) diagonal: [0,1,2], [0,2,3].
GeometricComplex unit_square();
/// Structured N x N grid of the unit square, each cell split along the same diagonal.
GeometricComplex square_grid(int cells);
/// Three edges of a triangle, no 2-cell (a 1-complex in the plane).
GeometricComplex hollow_triangle();
/// Polar disk: a center vertex and `rings` concentric rings of `segments` vertices.
GeometricComplex disk(int rings, int segments);
/// Planar annulus inner_radius <= r <= 1 with `rings` + 1 rings of `segments` vertices.
GeometricComplex annulus(int rings, int segments, double inner_radius = 0.5);
/// Reference tetrahedron (0,0,0), (1,0,0), (0,1,0), (0,0,1).
GeometricComplex reference_tetrahedron();
/// Unit cube split into six tetrahedra around the main diagonal.
GeometricComplex unit_cube();
/// The four faces of the reference tetrahedron: a 2-sphere in R^3.
GeometricComplex tetrahedron_boundary();
/// Seven-vertex torus (triangles {i,i+1,i+3}, {i,i+2,i+3} mod 7), vertices on
/// a trigonometric moment curve in R^4 so that no triangle is degenerate.
GeometricComplex torus7();
/// Torus of revolution with an nu x nv quad grid split into triangles.
GeometricComplex torus_grid(int nu, int nv);
/// Six-vertex real projective plane (half icosahedron), vertices as for torus7().
GeometricComplex projective_plane6();
/// Jittered `cells` x `cells` grid of the unit square with random diagonals.
GeometricComplex random_planar_mesh(std::uint64_t seed, int cells);
/// Vietoris-Rips style complex on random points of the unit square: edges
/// below `radius`, plus all triangles and tetrahedra of pairwise-close points.
AbstractComplex random_rips_complex(std::uint64_t seed, int points, double radius, int max_dim = 3);

} // namespace dectk::fixtures
