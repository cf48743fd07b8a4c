#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dectk {

using Index = std::int32_t;
using Simplex = std::vector<Index>;

/// Vertex coordinates plus the list of top-dimensional simplices, numbered
/// globally. Instances are validated on construction and immutable after.
class GeometricComplex {
public:
    GeometricComplex() = default;

    /// Validates and builds. `vertices` is m0 x d (one row per vertex).
    /// Throws ValidationError naming the offending simplex when an index is
    /// out of range, a simplex is degenerate or a simplex is duplicated.
    GeometricComplex(int complex_dim, Eigen::MatrixXd vertices, std::vector<Simplex> top_simplices);

    int embed_dim() const { return static_cast<int>(vertices_.cols()); }
    int complex_dim() const { return complex_dim_; }
    std::size_t vertex_count() const { return static_cast<std::size_t>(vertices_.rows()); }
    std::size_t top_count() const { return top_simplices_.size(); }

    const Eigen::MatrixXd& vertices() const { return vertices_; }
    Eigen::VectorXd vertex(Index i) const { return vertices_.row(i).transpose(); }
    const std::vector<Simplex>& top_simplices() const { return top_simplices_; }

private:
    int complex_dim_ = 0;
    Eigen::MatrixXd vertices_;
    std::vector<Simplex> top_simplices_;
};

/// Purely combinatorial face data of a simplicial complex.
///
/// simplices(p) is sorted lexicographically and every simplex is a strictly
/// ascending vertex tuple. The as-given vertex order of each top simplex
/// survives only in orientation_signs(), indexed like simplices(n).
class AbstractComplex {
public:
    AbstractComplex() = default;

    /// Pure complex generated by the given n-simplices. `signs` (one per
    /// input simplex, in input order) defaults to all +1.
    static AbstractComplex from_top_simplices(int complex_dim, const std::vector<Simplex>& tops,
                                              const std::vector<int>& signs = {});

    /// Closure of an arbitrary list of simplices of mixed dimension. The
    /// result need not be pure; orientation signs are all +1.
    static AbstractComplex closure(const std::vector<Simplex>& generators);

    int dim() const { return static_cast<int>(simplices_.size()) - 1; }
    std::size_t count(int p) const;
    const std::vector<Simplex>& simplices(int p) const;
    const Simplex& simplex(int p, std::size_t i) const { return simplices(p)[i]; }

    /// Position of `s` (ascending) among simplices(p), if present.
    std::optional<std::size_t> index_of(int p, std::span<const Index> s) const;

    const std::vector<int>& orientation_signs() const { return signs_; }

    /// Input position (in the generating list) of canonical top simplex k.
    std::size_t top_source(std::size_t k) const { return top_source_[k]; }

    /// Canonical indices of the p-faces of top simplex t, in the order of
    /// ascending local-vertex combinations.
    std::span<const std::size_t> faces_of_top(int p, std::size_t t) const;

    /// Top simplices containing p-simplex i, ascending.
    const std::vector<std::size_t>& top_cofaces(int p, std::size_t i) const { return cofaces_[p][i]; }

    /// Alternating sum of face counts.
    long long euler_characteristic() const;

    /// 64-bit FNV-1a hash of the canonical simplex lists.
    std::uint64_t fingerprint() const;

    bool operator==(const AbstractComplex& other) const
    {
        return simplices_ == other.simplices_ && signs_ == other.signs_;
    }

private:
    void build_incidence();

    std::vector<std::vector<Simplex>> simplices_;
    std::vector<int> signs_;
    std::vector<std::size_t> top_source_;
    std::vector<std::vector<std::size_t>> top_faces_;                 // [p] flat, stride C(n+1,p+1)
    std::vector<std::vector<std::vector<std::size_t>>> cofaces_;      // [p][i] -> tops
};

/// Barycentric-subdivision measures attached to every simplex.
struct DualVolumes {
    /// region[p][i]: n-volume of the union of barycentric-subdivision
    /// fragments whose vertex set contains the barycenter of p-simplex i.
    std::vector<std::vector<double>> region;
    /// cell[p][i]: (n-p)-measure of the barycentric dual cell, derived from
    /// the region volume as C(n,p) * region / primal volume.
    std::vector<std::vector<double>> cell;
};

/// det[v1-v0, ..., vn-v0] / n! for an n-simplex in R^n. Throws GeometryError
/// when the simplex dimension differs from the embedding dimension.
double signed_volume(const GeometricComplex& gc, std::span<const Index> simplex);

/// Unsigned k-volume of a k-simplex via the Gram determinant (any k <= d).
/// A 0-simplex has volume 1.
double simplex_volume(const GeometricComplex& gc, std::span<const Index> simplex);

/// Primal volumes of every p-simplex, in canonical order.
std::vector<double> primal_volumes(const GeometricComplex& gc, const AbstractComplex& ac, int p);

/// Forgetful map from the geometric realization to the abstract complex.
AbstractComplex abstr(const GeometricComplex& gc);

/// Gradients of the barycentric coordinates of `simplex` (vertex order as
/// given), one column per vertex, tangential to the simplex when k < d.
Eigen::MatrixXd barycentric_gradients(const GeometricComplex& gc, std::span<const Index> simplex);
Eigen::MatrixXd barycentric_gradients(const GeometricComplex& gc, std::size_t top_simplex_id);

DualVolumes barycentric_dual_volumes(const GeometricComplex& gc, const AbstractComplex& ac);

/// (n-1)-simplices with exactly one top coface.
std::vector<std::size_t> boundary_faces(const AbstractComplex& ac);
/// Vertices of the boundary faces, ascending, deduplicated.
std::vector<std::size_t> boundary_vertices(const AbstractComplex& ac);

/// Renumber vertices: new index of old vertex i is perm[i].
GeometricComplex relabel(const GeometricComplex& gc, std::span<const Index> perm);

/// Longest edge over the complex.
double mesh_size(const GeometricComplex& gc, const AbstractComplex& ac);

/// Cartesian point of a barycentric combination over `simplex`.
Eigen::VectorXd barycentric_point(const GeometricComplex& gc, std::span<const Index> simplex,
                                  std::span<const double> bary);

// ---- I/O -----------------------------------------------------------------

enum class MeshFormat { Json, Text };

GeometricComplex load_mesh(std::istream& in, MeshFormat format);
/// Format chosen by extension: ".json" is JSON, anything else plain text.
GeometricComplex load_mesh_file(const std::filesystem::path& path);

void write_mesh(std::ostream& out, const GeometricComplex& gc, MeshFormat format);

} // namespace dectk
