#include "dectk/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "dectk/combinatorics.hpp"
#include "dectk/errors.hpp"

namespace dectk {

namespace {

// Relative threshold below which a simplex counts as degenerate.
constexpr double kDegenerateTol = 1e-12;

Eigen::MatrixXd edge_matrix(const GeometricComplex& gc, std::span<const Index> s)
{
    const int k = static_cast<int>(s.size()) - 1;
    Eigen::MatrixXd e(gc.embed_dim(), std::max(k, 0));
    for (int j = 0; j < k; ++j) {
        e.col(j) = (gc.vertices().row(s[j + 1]) - gc.vertices().row(s[0])).transpose();
    }
    return e;
}

bool is_degenerate(const Eigen::MatrixXd& edges, double volume_times_factorial)
{
    const int k = static_cast<int>(edges.cols());
    if (k == 0) {
        return false;
    }
    double longest = 0.0;
    for (int j = 0; j < k; ++j) {
        longest = std::max(longest, edges.col(j).norm());
    }
    if (longest == 0.0) {
        return true;
    }
    return std::abs(volume_times_factorial) <= kDegenerateTol * std::pow(longest, k);
}

// |det| of the Gram matrix square-rooted, i.e. k! times the k-volume.
double gram_measure(const Eigen::MatrixXd& edges)
{
    if (edges.cols() == 0) {
        return 1.0;
    }
    const Eigen::MatrixXd g = edges.transpose() * edges;
    return std::sqrt(std::max(g.determinant(), 0.0));
}

} // namespace

GeometricComplex::GeometricComplex(int complex_dim, Eigen::MatrixXd vertices, std::vector<Simplex> top_simplices)
    : complex_dim_(complex_dim), vertices_(std::move(vertices)), top_simplices_(std::move(top_simplices))
{
    if (complex_dim_ < 0 || complex_dim_ > vertices_.cols()) {
        std::ostringstream msg;
        msg << "complex dimension " << complex_dim_ << " incompatible with embedding dimension "
            << vertices_.cols();
        throw ValidationError(msg.str());
    }
    std::set<Simplex> seen;
    const auto m0 = static_cast<Index>(vertices_.rows());
    for (std::size_t i = 0; i < top_simplices_.size(); ++i) {
        const Simplex& s = top_simplices_[i];
        if (static_cast<int>(s.size()) != complex_dim_ + 1) {
            std::ostringstream msg;
            msg << "simplex " << i << " has " << s.size() << " vertices, expected " << complex_dim_ + 1;
            throw ValidationError(msg.str());
        }
        for (Index v : s) {
            if (v < 0 || v >= m0) {
                std::ostringstream msg;
                msg << "simplex " << i << " references vertex " << v << " outside [0, " << m0 << ")";
                throw ValidationError(msg.str());
            }
        }
        Simplex sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()
            || is_degenerate(edge_matrix(*this, s), gram_measure(edge_matrix(*this, s)))) {
            throw ValidationError("degenerate simplex " + std::to_string(i));
        }
        if (!seen.insert(sorted).second) {
            throw ValidationError("duplicate simplex " + std::to_string(i));
        }
    }
}

// ---- AbstractComplex -----------------------------------------------------

AbstractComplex AbstractComplex::from_top_simplices(int complex_dim, const std::vector<Simplex>& tops,
                                                    const std::vector<int>& signs)
{
    if (!signs.empty() && signs.size() != tops.size()) {
        throw ValidationError("orientation sign count does not match simplex count");
    }
    AbstractComplex ac;
    const int n = complex_dim;
    ac.simplices_.assign(static_cast<std::size_t>(n + 1), {});

    std::vector<std::pair<Simplex, std::size_t>> keyed;
    keyed.reserve(tops.size());
    for (std::size_t i = 0; i < tops.size(); ++i) {
        if (static_cast<int>(tops[i].size()) != n + 1) {
            throw ValidationError("simplex " + std::to_string(i) + " has wrong vertex count");
        }
        Simplex s = tops[i];
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw ValidationError("degenerate simplex " + std::to_string(i));
        }
        keyed.emplace_back(std::move(s), i);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 1; i < keyed.size(); ++i) {
        if (keyed[i].first == keyed[i - 1].first) {
            throw ValidationError("duplicate simplex " + std::to_string(keyed[i].second));
        }
    }
    for (auto& [s, src] : keyed) {
        ac.simplices_[n].push_back(s);
        ac.top_source_.push_back(src);
        ac.signs_.push_back(signs.empty() ? 1 : signs[src]);
    }
    for (int p = 0; p < n; ++p) {
        const auto combos = combinations(n + 1, p + 1);
        std::vector<Simplex> faces;
        faces.reserve(ac.simplices_[n].size() * combos.size());
        for (const auto& top : ac.simplices_[n]) {
            for (const auto& c : combos) {
                Simplex f;
                f.reserve(c.size());
                for (int k : c) {
                    f.push_back(top[k]);
                }
                faces.push_back(std::move(f));
            }
        }
        std::sort(faces.begin(), faces.end());
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        ac.simplices_[p] = std::move(faces);
    }
    ac.build_incidence();
    return ac;
}

AbstractComplex AbstractComplex::closure(const std::vector<Simplex>& generators)
{
    AbstractComplex ac;
    int n = -1;
    for (const auto& g : generators) {
        n = std::max(n, static_cast<int>(g.size()) - 1);
    }
    if (n < 0) {
        throw ValidationError("empty complex");
    }
    std::vector<std::set<Simplex>> faces(static_cast<std::size_t>(n + 1));
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        Simplex g = generators[gi];
        std::sort(g.begin(), g.end());
        if (g.empty() || std::adjacent_find(g.begin(), g.end()) != g.end()) {
            throw ValidationError("degenerate simplex " + std::to_string(gi));
        }
        const int k = static_cast<int>(g.size()) - 1;
        for (int p = 0; p <= k; ++p) {
            for (const auto& c : combinations(k + 1, p + 1)) {
                Simplex f;
                for (int j : c) {
                    f.push_back(g[j]);
                }
                faces[p].insert(std::move(f));
            }
        }
    }
    ac.simplices_.resize(faces.size());
    for (std::size_t p = 0; p < faces.size(); ++p) {
        ac.simplices_[p].assign(faces[p].begin(), faces[p].end());
    }
    ac.signs_.assign(ac.simplices_[n].size(), 1);
    ac.top_source_.resize(ac.simplices_[n].size());
    std::iota(ac.top_source_.begin(), ac.top_source_.end(), std::size_t{0});
    ac.build_incidence();
    return ac;
}

void AbstractComplex::build_incidence()
{
    const int n = dim();
    top_faces_.assign(static_cast<std::size_t>(n + 1), {});
    cofaces_.assign(static_cast<std::size_t>(n + 1), {});
    const auto& tops = simplices_[n];
    for (int p = 0; p <= n; ++p) {
        cofaces_[p].assign(simplices_[p].size(), {});
        const auto combos = combinations(n + 1, p + 1);
        auto& flat = top_faces_[p];
        flat.reserve(tops.size() * combos.size());
        Simplex f(static_cast<std::size_t>(p + 1));
        for (std::size_t t = 0; t < tops.size(); ++t) {
            for (const auto& c : combos) {
                for (int j = 0; j <= p; ++j) {
                    f[j] = tops[t][c[j]];
                }
                const std::size_t idx = *index_of(p, f);
                flat.push_back(idx);
                cofaces_[p][idx].push_back(t);
            }
        }
    }
}

std::size_t AbstractComplex::count(int p) const
{
    if (p < 0 || p > dim()) {
        return 0;
    }
    return simplices_[p].size();
}

const std::vector<Simplex>& AbstractComplex::simplices(int p) const
{
    if (p < 0 || p > dim()) {
        throw IndexError("degree " + std::to_string(p) + " outside [0, " + std::to_string(dim()) + "]");
    }
    return simplices_[p];
}

std::optional<std::size_t> AbstractComplex::index_of(int p, std::span<const Index> s) const
{
    if (p < 0 || p > dim()) {
        return std::nullopt;
    }
    const auto& list = simplices_[p];
    auto it = std::lower_bound(list.begin(), list.end(), s, [](const Simplex& a, std::span<const Index> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    if (it == list.end() || !std::equal(it->begin(), it->end(), s.begin(), s.end())) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - list.begin());
}

std::span<const std::size_t> AbstractComplex::faces_of_top(int p, std::size_t t) const
{
    const std::size_t stride = binomial(dim() + 1, p + 1);
    return {top_faces_[p].data() + t * stride, stride};
}

long long AbstractComplex::euler_characteristic() const
{
    long long chi = 0;
    for (int p = 0; p <= dim(); ++p) {
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(simplices_[p].size());
    }
    return chi;
}

std::uint64_t AbstractComplex::fingerprint() const
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(dim()));
    for (const auto& level : simplices_) {
        mix(level.size());
        for (const auto& s : level) {
            for (Index v : s) {
                mix(static_cast<std::uint64_t>(v));
            }
        }
    }
    return h;
}

// ---- geometry ------------------------------------------------------------

double signed_volume(const GeometricComplex& gc, std::span<const Index> simplex)
{
    const int k = static_cast<int>(simplex.size()) - 1;
    if (k != gc.embed_dim()) {
        throw GeometryError("signed volume needs a " + std::to_string(gc.embed_dim()) + "-simplex, got a "
                            + std::to_string(k) + "-simplex");
    }
    if (k == 0) {
        return 1.0;
    }
    return edge_matrix(gc, simplex).determinant() / factorial(k);
}

double simplex_volume(const GeometricComplex& gc, std::span<const Index> simplex)
{
    const int k = static_cast<int>(simplex.size()) - 1;
    if (k < 0 || k > gc.embed_dim()) {
        throw GeometryError("simplex dimension exceeds embedding dimension");
    }
    return gram_measure(edge_matrix(gc, simplex)) / factorial(k);
}

std::vector<double> primal_volumes(const GeometricComplex& gc, const AbstractComplex& ac, int p)
{
    const auto& list = ac.simplices(p);
    std::vector<double> out(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        out[i] = simplex_volume(gc, list[i]);
    }
    return out;
}

AbstractComplex abstr(const GeometricComplex& gc)
{
    std::vector<int> signs(gc.top_count(), 1);
    if (gc.complex_dim() == gc.embed_dim()) {
        for (std::size_t i = 0; i < gc.top_count(); ++i) {
            const double v = signed_volume(gc, gc.top_simplices()[i]);
            if (v == 0.0) {
                throw GeometryError("degenerate simplex " + std::to_string(i));
            }
            signs[i] = v > 0 ? 1 : -1;
        }
    }
    return AbstractComplex::from_top_simplices(gc.complex_dim(), gc.top_simplices(), signs);
}

Eigen::MatrixXd barycentric_gradients(const GeometricComplex& gc, std::span<const Index> simplex)
{
    const int k = static_cast<int>(simplex.size()) - 1;
    const int d = gc.embed_dim();
    Eigen::MatrixXd grads = Eigen::MatrixXd::Zero(d, k + 1);
    if (k <= 0) {
        return grads;
    }
    const Eigen::MatrixXd e = edge_matrix(gc, simplex);
    if (is_degenerate(e, gram_measure(e))) {
        throw GeometryError("degenerate simplex in barycentric gradient evaluation");
    }
    // lambda_j for j >= 1 solves e^T grad = unit vector inside the tangent space.
    const Eigen::MatrixXd gram = e.transpose() * e;
    const Eigen::MatrixXd tail = e * gram.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    grads.rightCols(k) = tail;
    grads.col(0) = -tail.rowwise().sum();
    return grads;
}

Eigen::MatrixXd barycentric_gradients(const GeometricComplex& gc, std::size_t top_simplex_id)
{
    if (top_simplex_id >= gc.top_count()) {
        throw IndexError("top simplex " + std::to_string(top_simplex_id) + " out of range");
    }
    return barycentric_gradients(gc, gc.top_simplices()[top_simplex_id]);
}

DualVolumes barycentric_dual_volumes(const GeometricComplex& gc, const AbstractComplex& ac)
{
    const int n = ac.dim();
    DualVolumes dv;
    dv.region.resize(static_cast<std::size_t>(n + 1));
    dv.cell.resize(static_cast<std::size_t>(n + 1));
    const auto top_vol = primal_volumes(gc, ac, n);
    for (int p = 0; p <= n; ++p) {
        // A top simplex has (p+1)!(n-p)! flags through each p-face out of
        // (n+1)! fragments of equal volume.
        const double share = 1.0 / static_cast<double>(binomial(n + 1, p + 1));
        auto& region = dv.region[p];
        region.assign(ac.count(p), 0.0);
        for (std::size_t t = 0; t < ac.count(n); ++t) {
            for (std::size_t f : ac.faces_of_top(p, t)) {
                region[f] += top_vol[t] * share;
            }
        }
        const auto prim = primal_volumes(gc, ac, p);
        const double c = static_cast<double>(binomial(n, p));
        auto& cell = dv.cell[p];
        cell.resize(region.size());
        for (std::size_t i = 0; i < region.size(); ++i) {
            cell[i] = c * region[i] / prim[i];
        }
    }
    return dv;
}

std::vector<std::size_t> boundary_faces(const AbstractComplex& ac)
{
    std::vector<std::size_t> out;
    const int n = ac.dim();
    if (n < 1) {
        return out;
    }
    for (std::size_t i = 0; i < ac.count(n - 1); ++i) {
        if (ac.top_cofaces(n - 1, i).size() == 1) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> boundary_vertices(const AbstractComplex& ac)
{
    std::set<std::size_t> verts;
    const int n = ac.dim();
    for (std::size_t f : boundary_faces(ac)) {
        for (Index v : ac.simplex(n - 1, f)) {
            verts.insert(static_cast<std::size_t>(v));
        }
    }
    return {verts.begin(), verts.end()};
}

GeometricComplex relabel(const GeometricComplex& gc, std::span<const Index> perm)
{
    if (perm.size() != gc.vertex_count()) {
        throw IndexError("relabeling must cover every vertex");
    }
    Eigen::MatrixXd verts(gc.vertices().rows(), gc.vertices().cols());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        verts.row(perm[i]) = gc.vertices().row(static_cast<Eigen::Index>(i));
    }
    std::vector<Simplex> tops = gc.top_simplices();
    for (auto& s : tops) {
        for (auto& v : s) {
            v = perm[v];
        }
    }
    return {gc.complex_dim(), std::move(verts), std::move(tops)};
}

double mesh_size(const GeometricComplex& gc, const AbstractComplex& ac)
{
    double h = 0.0;
    if (ac.dim() < 1) {
        return h;
    }
    for (const auto& e : ac.simplices(1)) {
        h = std::max(h, (gc.vertices().row(e[1]) - gc.vertices().row(e[0])).norm());
    }
    return h;
}

Eigen::VectorXd barycentric_point(const GeometricComplex& gc, std::span<const Index> simplex,
                                  std::span<const double> bary)
{
    Eigen::VectorXd x = Eigen::VectorXd::Zero(gc.embed_dim());
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        x += bary[i] * gc.vertices().row(simplex[i]).transpose();
    }
    return x;
}

} // namespace dectk
