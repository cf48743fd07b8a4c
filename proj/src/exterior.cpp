#include "dectk/exterior.hpp"

#include <algorithm>
#include <map>

#include "dectk/combinatorics.hpp"
#include "dectk/errors.hpp"

namespace dectk {

namespace {

// Lexicographic rank of an ascending multi-index among all k-subsets of {0..dim-1}.
std::size_t rank_of(int dim, const std::vector<int>& multi_index)
{
    const int k = static_cast<int>(multi_index.size());
    std::size_t rank = 0;
    int start = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = start; j < multi_index[i]; ++j) {
            rank += binomial(dim - 1 - j, k - 1 - i);
        }
        start = multi_index[i] + 1;
    }
    return rank;
}

double minor(const Eigen::MatrixXd& m, const std::vector<int>& rows)
{
    const auto k = static_cast<Eigen::Index>(rows.size());
    if (k == 0) {
        return 1.0;
    }
    if (k == 1) {
        return m(rows[0], 0);
    }
    if (k == 2) {
        return m(rows[0], 0) * m(rows[1], 1) - m(rows[1], 0) * m(rows[0], 1);
    }
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        sub.row(i) = m.row(rows[i]);
    }
    return sub.determinant();
}

} // namespace

const std::vector<std::vector<int>>& basis_multi_indices(int dim, int degree)
{
    thread_local std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    auto [it, inserted] = cache.try_emplace({dim, degree});
    if (inserted) {
        it->second = combinations(dim, degree);
    }
    return it->second;
}

Covector::Covector(int dim, int degree)
    : dim_(dim), degree_(degree), components_(binomial(dim, degree), 0.0)
{
}

Covector Covector::scalar(int dim, double value)
{
    Covector c(dim, 0);
    c.components_[0] = value;
    return c;
}

Covector Covector::one_form(const Eigen::VectorXd& components)
{
    Covector c(static_cast<int>(components.size()), 1);
    for (Eigen::Index i = 0; i < components.size(); ++i) {
        c.components_[i] = components(i);
    }
    return c;
}

Covector Covector::wedge_of_columns(const Eigen::MatrixXd& vectors)
{
    const int d = static_cast<int>(vectors.rows());
    const int k = static_cast<int>(vectors.cols());
    Covector c(d, k);
    const auto& idx = basis_multi_indices(d, k);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        c.components_[i] = minor(vectors, idx[i]);
    }
    return c;
}

double Covector::evaluate(const Eigen::MatrixXd& vectors) const
{
    if (vectors.cols() != degree_ || vectors.rows() != dim_) {
        throw IndexError("covector evaluated on the wrong number of vectors");
    }
    const auto& idx = basis_multi_indices(dim_, degree_);
    double sum = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        sum += components_[i] * minor(vectors, idx[i]);
    }
    return sum;
}

Covector& Covector::operator+=(const Covector& other)
{
    if (other.dim_ != dim_ || other.degree_ != degree_) {
        throw IndexError("adding covectors of different shapes");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        components_[i] += other.components_[i];
    }
    return *this;
}

Covector& Covector::operator*=(double s)
{
    for (double& x : components_) {
        x *= s;
    }
    return *this;
}

Covector operator+(Covector a, const Covector& b)
{
    a += b;
    return a;
}

Covector operator*(double s, Covector a)
{
    a *= s;
    return a;
}

Covector wedge(const Covector& a, const Covector& b)
{
    if (a.dim() != b.dim()) {
        throw IndexError("wedge of covectors on different spaces");
    }
    const int d = a.dim();
    const int p = a.degree();
    const int q = b.degree();
    Covector out(d, p + q);
    if (p + q > d) {
        return out;
    }
    const auto& ia = basis_multi_indices(d, p);
    const auto& ib = basis_multi_indices(d, q);
    const bool a_outer = p <= q;
    const auto& outer = a_outer ? ia : ib;
    const auto& inner_idx = a_outer ? ib : ia;
    std::vector<int> merged(static_cast<std::size_t>(p + q));
    for (std::size_t o = 0; o < outer.size(); ++o) {
        for (std::size_t i = 0; i < inner_idx.size(); ++i) {
            const auto& I = a_outer ? outer[o] : inner_idx[i];
            const auto& J = a_outer ? inner_idx[i] : outer[o];
            const double va = a[a_outer ? o : i];
            const double vb = b[a_outer ? i : o];
            if (va == 0.0 || vb == 0.0) {
                continue;
            }
            // Sign of the shuffle I ++ J -> sorted: count pairs (x in I, y in J) with x > y.
            int inversions = 0;
            bool disjoint = true;
            for (int x : I) {
                for (int y : J) {
                    disjoint = disjoint && x != y;
                    inversions += x > y;
                }
            }
            if (!disjoint) {
                continue;
            }
            std::merge(I.begin(), I.end(), J.begin(), J.end(), merged.begin());
            const double term = va * vb;
            out[rank_of(d, merged)] += (inversions % 2 == 0) ? term : -term;
        }
    }
    return out;
}

double inner(const Covector& a, const Covector& b)
{
    if (a.dim() != b.dim() || a.degree() != b.degree()) {
        throw IndexError("inner product of covectors of different shapes");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double inner(const Covector& a, const Covector& b, const Eigen::MatrixXd& metric)
{
    if (a.dim() != b.dim() || a.degree() != b.degree()) {
        throw IndexError("inner product of covectors of different shapes");
    }
    const auto& idx = basis_multi_indices(a.dim(), a.degree());
    double s = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (a[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const auto k = static_cast<Eigen::Index>(idx[i].size());
            double det = 1.0;
            if (k > 0) {
                Eigen::MatrixXd sub(k, k);
                for (Eigen::Index r = 0; r < k; ++r) {
                    for (Eigen::Index c = 0; c < k; ++c) {
                        sub(r, c) = metric(idx[i][r], idx[j][c]);
                    }
                }
                det = sub.determinant();
            }
            s += a[i] * b[j] * det;
        }
    }
    return s;
}

} // namespace dectk
