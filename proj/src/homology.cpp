#include "dectk/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

#include "dectk/errors.hpp"

namespace dectk {

namespace {

// Sparse integer matrix supporting in-place elementary row and column
// operations. Columns own the values; rows index the nonzero columns.
class WorkMatrix {
public:
    WorkMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    static WorkMatrix identity(std::size_t n)
    {
        WorkMatrix w(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            w.put(i, i, Integer(1));
        }
        return w;
    }

    static WorkMatrix from(const IntSparseMatrix& m)
    {
        WorkMatrix w(m.rows(), m.cols());
        for (const auto& e : m.entries()) {
            w.put(e.row, e.col, e.value);
        }
        return w;
    }

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_.size(); }
    const std::map<std::size_t, Integer>& col(std::size_t c) const { return cols_[c]; }
    const std::set<std::size_t>& row(std::size_t r) const { return rows_[r]; }

    Integer get(std::size_t r, std::size_t c) const
    {
        auto it = cols_[c].find(r);
        return it == cols_[c].end() ? Integer(0) : it->second;
    }

    void put(std::size_t r, std::size_t c, Integer v)
    {
        if (v == 0) {
            if (cols_[c].erase(r) != 0) {
                rows_[r].erase(c);
            }
            return;
        }
        cols_[c][r] = std::move(v);
        rows_[r].insert(c);
    }

    void accumulate(std::size_t r, std::size_t c, const Integer& delta)
    {
        if (delta == 0) {
            return;
        }
        auto [it, inserted] = cols_[c].try_emplace(r, delta);
        if (inserted) {
            rows_[r].insert(c);
            return;
        }
        it->second += delta;
        if (it->second == 0) {
            cols_[c].erase(it);
            rows_[r].erase(c);
        }
    }

    // row dst += q * row src
    void add_row(std::size_t dst, std::size_t src, const Integer& q)
    {
        const std::vector<std::size_t> cs(rows_[src].begin(), rows_[src].end());
        for (std::size_t c : cs) {
            accumulate(dst, c, q * cols_[c].at(src));
        }
    }

    // col dst += q * col src
    void add_col(std::size_t dst, std::size_t src, const Integer& q)
    {
        const std::vector<std::pair<std::size_t, Integer>> src_col(cols_[src].begin(), cols_[src].end());
        for (const auto& [r, v] : src_col) {
            accumulate(r, dst, q * v);
        }
    }

    void negate_row(std::size_t r)
    {
        for (std::size_t c : rows_[r]) {
            auto& v = cols_[c].at(r);
            v = -v;
        }
    }

    void negate_col(std::size_t c)
    {
        for (auto& [r, v] : cols_[c]) {
            v = -v;
        }
    }

    // C_i' = a C_i + b C_j,  C_j' = c C_i + d C_j
    void combine_cols(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                      const Integer& d)
    {
        const auto ci = cols_[i];
        const auto cj = cols_[j];
        std::set<std::size_t> touched;
        for (const auto& [r, v] : ci) {
            touched.insert(r);
        }
        for (const auto& [r, v] : cj) {
            touched.insert(r);
        }
        for (std::size_t r : touched) {
            const Integer x = ci.count(r) ? ci.at(r) : Integer(0);
            const Integer y = cj.count(r) ? cj.at(r) : Integer(0);
            put(r, i, a * x + b * y);
            put(r, j, c * x + d * y);
        }
    }

    // R_i' = a R_i + b R_j,  R_j' = c R_i + d R_j
    void combine_rows(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                      const Integer& d)
    {
        std::set<std::size_t> touched(rows_[i]);
        touched.insert(rows_[j].begin(), rows_[j].end());
        for (std::size_t col : touched) {
            const Integer x = get(i, col);
            const Integer y = get(j, col);
            put(i, col, a * x + b * y);
            put(j, col, c * x + d * y);
        }
    }

    IntSparseMatrix to_matrix(const std::vector<std::size_t>& row_map, const std::vector<std::size_t>& col_map) const
    {
        std::vector<IntEntry> entries;
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            for (const auto& [r, v] : cols_[c]) {
                entries.push_back({row_map[r], col_map[c], v});
            }
        }
        return IntSparseMatrix::from_entries(rows_.size(), cols_.size(), std::move(entries));
    }

private:
    std::vector<std::map<std::size_t, Integer>> cols_;
    std::vector<std::set<std::size_t>> rows_;
};

std::vector<std::size_t> iota_vec(std::size_t n)
{
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

// Permutation sending pivot positions to 0..k-1, the rest after in order.
std::vector<std::size_t> pivot_permutation(std::size_t n, const std::vector<std::size_t>& pivots)
{
    std::vector<std::size_t> perm(n, n);
    std::size_t next = 0;
    for (std::size_t p : pivots) {
        perm[p] = next++;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] == n) {
            perm[i] = next++;
        }
    }
    return perm;
}

// g = s*a + t*b with g = gcd(a, b) > 0.
std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b)
{
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const Integer q = old_r / r;
        Integer next = old_r - q * r;
        old_r = r;
        r = next;
        next = old_s - q * s;
        old_s = s;
        s = next;
        next = old_t - q * t;
        old_t = t;
        t = next;
    }
    if (old_r < 0) {
        return {Integer(-old_r), Integer(-old_s), Integer(-old_t)};
    }
    return {old_r, old_s, old_t};
}

class SnfEngine {
public:
    SnfEngine(const IntSparseMatrix& a, bool transforms) : a_(WorkMatrix::from(a)), transforms_(transforms)
    {
        if (transforms_) {
            u_.emplace(WorkMatrix::identity(a.rows()));
            ui_.emplace(WorkMatrix::identity(a.rows()));
            v_.emplace(WorkMatrix::identity(a.cols()));
            vi_.emplace(WorkMatrix::identity(a.cols()));
        }
        active_row_.assign(a.rows(), true);
        active_col_.assign(a.cols(), true);
    }

    SnfResult run()
    {
        while (auto pivot = choose_pivot()) {
            auto [r, c] = *pivot;
            eliminate(r, c);
        }
        enforce_divisibility();
        return finish();
    }

private:
    void row_add(std::size_t dst, std::size_t src, const Integer& q)
    {
        a_.add_row(dst, src, q);
        if (transforms_) {
            u_->add_row(dst, src, q);
            ui_->add_col(src, dst, -q);
        }
    }

    void col_add(std::size_t dst, std::size_t src, const Integer& q)
    {
        a_.add_col(dst, src, q);
        if (transforms_) {
            v_->add_col(dst, src, q);
            vi_->add_row(src, dst, -q);
        }
    }

    void row_negate(std::size_t r)
    {
        a_.negate_row(r);
        if (transforms_) {
            u_->negate_row(r);
            ui_->negate_col(r);
        }
    }

    // [C_i C_j] <- [C_i C_j] * [[g00, g01], [g10, g11]] with det = 1.
    void col_combine(std::size_t i, std::size_t j, const Integer& g00, const Integer& g01, const Integer& g10,
                     const Integer& g11)
    {
        a_.combine_cols(i, j, g00, g10, g01, g11);
        if (transforms_) {
            v_->combine_cols(i, j, g00, g10, g01, g11);
            vi_->combine_rows(i, j, g11, -g01, -g10, g00);
        }
    }

    std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() const
    {
        std::optional<std::tuple<Integer, std::size_t, std::size_t, std::size_t>> best;
        for (std::size_t c = 0; c < a_.col_count(); ++c) {
            if (!active_col_[c]) {
                continue;
            }
            const auto& col = a_.col(c);
            for (const auto& [r, v] : col) {
                const std::size_t fill = (a_.row(r).size() - 1) * (col.size() - 1);
                auto key = std::make_tuple(Integer(abs(v)), fill, r, c);
                if (!best || key < *best) {
                    best = std::move(key);
                }
            }
        }
        if (!best) {
            return std::nullopt;
        }
        return std::make_pair(std::get<2>(*best), std::get<3>(*best));
    }

    void eliminate(std::size_t r, std::size_t c)
    {
        bool changed = true;
        while (changed) {
            changed = false;
            const Integer pivot = a_.get(r, c);
            std::vector<std::size_t> others;
            for (const auto& [i, v] : a_.col(c)) {
                if (i != r) {
                    others.push_back(i);
                }
            }
            for (std::size_t i : others) {
                const Integer q = a_.get(i, c) / pivot;
                if (q != 0) {
                    row_add(i, r, -q);
                }
                if (a_.get(i, c) != 0) {
                    r = i;  // remainder is strictly smaller than the pivot
                    changed = true;
                    break;
                }
            }
            if (changed) {
                continue;
            }
            const std::vector<std::size_t> cols(a_.row(r).begin(), a_.row(r).end());
            for (std::size_t j : cols) {
                if (j == c) {
                    continue;
                }
                const Integer q = a_.get(r, j) / pivot;
                if (q != 0) {
                    col_add(j, c, -q);
                }
                if (a_.get(r, j) != 0) {
                    c = j;
                    changed = true;
                    break;
                }
            }
        }
        if (a_.get(r, c) < 0) {
            row_negate(r);
        }
        active_row_[r] = false;
        active_col_[c] = false;
        pivots_.emplace_back(r, c);
    }

    void enforce_divisibility()
    {
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            for (std::size_t j = i + 1; j < pivots_.size(); ++j) {
                const auto [ri, ci] = pivots_[i];
                const auto [rj, cj] = pivots_[j];
                const Integer a = a_.get(ri, ci);
                const Integer b = a_.get(rj, cj);
                if (b % a == 0) {
                    continue;
                }
                const auto [g, s, t] = extended_gcd(a, b);
                row_add(ri, rj, Integer(1));
                col_combine(ci, cj, s, -(b / g), t, a / g);
                row_add(rj, ri, -(t * b / g));
            }
        }
    }

    SnfResult finish()
    {
        SnfResult res;
        res.rank = pivots_.size();
        std::vector<std::size_t> prow, pcol;
        for (const auto& [r, c] : pivots_) {
            res.diag.push_back(a_.get(r, c));
            prow.push_back(r);
            pcol.push_back(c);
        }
        res.has_transforms = transforms_;
        if (transforms_) {
            const auto row_perm = pivot_permutation(a_.row_count(), prow);
            const auto col_perm = pivot_permutation(a_.col_count(), pcol);
            const auto rid = iota_vec(a_.row_count());
            const auto cid = iota_vec(a_.col_count());
            res.left = u_->to_matrix(row_perm, rid);
            res.left_inverse = ui_->to_matrix(rid, row_perm);
            res.right = v_->to_matrix(cid, col_perm);
            res.right_inverse = vi_->to_matrix(col_perm, cid);
        }
        return res;
    }

    WorkMatrix a_;
    bool transforms_;
    std::optional<WorkMatrix> u_, ui_, v_, vi_;
    std::vector<bool> active_row_, active_col_;
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

IntSparseMatrix column_slice(const IntSparseMatrix& m, std::size_t first, std::size_t last)
{
    std::vector<IntEntry> entries;
    for (std::size_t c = first; c < last; ++c) {
        for (const auto& e : m.column(c)) {
            entries.push_back({e.row, c - first, e.value});
        }
    }
    return IntSparseMatrix::from_entries(m.rows(), last - first, std::move(entries));
}

IntSparseMatrix row_slice(const IntSparseMatrix& m, std::size_t first, std::size_t last)
{
    std::vector<IntEntry> entries;
    for (const auto& e : m.entries()) {
        if (e.row >= first && e.row < last) {
            entries.push_back({e.row - first, e.col, e.value});
        }
    }
    return IntSparseMatrix::from_entries(last - first, m.cols(), std::move(entries));
}

IntChain column_chain(const IntSparseMatrix& m, std::size_t c)
{
    IntChain out(m.rows(), 0);
    for (const auto& e : m.column(c)) {
        out[e.row] = e.value;
    }
    return out;
}

} // namespace

SnfResult smith_normal_form(const IntSparseMatrix& a, bool with_transforms)
{
    return SnfEngine(a, with_transforms).run();
}

std::size_t integer_rank(const IntSparseMatrix& a)
{
    return smith_normal_form(a, false).rank;
}

std::vector<std::size_t> betti_numbers(const ComplexMatrices& cm)
{
    const int n = cm.dim();
    std::vector<std::size_t> ranks(static_cast<std::size_t>(n + 2), 0);
    for (int p = 1; p <= n; ++p) {
        ranks[p] = integer_rank(cm.boundary(p));
    }
    std::vector<std::size_t> betti;
    for (int p = 0; p <= n; ++p) {
        betti.push_back(cm.count(p) - ranks[p] - ranks[p + 1]);
    }
    return betti;
}

std::vector<Integer> torsion_coefficients(const ComplexMatrices& cm, int p)
{
    if (p < 0 || p > cm.dim()) {
        throw IndexError("homology degree out of range");
    }
    std::vector<Integer> out;
    for (const auto& d : smith_normal_form(cm.boundary(p + 1), false).diag) {
        if (d > 1) {
            out.push_back(d);
        }
    }
    return out;
}

HomologyGroup homology_group(const ComplexMatrices& cm, int p)
{
    if (p < 0 || p > cm.dim()) {
        throw IndexError("homology degree out of range");
    }
    const std::size_t np = cm.count(p);
    const SnfResult outgoing = smith_normal_form(cm.boundary(p), true);
    const std::size_t r1 = outgoing.rank;

    // Last columns of V span ker boundary(p) over Z.
    const IntSparseMatrix cycles = column_slice(outgoing.right, r1, np);
    // Coordinates of the incoming boundaries in that cycle basis; the first
    // r1 rows vanish because boundary(p) * boundary(p+1) = 0.
    const IntSparseMatrix coords_full = outgoing.right_inverse * cm.boundary(p + 1);
    for (const auto& e : coords_full.entries()) {
        if (e.row < r1) {
            throw Error("boundary coordinates outside the cycle space; complex property violated");
        }
    }
    const IntSparseMatrix coords = row_slice(coords_full, r1, np);
    const SnfResult incoming = smith_normal_form(coords, true);
    const IntSparseMatrix adapted = cycles * incoming.left_inverse;

    HomologyGroup group;
    group.betti = adapted.cols() - incoming.rank;
    for (std::size_t k = 0; k < incoming.rank; ++k) {
        if (incoming.diag[k] > 1) {
            group.torsion.push_back(incoming.diag[k]);
            group.torsion_generators.push_back(column_chain(adapted, k));
        }
    }
    for (std::size_t k = incoming.rank; k < adapted.cols(); ++k) {
        group.free_generators.push_back(column_chain(adapted, k));
    }
    return group;
}

std::vector<IntChain> homology_generators(const ComplexMatrices& cm, int p)
{
    return homology_group(cm, p).free_generators;
}

std::size_t cohomology_betti(const ComplexMatrices& cm, int p)
{
    if (p < 0 || p > cm.dim()) {
        throw IndexError("cohomology degree out of range");
    }
    const std::size_t rank_out = p < cm.dim() ? integer_rank(cm.coboundary(p)) : 0;
    const std::size_t rank_in = p > 0 ? integer_rank(cm.coboundary(p - 1)) : 0;
    return cm.count(p) - rank_out - rank_in;
}

HomologySummary homology_summary(const ComplexMatrices& cm, bool with_generators)
{
    HomologySummary s;
    if (!with_generators) {
        s.betti = betti_numbers(cm);
        for (int p = 0; p <= cm.dim(); ++p) {
            s.torsion.push_back(torsion_coefficients(cm, p));
        }
        return s;
    }
    for (int p = 0; p <= cm.dim(); ++p) {
        HomologyGroup g = homology_group(cm, p);
        s.betti.push_back(g.betti);
        s.torsion.push_back(std::move(g.torsion));
        s.generators.push_back(std::move(g.free_generators));
    }
    return s;
}

IntChain apply(const IntSparseMatrix& m, const IntChain& chain)
{
    if (chain.size() != m.cols()) {
        throw IndexError("chain length does not match matrix columns");
    }
    IntChain out(m.rows(), 0);
    for (const auto& e : m.entries()) {
        out[e.row] += e.value * chain[e.col];
    }
    return out;
}

} // namespace dectk
