#include "dectk/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "dectk/combinatorics.hpp"
#include "dectk/errors.hpp"

namespace dectk {

namespace {

void check_barycentric(std::span<const double> bary, std::size_t expected)
{
    if (bary.size() != expected) {
        throw IndexError("barycentric point has " + std::to_string(bary.size()) + " entries, expected "
                         + std::to_string(expected));
    }
    double sum = 0.0;
    for (double b : bary) {
        if (b < -1e-12) {
            throw IndexError("barycentric point has a negative entry");
        }
        sum += b;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw IndexError("barycentric point does not sum to one");
    }
}

// Local vertex positions of `face` inside `top`; both ascending.
std::optional<std::vector<int>> local_positions(const Simplex& top, const Simplex& face)
{
    std::vector<int> local;
    local.reserve(face.size());
    std::size_t j = 0;
    for (Index v : face) {
        while (j < top.size() && top[j] < v) {
            ++j;
        }
        if (j == top.size() || top[j] != v) {
            return std::nullopt;
        }
        local.push_back(static_cast<int>(j));
    }
    return local;
}

struct TopGeometry {
    std::vector<Eigen::MatrixXd> grads;  // canonical vertex order
};

std::shared_ptr<const TopGeometry> top_geometry(const AbstractComplex& ac, const GeometricComplex& gc)
{
    auto geo = std::make_shared<TopGeometry>();
    const int n = ac.dim();
    geo->grads.reserve(ac.count(n));
    for (const auto& t : ac.simplices(n)) {
        geo->grads.push_back(barycentric_gradients(gc, t));
    }
    return geo;
}

// W(values) of degree p at a barycentric point of top simplex t.
Covector whitney_sum(const AbstractComplex& ac, const Eigen::MatrixXd& grads, std::size_t t, int p,
                     const Eigen::VectorXd& values, std::span<const double> bary)
{
    const int n = ac.dim();
    const auto& combos = basis_multi_indices(n + 1, p + 1);
    const auto faces = ac.faces_of_top(p, t);
    Covector out(static_cast<int>(grads.rows()), p);
    for (std::size_t k = 0; k < combos.size(); ++k) {
        const double c = values[static_cast<Eigen::Index>(faces[k])];
        if (c != 0.0) {
            out += c * local_whitney_form(grads, combos[k], bary);
        }
    }
    return out;
}

Eigen::MatrixXd edge_vectors(const GeometricComplex& gc, const Simplex& s)
{
    const int k = static_cast<int>(s.size()) - 1;
    Eigen::MatrixXd e(gc.embed_dim(), k);
    for (int j = 0; j < k; ++j) {
        e.col(j) = (gc.vertices().row(s[j + 1]) - gc.vertices().row(s[0])).transpose();
    }
    return e;
}

void check_cochain(const AbstractComplex& ac, const Cochain& c)
{
    if (c.degree < 0 || c.degree > ac.dim()) {
        throw IndexError("cochain degree " + std::to_string(c.degree) + " outside [0, " + std::to_string(ac.dim())
                         + "]");
    }
    if (static_cast<std::size_t>(c.values.size()) != ac.count(c.degree)) {
        throw IndexError("cochain of degree " + std::to_string(c.degree) + " has " + std::to_string(c.values.size())
                         + " values, complex has " + std::to_string(ac.count(c.degree)) + " simplices");
    }
}

} // namespace

// Whitney form of the local face `local` of a simplex with barycentric
// gradients `grads` (d x (n+1)).
Covector local_whitney_form(const Eigen::MatrixXd& grads, const std::vector<int>& local, std::span<const double> bary)
{
    const int d = static_cast<int>(grads.rows());
    const int p = static_cast<int>(local.size()) - 1;
    if (p == 0) {
        return Covector::scalar(d, bary[local[0]]);
    }
    Covector out(d, p);
    Eigen::MatrixXd g(d, p);
    const double scale = factorial(p);
    for (int k = 0; k <= p; ++k) {
        const double lam = bary[local[k]];
        if (lam == 0.0) {
            continue;
        }
        for (int j = 0, col = 0; j <= p; ++j) {
            if (j != k) {
                g.col(col++) = grads.col(local[j]);
            }
        }
        out += ((k % 2 == 0 ? scale : -scale) * lam) * Covector::wedge_of_columns(g);
    }
    return out;
}

Cochain Cochain::zero(const AbstractComplex& ac, int degree)
{
    return {degree, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ac.count(degree)))};
}

Cochain Cochain::unit(const AbstractComplex& ac, int degree, std::size_t simplex)
{
    Cochain c = zero(ac, degree);
    c.values[static_cast<Eigen::Index>(simplex)] = 1.0;
    return c;
}

FormField FormField::analytic(int degree, int embed_dim, std::function<Covector(const Eigen::VectorXd&)> f)
{
    return FormField(degree, embed_dim, Provenance::Analytic,
                     [f = std::move(f)](std::size_t, std::span<const double>, const Eigen::VectorXd& x) {
                         return f(x);
                     });
}

Covector whitney_basis(const AbstractComplex& ac, const GeometricComplex& gc, int p, std::size_t sigma,
                       std::size_t top, std::span<const double> bary)
{
    const int n = ac.dim();
    if (top >= ac.count(n) || sigma >= ac.count(p)) {
        throw IndexError("simplex index out of range");
    }
    const auto& t = ac.simplex(n, top);
    const auto local = local_positions(t, ac.simplex(p, sigma));
    if (!local) {
        throw IndexError(std::to_string(p) + "-simplex " + std::to_string(sigma) + " is not a face of top simplex "
                         + std::to_string(top));
    }
    check_barycentric(bary, t.size());
    return local_whitney_form(barycentric_gradients(gc, t), *local, bary);
}

FormField whitney_interpolate(const AbstractComplex& ac, const GeometricComplex& gc, const Cochain& c)
{
    check_cochain(ac, c);
    auto geo = top_geometry(ac, gc);
    const int p = c.degree;
    const AbstractComplex* complex = &ac;
    return FormField(p, gc.embed_dim(), FormField::Provenance::WhitneyInterpolated,
                     [complex, geo, p, values = c.values](std::size_t top, std::span<const double> bary,
                                                          const Eigen::VectorXd&) {
                         if (top >= geo->grads.size()) {
                             throw IndexError("Whitney field evaluated outside any top simplex");
                         }
                         return whitney_sum(*complex, geo->grads[top], top, p, values, bary);
                     });
}

Cochain de_rham_map(const FormField& f, const AbstractComplex& ac, const GeometricComplex& gc, int p,
                    const QuadratureRule& rule)
{
    if (f.degree() != p) {
        throw IndexError("de Rham map of a " + std::to_string(f.degree()) + "-form on " + std::to_string(p)
                         + "-simplices");
    }
    if (rule.dim != p) {
        throw IndexError("quadrature rule dimension does not match the simplex dimension");
    }
    const int n = ac.dim();
    Cochain out = Cochain::zero(ac, p);
    const double inv_fact = 1.0 / factorial(p);
    std::vector<double> bary_top(static_cast<std::size_t>(n + 1));
    for (std::size_t s = 0; s < ac.count(p); ++s) {
        const Simplex& sigma = ac.simplex(p, s);
        const auto& cof = ac.top_cofaces(p, s);
        const std::size_t top = cof.empty() ? kNoTop : cof.front();
        std::vector<int> local;
        if (top != kNoTop) {
            local = *local_positions(ac.simplex(n, top), sigma);
        }
        const Eigen::MatrixXd e = edge_vectors(gc, sigma);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto& xi = rule.points[q];
            const Eigen::VectorXd x = barycentric_point(gc, sigma, xi);
            std::fill(bary_top.begin(), bary_top.end(), 0.0);
            for (std::size_t j = 0; j < local.size(); ++j) {
                bary_top[local[j]] = xi[j];
            }
            acc += rule.weights[q] * f.evaluate(top, bary_top, x).evaluate(e);
        }
        out.values[static_cast<Eigen::Index>(s)] = acc * inv_fact;
    }
    return out;
}

Cochain de_rham_map(const FormField& f, const AbstractComplex& ac, const GeometricComplex& gc, int p)
{
    return de_rham_map(f, ac, gc, p, simplex_rule(p, 5));
}

Cochain coboundary_apply(const ComplexMatrices& cm, const Cochain& c)
{
    if (c.degree < 0 || c.degree >= cm.dim()) {
        throw IndexError("coboundary of a top-degree (or invalid) cochain");
    }
    if (static_cast<std::size_t>(c.values.size()) != cm.count(c.degree)) {
        throw IndexError("cochain length does not match the complex");
    }
    return {c.degree + 1, cm.coboundary(c.degree).to_real() * c.values};
}

Cochain cup_product(const AbstractComplex& ac, const GeometricComplex& gc, const Cochain& a, const Cochain& b)
{
    check_cochain(ac, a);
    check_cochain(ac, b);
    const int k = a.degree + b.degree;
    const int n = ac.dim();
    if (k > n) {
        throw IndexError("cup product degree " + std::to_string(k) + " exceeds complex dimension "
                         + std::to_string(n));
    }
    const QuadratureRule& rule = simplex_rule(k, 2);
    const double inv_fact = 1.0 / factorial(k);
    Cochain out = Cochain::zero(ac, k);
    std::vector<double> bary_top(static_cast<std::size_t>(n + 1));
    for (std::size_t s = 0; s < ac.count(k); ++s) {
        const Simplex& sigma = ac.simplex(k, s);
        const auto& cof = ac.top_cofaces(k, s);
        if (cof.empty()) {
            throw IndexError("cup product needs a pure complex");
        }
        const std::size_t top = cof.front();
        const auto local = *local_positions(ac.simplex(n, top), sigma);
        const Eigen::MatrixXd grads = barycentric_gradients(gc, ac.simplex(n, top));
        const Eigen::MatrixXd e = edge_vectors(gc, sigma);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            std::fill(bary_top.begin(), bary_top.end(), 0.0);
            for (std::size_t j = 0; j < local.size(); ++j) {
                bary_top[local[j]] = rule.points[q][j];
            }
            const Covector wa = whitney_sum(ac, grads, top, a.degree, a.values, bary_top);
            const Covector wb = whitney_sum(ac, grads, top, b.degree, b.values, bary_top);
            acc += rule.weights[q] * wedge(wa, wb).evaluate(e);
        }
        out.values[static_cast<Eigen::Index>(s)] = acc * inv_fact;
    }
    return out;
}

// ---- polynomials ------------------------------------------------------------

void Polynomial::add_term(const Exponents& exps, double coeff)
{
    if (static_cast<int>(exps.size()) != vars_) {
        throw IndexError("monomial has the wrong number of variables");
    }
    auto& c = terms_[exps];
    c += coeff;
    if (c == 0.0) {
        terms_.erase(exps);
    }
}

double Polynomial::operator()(const Eigen::VectorXd& x) const
{
    double sum = 0.0;
    for (const auto& [exps, c] : terms_) {
        double m = c;
        for (int i = 0; i < vars_; ++i) {
            for (int e = 0; e < exps[i]; ++e) {
                m *= x[i];
            }
        }
        sum += m;
    }
    return sum;
}

Polynomial Polynomial::derivative(int var) const
{
    Polynomial out(vars_);
    for (const auto& [exps, c] : terms_) {
        if (exps[var] == 0) {
            continue;
        }
        Exponents e = exps;
        --e[var];
        out.add_term(e, c * exps[var]);
    }
    return out;
}

int Polynomial::degree() const
{
    int deg = 0;
    for (const auto& [exps, c] : terms_) {
        int s = 0;
        for (int e : exps) {
            s += e;
        }
        deg = std::max(deg, s);
    }
    return deg;
}

PolynomialForm::PolynomialForm(int dim, int degree)
    : dim_(dim), degree_(degree), coeffs_(binomial(dim, degree), Polynomial(dim))
{
}

PolynomialForm PolynomialForm::random(int dim, int degree, int max_poly_degree, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    PolynomialForm form(dim, degree);
    for (auto& poly : form.coeffs_) {
        // All monomials of total degree <= max_poly_degree.
        std::vector<int> e(static_cast<std::size_t>(dim), 0);
        while (true) {
            int total = 0;
            for (int v : e) {
                total += v;
            }
            if (total <= max_poly_degree) {
                poly.add_term(e, coeff(rng));
            }
            int i = 0;
            while (i < dim && e[i] == max_poly_degree) {
                e[i] = 0;
                ++i;
            }
            if (i == dim) {
                break;
            }
            ++e[i];
        }
    }
    return form;
}

Covector PolynomialForm::operator()(const Eigen::VectorXd& x) const
{
    Covector c(dim_, degree_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        c[i] = coeffs_[i](x);
    }
    return c;
}

PolynomialForm PolynomialForm::exterior_derivative() const
{
    PolynomialForm out(dim_, degree_ + 1);
    if (degree_ + 1 > dim_) {
        return out;
    }
    const auto& src = basis_multi_indices(dim_, degree_);
    const auto& dst = basis_multi_indices(dim_, degree_ + 1);
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (int j = 0; j < dim_; ++j) {
            const auto& I = src[i];
            if (std::find(I.begin(), I.end(), j) != I.end()) {
                continue;
            }
            // dx^j ^ dx^I = (-1)^{#{i in I : i < j}} dx^{I + j}
            std::vector<int> K = I;
            K.insert(std::upper_bound(K.begin(), K.end(), j), j);
            const auto before = std::count_if(I.begin(), I.end(), [j](int v) { return v < j; });
            const std::size_t k = static_cast<std::size_t>(std::lower_bound(dst.begin(), dst.end(), K) - dst.begin());
            Polynomial partial = coeffs_[i].derivative(j);
            const double sign = before % 2 == 0 ? 1.0 : -1.0;
            for (const auto& [exps, c] : partial.terms()) {
                out.coeffs_[k].add_term(exps, sign * c);
            }
        }
    }
    return out;
}

FormField PolynomialForm::field() const
{
    PolynomialForm copy = *this;
    return FormField::analytic(degree_, dim_, [copy](const Eigen::VectorXd& x) { return copy(x); });
}

int PolynomialForm::polynomial_degree() const
{
    int deg = 0;
    for (const auto& p : coeffs_) {
        deg = std::max(deg, p.degree());
    }
    return deg;
}

} // namespace dectk
