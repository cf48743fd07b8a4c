#pragma once

#include <functional>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dectk/chain_complex.hpp"
#include "dectk/exterior.hpp"
#include "dectk/mesh.hpp"
#include "dectk/quadrature.hpp"

namespace dectk {

/// Real p-cochain, indexed by the canonical p-simplex order.
struct Cochain {
    int degree = 0;
    Eigen::VectorXd values;

    static Cochain zero(const AbstractComplex& ac, int degree);
    static Cochain unit(const AbstractComplex& ac, int degree, std::size_t simplex);
};

inline constexpr std::size_t kNoTop = std::numeric_limits<std::size_t>::max();

/// A p-form evaluated per top simplex at a barycentric point. `x` is the
/// Cartesian position of that point.
class FormField {
public:
    enum class Provenance { WhitneyInterpolated, Analytic };
    using Evaluator =
        std::function<Covector(std::size_t top, std::span<const double> bary, const Eigen::VectorXd& x)>;

    FormField(int degree, int embed_dim, Provenance provenance, Evaluator evaluator)
        : degree_(degree), embed_dim_(embed_dim), provenance_(provenance), eval_(std::move(evaluator))
    {
    }

    /// A form given by a coordinate function of the Cartesian point.
    static FormField analytic(int degree, int embed_dim, std::function<Covector(const Eigen::VectorXd&)> f);

    int degree() const { return degree_; }
    int embed_dim() const { return embed_dim_; }
    Provenance provenance() const { return provenance_; }

    Covector evaluate(std::size_t top, std::span<const double> bary, const Eigen::VectorXd& x) const
    {
        return eval_(top, bary, x);
    }

private:
    int degree_;
    int embed_dim_;
    Provenance provenance_;
    Evaluator eval_;
};

/// Whitney form of p-simplex `sigma` inside top simplex `top`, evaluated at a
/// barycentric point of the top simplex:
///   p! * sum_k (-1)^k lambda_{ik} dlambda_{i0} ^ ... (omit k) ... ^ dlambda_{ip}.
/// Throws IndexError if sigma is not a face of top or the point is not
/// barycentric.
Covector whitney_basis(const AbstractComplex& ac, const GeometricComplex& gc, int p, std::size_t sigma,
                       std::size_t top, std::span<const double> bary);

/// Same formula for the local face `local` (ascending local vertex
/// positions) of a simplex whose barycentric gradients are the columns of
/// `grads`.
Covector local_whitney_form(const Eigen::MatrixXd& grads, const std::vector<int>& local,
                            std::span<const double> bary);

/// Interpolating Whitney form sum_sigma c_sigma W_sigma. The field refers
/// to `ac` and `gc`, which must outlive it.
FormField whitney_interpolate(const AbstractComplex& ac, const GeometricComplex& gc, const Cochain& c);

/// Integrates `f` over every p-simplex with `rule` (dim p), pulling the form
/// back through the simplex's affine parametrization.
Cochain de_rham_map(const FormField& f, const AbstractComplex& ac, const GeometricComplex& gc, int p,
                    const QuadratureRule& rule);
/// Same, with a degree-5 rule.
Cochain de_rham_map(const FormField& f, const AbstractComplex& ac, const GeometricComplex& gc, int p);

/// d_p c computed with the integer coboundary matrix.
Cochain coboundary_apply(const ComplexMatrices& cm, const Cochain& c);

/// R(W a ^ W b) with a rule of exactness degree 2 on each (p+q)-simplex.
Cochain cup_product(const AbstractComplex& ac, const GeometricComplex& gc, const Cochain& a, const Cochain& b);

// ---- polynomial test forms ------------------------------------------------

/// Sparse multivariate polynomial with real coefficients.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int vars) : vars_(vars) {}

    int vars() const { return vars_; }
    void add_term(const Exponents& exps, double coeff);
    double operator()(const Eigen::VectorXd& x) const;
    Polynomial derivative(int var) const;
    int degree() const;
    const std::map<Exponents, double>& terms() const { return terms_; }

private:
    int vars_ = 0;
    std::map<Exponents, double> terms_;
};

/// p-form sum_I P_I dx^I with polynomial coefficients, closed under d.
class PolynomialForm {
public:
    PolynomialForm(int dim, int degree);

    /// Deterministic pseudo-random form with coefficient polynomials of
    /// total degree <= max_poly_degree.
    static PolynomialForm random(int dim, int degree, int max_poly_degree, unsigned seed);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    Polynomial& coefficient(std::size_t multi_index) { return coeffs_[multi_index]; }
    const Polynomial& coefficient(std::size_t multi_index) const { return coeffs_[multi_index]; }

    Covector operator()(const Eigen::VectorXd& x) const;
    PolynomialForm exterior_derivative() const;
    FormField field() const;
    int polynomial_degree() const;

private:
    int dim_;
    int degree_;
    std::vector<Polynomial> coeffs_;
};

} // namespace dectk
