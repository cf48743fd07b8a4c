#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dectk {

/// Ascending p-subsets of {0..d-1}, lexicographic. Cached per (d, p).
const std::vector<std::vector<int>>& basis_multi_indices(int dim, int degree);

/// Constant antisymmetric p-covector on R^d, stored by its components on
/// dx^I for ascending multi-indices I in lexicographic order.
class Covector {
public:
    Covector() = default;
    Covector(int dim, int degree);

    static Covector scalar(int dim, double value);
    static Covector one_form(const Eigen::VectorXd& components);
    /// g_1 ^ ... ^ g_k for the columns of `vectors` (d x k); components are
    /// the k x k minors.
    static Covector wedge_of_columns(const Eigen::MatrixXd& vectors);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    std::size_t size() const { return components_.size(); }
    double& operator[](std::size_t i) { return components_[i]; }
    double operator[](std::size_t i) const { return components_[i]; }
    const std::vector<double>& components() const { return components_; }

    /// Evaluation on the columns of `vectors` (d x p).
    double evaluate(const Eigen::MatrixXd& vectors) const;

    Covector& operator+=(const Covector& other);
    Covector& operator*=(double s);

private:
    int dim_ = 0;
    int degree_ = 0;
    std::vector<double> components_;
};

Covector operator+(Covector a, const Covector& b);
Covector operator*(double s, Covector a);

/// Exterior product. Summation over splits runs in the index order of the
/// lower-degree factor (the first one on ties), so a ^ b and b ^ a round
/// identically up to the graded sign for every degree pair with p + q <= 3.
Covector wedge(const Covector& a, const Covector& b);

/// Euclidean pointwise inner product sum_I a_I b_I.
double inner(const Covector& a, const Covector& b);

/// Inner product induced on p-covectors by a symmetric positive 1-form
/// metric `metric` (d x d): sum_{I,J} a_I b_J det(metric[I, J]).
double inner(const Covector& a, const Covector& b, const Eigen::MatrixXd& metric);

} // namespace dectk
