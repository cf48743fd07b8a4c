#include "dectk/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "dectk/combinatorics.hpp"
#include "dectk/errors.hpp"

namespace dectk {

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.assign(static_cast<std::size_t>(count), 0.0);
    weights.assign(static_cast<std::size_t>(count), 0.0);
    for (int i = 0; i < count; ++i) {
        // Newton on P_count starting from the Chebyshev-like guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= count; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= count; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = count * (x * p1 - p0) / (x * x - 1.0);
        // Map [-1, 1] to [0, 1].
        nodes[i] = 0.5 * (1.0 - x);
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

QuadratureRule build_rule(int dim, int degree)
{
    QuadratureRule rule;
    rule.dim = dim;
    rule.exactness_degree = degree;
    if (dim == 0) {
        rule.points = {{1.0}};
        rule.weights = {1.0};
        return rule;
    }
    // The collapse Jacobian adds up to dim - 1 to the degree in u_1.
    const int count = std::max(1, (degree + dim + 1) / 2);
    std::vector<double> gx, gw;
    gauss_legendre(count, gx, gw);

    std::vector<int> id(static_cast<std::size_t>(dim), 0);
    const double norm = factorial(dim);
    while (true) {
        std::vector<double> bary(static_cast<std::size_t>(dim + 1), 0.0);
        double remaining = 1.0;
        for (int k = 0; k < dim; ++k) {
            const double u = gx[id[k]];
            bary[k + 1] = remaining * u;
            remaining *= (1.0 - u);
        }
        // Jacobian of x_k = u_k * prod_{j<k} (1 - u_j) is prod_k prod_{j<k} (1 - u_j).
        double jac = 1.0;
        for (int k = 1; k < dim; ++k) {
            for (int j = 0; j < k; ++j) {
                jac *= 1.0 - gx[id[j]];
            }
        }
        double w = norm * jac;
        for (int k = 0; k < dim; ++k) {
            w *= gw[id[k]];
        }
        bary[0] = remaining;
        rule.points.push_back(std::move(bary));
        rule.weights.push_back(w);

        int k = dim - 1;
        while (k >= 0 && id[k] == count - 1) {
            id[k] = 0;
            --k;
        }
        if (k < 0) {
            break;
        }
        ++id[k];
    }
    return rule;
}

} // namespace

const QuadratureRule& simplex_rule(int dim, int degree)
{
    if (dim < 0 || degree < 0) {
        throw IndexError("quadrature rule needs non-negative dimension and degree");
    }
    static std::mutex mutex;
    static std::map<std::pair<int, int>, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({dim, degree});
    if (it == cache.end()) {
        it = cache.emplace(std::make_pair(dim, degree), build_rule(dim, degree)).first;
    }
    return it->second;
}

} // namespace dectk
