#pragma once

#include <vector>

namespace dectk {

/// Quadrature on the reference p-simplex in barycentric coordinates.
/// Weights sum to one; multiply by the simplex volume at the use site.
struct QuadratureRule {
    int dim = 0;
    std::vector<std::vector<double>> points;  // each has dim + 1 entries
    std::vector<double> weights;
    int exactness_degree = 0;
};

/// Collapsed (Duffy) tensor Gauss-Legendre rule on the p-simplex, exact for
/// polynomials of total degree <= `degree`. Deterministic and cached.
const QuadratureRule& simplex_rule(int dim, int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace dectk
