#pragma once

#include <cstddef>
#include <vector>

namespace dectk {

constexpr std::size_t binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    }
    return r;
}

constexpr double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

/// All k-subsets of {0, ..., n-1} as ascending tuples, in lexicographic order.
inline std::vector<std::vector<int>> combinations(int n, int k)
{
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) {
        return out;
    }
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        c[i] = i;
    }
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++c[i];
        for (int j = i + 1; j < k; ++j) {
            c[j] = c[j - 1] + 1;
        }
    }
    return out;
}

/// Sign of the permutation that sorts `v` (entries assumed distinct).
template <class Vec>
int permutation_parity(Vec v)
{
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[j] < v[i]) {
                sign = -sign;
            }
        }
    }
    return sign;
}

} // namespace dectk
