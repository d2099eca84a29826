#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "lorval/bodies.hpp"
#include "lorval/minkowski.hpp"

namespace testutil {

using lorval::Mat;
using lorval::Vec;

inline Vec gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = N(rng);
    return v;
}

inline Vec unit(int n, std::mt19937_64& rng) {
    Vec v = gaussian(n, rng);
    return v / v.norm();
}

inline std::vector<Vec> random_basis(int n, int k, std::mt19937_64& rng) {
    std::vector<Vec> b;
    for (int i = 0; i < k; ++i) b.push_back(gaussian(n, rng));
    return b;
}

inline double uniform(double a, double b, std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

// vertices of a random full-dimensional polytope in R^3
inline lorval::Polytope random_polytope(std::mt19937_64& rng, int m = 12) {
    lorval::Polytope P;
    for (int i = 0; i < m; ++i) P.vertices.push_back(gaussian(3, rng));
    return P;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

}  // namespace testutil
