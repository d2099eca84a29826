#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

namespace lorval::quad {

struct Rule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// cached Gauss-Legendre rule with m nodes
const Rule& gauss_legendre(int m);

template <class F>
auto gl(F&& f, double a, double b, int m = 64) {
    const Rule& r = gauss_legendre(m);
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    decltype(f(c)) s{};
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

// Panels [a, a+d], [a+d, a+3d], ... growing geometrically towards b;
// resolves a near-singular endpoint at a.
template <class F>
auto gl_graded(F&& f, double a, double b, double first, double ratio = 2.0, int m = 30) {
    decltype(f(a)) s{};
    double lo = a, width = first;
    while (lo < b) {
        double hi = std::min(b, lo + width);
        if (b - hi < 0.5 * width) hi = b;
        s += gl(f, lo, hi, m);
        lo = hi;
        width *= ratio;
    }
    return s;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-14);
double kronrod(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace lorval::quad
