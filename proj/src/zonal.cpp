#include "lorval/zonal.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/chebyshev.hpp>
#include <boost/math/special_functions/gegenbauer.hpp>
#include <cmath>

#include "lorval/errors.hpp"
#include "lorval/quadrature.hpp"

namespace lorval {

namespace {

constexpr double kPi = std::numbers::pi;

double azimuth_norm(int k) {
    static const std::array<double, 65> table = [] {
        std::array<double, 65> t{};
        for (int j = 2; j <= 64; ++j) t[j] = A_k_quadrature(j);
        return t;
    }();
    if (k <= 64) return table[k];
    return A_k_quadrature(k);
}

}  // namespace

double zonal_kernel(int k, double alpha, double beta) {
    if (k < 1) throw InputError("k must be positive");
    const double a = std::sin(alpha) * std::sin(beta);
    const double b = std::abs(std::cos(alpha) * std::cos(beta));
    if (k == 1) return 0.5 * (std::abs(a + b) + std::abs(a - b));
    if (std::abs(a) >= b) return std::abs(a);
    const double phi0 = std::asin(std::clamp(-a / b, -1.0, 1.0));
    auto f = [&](double p) { return (a + b * std::sin(p)) * std::pow(std::cos(p), k - 2); };
    double upper = quad::gl(f, phi0, kPi / 2, 48);
    double lower = quad::gl(f, -kPi / 2, phi0, 48);
    return (upper - lower) / azimuth_norm(k);
}

ZonalKernel::ZonalKernel(int k_, std::vector<double> a, std::vector<double> b)
    : k(k_), alphas(std::move(a)), betas(std::move(b)), table(alphas.size(), betas.size()) {
    for (size_t i = 0; i < alphas.size(); ++i)
        for (size_t j = 0; j < betas.size(); ++j) table(i, j) = zonal_kernel(k, alphas[i], betas[j]);
}

double cosine_transform_at(int k, const ZonalMeasure& sigma, double alpha) {
    double h = 0.0;
    for (const auto& at : sigma.atoms) h += at.mass * zonal_kernel(k, alpha, at.beta);
    if (sigma.density) {
        const double kink = kPi / 2 - std::abs(alpha);
        // at |alpha| = pi/2 the two kinks merge at 0
        std::vector<double> cuts{-kPi / 2, 0.0, kPi / 2};
        if (kink > 1e-12 && kink < kPi / 2 - 1e-12) {
            cuts.push_back(-kink);
            cuts.push_back(kink);
        }
        std::sort(cuts.begin(), cuts.end());
        auto g = [&](double b) { return sigma.density(b) * zonal_kernel(k, alpha, b); };
        for (size_t i = 0; i + 1 < cuts.size(); ++i) h += quad::tanh_sinh(g, cuts[i], cuts[i + 1], 1e-13);
    }
    return h;
}

ZonalFunction cosine_transform(int k, ZonalMeasure sigma) {
    return [k, s = std::move(sigma)](double a) { return cosine_transform_at(k, s, a); };
}

std::vector<double> cosine_transform_grid(int k, const ZonalMeasure& sigma, const std::vector<double>& alphas) {
    std::vector<double> out;
    out.reserve(alphas.size());
    for (double a : alphas) out.push_back(cosine_transform_at(k, sigma, a));
    return out;
}

ZonalMeasure function_as_measure(int k, ZonalFunction f) {
    const double w = sphere_area(k - 1);
    ZonalMeasure m;
    m.density = [k, w, f = std::move(f)](double b) { return w * std::pow(std::cos(b), k - 1) * f(b); };
    return m;
}

double radon_at(int k, const ZonalFunction& f, double alpha) {
    if (k < 1) throw InputError("k must be positive");
    if (k == 1) {
        const double g = kPi / 2 - std::abs(alpha);
        return 0.5 * (f(g) + f(-g));
    }
    const double ca = std::cos(alpha);
    auto g = [&](double psi) {
        return f(std::asin(std::clamp(ca * std::cos(psi), -1.0, 1.0))) * std::pow(std::sin(psi), k - 2);
    };
    double z = k == 2 ? kPi : quad::gl([k](double p) { return std::pow(std::sin(p), k - 2); }, 0.0, kPi, 64);
    return quad::tanh_sinh(g, 0.0, kPi, 1e-13) / z;
}

ZonalFunction radon_transform(int k, ZonalFunction f) {
    return [k, f = std::move(f)](double a) { return radon_at(k, f, a); };
}

double zonal_laplacian(int k, const ZonalFunction& f, double beta, double h) {
    const double fm2 = f(beta - 2 * h), fm1 = f(beta - h), f0 = f(beta), fp1 = f(beta + h), fp2 = f(beta + 2 * h);
    const double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    return d2 - (k - 1) * std::tan(beta) * d1;
}

double zonal_harmonic(int k, int degree, double beta) {
    const double x = std::sin(beta);
    if (k == 1) return boost::math::chebyshev_t(static_cast<unsigned>(degree), x);
    return boost::math::gegenbauer(static_cast<unsigned>(degree), 0.5 * (k - 1), x);
}

BoxIdentityReport box_identity(int k, const ZonalFunction& f, int grid) {
    if (k < 1) throw InputError("k must be positive");
    ZonalMeasure one = function_as_measure(k, [](double) { return 1.0; });
    const double t1 = cosine_transform_at(k, one, 0.3);
    BoxIdentityReport rep{};
    rep.c_calibrated = 1.0 / (k * t1);
    rep.c_stated = 1.0 / (2.0 * sphere_area(k - 1));
    ZonalFunction tf = cosine_transform(k, function_as_measure(k, f));
    const double top = kPi / 2 - 0.1;
    for (int i = 0; i < grid; ++i) {
        double a = top * i / (grid - 1);
        double lhs = zonal_laplacian(k, tf, a) + k * tf(a);
        double rhs = radon_at(k, f, a);
        rep.residual = std::max(rep.residual, std::abs(rep.c_calibrated * lhs - rhs));
        rep.residual_stated = std::max(rep.residual_stated, std::abs(rep.c_stated * lhs - rhs));
        rep.scale = std::max(rep.scale, std::abs(rhs));
    }
    return rep;
}

double box_identity_residual(int k, const ZonalFunction& f) { return box_identity(k, f).residual; }

}  // namespace lorval
