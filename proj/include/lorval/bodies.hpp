#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "lorval/hull3d.hpp"
#include "lorval/minkowski.hpp"

namespace lorval {

using Vec2 = Eigen::Vector2d;

struct Polytope {
    std::vector<Vec> vertices;
    int dim() const { return static_cast<int>(vertices.front().size()); }
    Polytope transformed(const Mat& g) const;
    Polytope scaled(double s) const;
};

// Convex unconditional polygon. Built from generators by reflecting in
// both axes and taking the hull; stored counter-clockwise.
struct Profile2D {
    std::vector<Vec2> polygon;
    std::vector<Vec2> generators;

    static Profile2D from_generators(const std::vector<Vec2>& gens);
    // max over the polygon of s*x + t*y
    double support(double s, double t) const;
};

struct RotationBody {
    Profile2D profile;
    int n;
};

struct StretchedCone {
    int n;
    double eps;
    double eta;
    double c;
    int k;

    // c is fixed by h_k(pi/4; C_eps) = eta * h_k(pi/4; C)
    static StretchedCone make(int n, double eps, int k);
    RotationBody as_rotation() const;
};

using ConvexBody = std::variant<Polytope, RotationBody, StretchedCone>;

RotationBody double_cone(int n);

struct ZonalAtom {
    double beta;
    double mass;
};

// Elevation-indexed measure on S^k; total mass = int s(beta) dbeta + sum of atoms.
struct ZonalMeasure {
    std::vector<ZonalAtom> atoms;
    std::function<double(double)> density;  // may be empty

    double total_mass() const;
};

struct SurfaceAtom {
    Vec normal;
    double mass;
};

double support_function(const ConvexBody& K, const Vec& u);
int ambient_dim(const ConvexBody& K);

std::vector<Vec2> convex_hull2(std::vector<Vec2> pts);
Hull3 polytope_hull(const Polytope& P);

std::vector<SurfaceAtom> surface_area_measure(const Polytope& P);

// Surface area measure of the (k+1)-dimensional body of revolution, by elevation.
ZonalMeasure zonal_surface_measure(const ConvexBody& B, int k);

// k-volume of the projection of the (k+1)-dimensional section onto the
// hyperplane whose normal has elevation alpha.
double k_support(const ConvexBody& B, int k, double alpha);

double sphere_area(int dim);  // |S^dim|

double A_k(int k);
double A_k_quadrature(int k);  // Gauss-Legendre cross-check

// P_p(s) = int_s^1 (1 - t^2)^p dt for p = (k-3)/2, generic over scalar type
template <class T>
T P_tail(int k, const T& s) {
    using std::acos;
    using std::sqrt;
    T one_m = 1.0 - s * s;
    T r, pw;
    double p;
    if (k % 2 == 1) {
        r = 1.0 - s;
        pw = T(1.0);
        p = 0.0;
    } else {
        r = acos(s);
        if (k == 2) return r;
        pw = sqrt(one_m);
        p = 0.5;
        r = 0.5 * (r - s * pw);
    }
    const double target = (k - 3) / 2.0;
    while (p < target - 1e-9) {
        p += 1.0;
        pw = pw * one_m;
        r = (-1.0 * s * pw + 2.0 * p * r) / (2.0 * p + 1.0);
    }
    return r;
}

template <class T>
T cone_h_plus(int k, double eta, const T& alpha) {
    using std::sin;
    return A_k(k) * eta * sin(alpha);
}

// branch below the seam pi/4 - eps, normalized so that 2 C_k / 2^{k/2} = 1
template <class T>
T cone_h_minus(int k, double eta, const T& alpha) {
    using std::cos;
    using std::pow;
    using std::sin;
    using std::sqrt;
    using std::tan;
    T s = eta * tan(alpha);
    T q = 1.0 - s * s;
    T qp;
    if (k % 2 == 1) {
        qp = T(1.0);
        for (int i = 0; i < (k - 1) / 2; ++i) qp = qp * q;
    } else {
        qp = sqrt(q);
        for (int i = 0; i < (k - 2) / 2; ++i) qp = qp * q;
    }
    return cone_h_plus(k, eta, alpha) + (2.0 / (k - 1)) * cos(alpha) * qp - 2.0 * eta * sin(alpha) * P_tail(k, s);
}

inline double cone_seam(double eps) { return std::numbers::pi / 4 - eps; }
inline double stretch_eta(double eps) { return std::tan(std::numbers::pi / 4 + eps); }

// Closed-form h_{k,eps}(alpha), even in alpha.
double double_cone_hk(int k, double eps, double alpha);

}  // namespace lorval
