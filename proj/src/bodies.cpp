#include "lorval/bodies.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <map>

#include "lorval/errors.hpp"
#include "lorval/quadrature.hpp"
#include "lorval/zonal.hpp"

namespace lorval {

namespace {

constexpr double kPi = std::numbers::pi;


}  // namespace

Polytope Polytope::transformed(const Mat& g) const {
    Polytope out;
    for (const auto& v : vertices) out.vertices.push_back(g * v);
    return out;
}

Polytope Polytope::scaled(double s) const {
    Polytope out;
    for (const auto& v : vertices) out.vertices.push_back(s * v);
    return out;
}

std::vector<Vec2> convex_hull2(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    const double tol = 1e-14 * scale * scale;
    auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Vec2> h(2 * pts.size());
    size_t m = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (m >= 2 && cross(h[m - 2], h[m - 1], pts[i]) <= tol) --m;
        h[m++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = m + 1; i-- > 0;) {
        while (m >= t && cross(h[m - 2], h[m - 1], pts[i]) <= tol) --m;
        h[m++] = pts[i];
    }
    h.resize(m - 1);
    return h;
}

Profile2D Profile2D::from_generators(const std::vector<Vec2>& gens) {
    std::vector<Vec2> pts;
    for (const auto& g : gens) {
        Vec2 a = g.cwiseAbs();
        pts.push_back(a);
        pts.push_back({-a.x(), a.y()});
        pts.push_back({a.x(), -a.y()});
        pts.push_back(-a);
    }
    Profile2D p;
    p.generators = gens;
    p.polygon = convex_hull2(pts);
    if (p.polygon.size() < 3) throw InputError("profile is not full-dimensional");
    return p;
}

double Profile2D::support(double s, double t) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : polygon) best = std::max(best, s * v.x() + t * v.y());
    return best;
}

RotationBody double_cone(int n) {
    return {Profile2D::from_generators({{1.0, 0.0}, {0.0, 1.0}}), n};
}

StretchedCone StretchedCone::make(int n, double eps, int k) {
    if (n < 2) throw InputError("dimension must be at least 2");
    if (k < 1 || k > n - 1) throw InputError("k out of range");
    if (!(std::abs(eps) < kPi / 4)) throw InputError("stretch parameter out of range");
    StretchedCone s{n, eps, stretch_eta(eps), 1.0, k};
    RotationBody base = double_cone(n);
    RotationBody d{Profile2D::from_generators({{s.eta, 0.0}, {0.0, 1.0}}), n};
    double h0 = k_support(base, k, kPi / 4);
    double h1 = k_support(d, k, kPi / 4);
    s.c = std::pow(s.eta * h0 / h1, 1.0 / k);
    return s;
}

RotationBody StretchedCone::as_rotation() const {
    return {Profile2D::from_generators({{c * eta, 0.0}, {0.0, c}}), n};
}

double ZonalMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    if (density) s += quad::tanh_sinh(density, -kPi / 2, kPi / 2, 1e-12);
    return s;
}

int ambient_dim(const ConvexBody& K) {
    return std::visit(
        [](const auto& b) -> int {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Polytope>)
                return b.dim();
            else
                return b.n;
        },
        K);
}

double support_function(const ConvexBody& K, const Vec& u) {
    if (u.size() != ambient_dim(K)) throw InputError("direction has wrong dimension");
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Polytope>) {
                double best = -std::numeric_limits<double>::infinity();
                for (const auto& v : b.vertices) best = std::max(best, u.dot(v));
                return best;
            } else {
                const auto n = u.size();
                const RotationBody r = [&] {
                    if constexpr (std::is_same_v<T, StretchedCone>)
                        return b.as_rotation();
                    else
                        return b;
                }();
                return r.profile.support(u.head(n - 1).norm(), u(n - 1));
            }
        },
        K);
}

Hull3 polytope_hull(const Polytope& P) {
    if (P.dim() != 3) throw InputError("3D hull requires points in R^3");
    std::vector<Vec3> pts;
    for (const auto& v : P.vertices) pts.emplace_back(v(0), v(1), v(2));
    return convex_hull3(pts);
}

std::vector<SurfaceAtom> surface_area_measure(const Polytope& P) {
    if (P.vertices.empty()) throw InputError("empty polytope");
    std::vector<SurfaceAtom> out;
    if (P.dim() == 2) {
        std::vector<Vec2> pts;
        for (const auto& v : P.vertices) pts.emplace_back(v(0), v(1));
        auto poly = convex_hull2(pts);
        if (poly.size() < 3) throw InputError("degenerate polygon");
        for (size_t i = 0; i < poly.size(); ++i) {
            Vec2 d = poly[(i + 1) % poly.size()] - poly[i];
            Vec nrm(2);
            nrm << d.y(), -d.x();
            double len = d.norm();
            out.push_back({nrm / len, len});
        }
        return out;
    }
    if (P.dim() != 3) throw InputError("facet enumeration is limited to n <= 3");
    Hull3 h = polytope_hull(P);
    for (const auto& f : h.facets) out.push_back({Vec(f.normal), f.area});
    return out;
}

double sphere_area(int dim) {
    // |S^dim| = 2 pi^{(dim+1)/2} / Gamma((dim+1)/2)
    return 2.0 * std::pow(kPi, 0.5 * (dim + 1)) / boost::math::tgamma(0.5 * (dim + 1));
}

namespace {

ZonalMeasure profile_measure(const Profile2D& prof, int k) {
    const double wk = sphere_area(k - 1);
    std::map<double, double> lumped;
    const auto& poly = prof.polygon;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        Vec2 p = poly[i], q = poly[(i + 1) % m];
        // clip the edge to the half-plane x >= 0
        if (p.x() < 0 && q.x() < 0) continue;
        if (p.x() < 0 || q.x() < 0) {
            double t = p.x() / (p.x() - q.x());
            Vec2 z = p + t * (q - p);
            z.x() = 0.0;
            if (p.x() < 0)
                p = z;
            else
                q = z;
        }
        Vec2 d = q - p;
        double len = d.norm();
        if (len <= 1e-15) continue;
        Vec2 nrm(d.y() / len, -d.x() / len);
        if (nrm.x() < -1e-14) continue;
        double beta = std::atan2(nrm.y(), std::max(0.0, nrm.x()));
        double xp = p.x(), xq = q.x();
        double avg;  // mean of x^{k-1} along the edge
        if (std::abs(xp - xq) < 1e-14 * std::max(1.0, std::abs(xp)))
            avg = std::pow(0.5 * (xp + xq), k - 1);
        else
            avg = (std::pow(xp, k) - std::pow(xq, k)) / (k * (xp - xq));
        double mass = wk * len * avg;
        // merge atoms that share an elevation
        bool merged = false;
        for (auto& [b, mm] : lumped)
            if (std::abs(b - beta) < 1e-13) {
                mm += mass;
                merged = true;
                break;
            }
        if (!merged) lumped[beta] = mass;
    }
    ZonalMeasure z;
    for (auto [b, mm] : lumped)
        if (mm > 0) z.atoms.push_back({b, mm});
    return z;
}

}  // namespace

ZonalMeasure zonal_surface_measure(const ConvexBody& B, int k) {
    return std::visit(
        [&](const auto& b) -> ZonalMeasure {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Polytope>) {
                throw InputError("zonal measures need a rotation body or a cone");
            } else {
                if (k < 1 || k > b.n - 1) throw InputError("k out of range");
                if constexpr (std::is_same_v<T, StretchedCone>)
                    return profile_measure(b.as_rotation().profile, k);
                else
                    return profile_measure(b.profile, k);
            }
        },
        B);
}

double k_support(const ConvexBody& B, int k, double alpha) {
    if (std::holds_alternative<Polytope>(B)) throw InputError("k-support needs an SO(n-1)-invariant body");
    ZonalMeasure z = zonal_surface_measure(B, k);
    double s = 0.0;
    for (const auto& a : z.atoms) s += a.mass * zonal_kernel(k, alpha, a.beta);
    return 0.5 * s;
}

double A_k(int k) {
    if (k < 2) throw InputError("A_k is defined for k >= 2");
    return 2.0 * P_tail<double>(k, 0.0);
}

double A_k_quadrature(int k) {
    if (k < 2) throw InputError("A_k is defined for k >= 2");
    return quad::gl([k](double p) { return std::pow(std::cos(p), k - 2); }, -kPi / 2, kPi / 2, 64);
}

double double_cone_hk(int k, double eps, double alpha) {
    if (k < 1) throw InputError("k must be positive");
    const double a = std::abs(alpha);
    const double eta = stretch_eta(eps);
    if (k == 1) return std::max(eta * std::abs(std::sin(a)), std::abs(std::cos(a)));
    if (a >= cone_seam(eps) || eta * std::tan(a) >= 1.0) return cone_h_plus(k, eta, a);
    return cone_h_minus(k, eta, a);
}

}  // namespace lorval
