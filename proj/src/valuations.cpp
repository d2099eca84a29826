#include "lorval/valuations.hpp"

#include <algorithm>
#include <cmath>

#include "lorval/errors.hpp"
#include "lorval/grassmann.hpp"
#include "lorval/quadrature.hpp"

namespace lorval {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 to3(const Vec& v) { return {v(0), v(1), v(2)}; }

Vec from3(const Vec3& v) {
    Vec r(3);
    r << v.x(), v.y(), v.z();
    return r;
}

bool in_region(ValuationKind kind, double alpha) {
    return kind == ValuationKind::TimeLike ? alpha <= kPi / 4 : alpha >= kPi / 4;
}

}  // namespace

const char* kind_name(ValuationKind k) { return k == ValuationKind::TimeLike ? "T" : "S"; }

ValuationKind parse_kind(const std::string& s) {
    if (s == "T") return ValuationKind::TimeLike;
    if (s == "S") return ValuationKind::SpaceLike;
    throw InputError("valuation kind must be T or S");
}

double valuation_weight(ValuationKind kind, const Vec& normal) {
    double alpha = abs_elevation(normal);
    if (!in_region(kind, alpha)) return 0.0;
    return std::sqrt(std::abs(std::sin(2.0 * light_cone_angle(normal))));
}

namespace {

double polytope_sum(ValuationKind kind, const Polytope& P) {
    double s = 0.0;
    for (const auto& a : surface_area_measure(P)) s += a.mass * valuation_weight(kind, a.normal);
    return s;
}

}  // namespace

double evaluate(const InvariantValuation& v, const ConvexBody& K) {
    if (ambient_dim(K) != v.n) throw InputError("body dimension does not match the valuation");
    if (const auto* P = std::get_if<Polytope>(&K)) {
        if (v.n > 3) throw InputError("polytopes are supported for n <= 3 only");
        // averaging over K and -K makes evenness exact rather than up to rounding
        return 0.5 * (polytope_sum(v.kind, *P) + polytope_sum(v.kind, P->scaled(-1.0)));
    }
    if (v.n > 8) throw InputError("zonal bodies are supported for n <= 8");
    ZonalMeasure z = zonal_surface_measure(K, v.n - 1);
    double s = 0.0;
    for (const auto& a : z.atoms) {
        double alpha = std::abs(a.beta);
        if (in_region(v.kind, alpha)) s += a.mass * std::sqrt(std::abs(std::cos(2.0 * alpha)));
    }
    return s;
}

double evaluate_flat(ValuationKind kind, const std::vector<Vec>& pts, const Vec& normal) {
    if (pts.size() < 3) return 0.0;
    Vec3 u = to3(normal).normalized();
    Vec3 a = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    Vec3 e1 = (a - a.dot(u) * u).normalized(), e2 = u.cross(e1);
    std::vector<Vec2> plane;
    for (const auto& p : pts) plane.emplace_back(to3(p).dot(e1), to3(p).dot(e2));
    auto poly = convex_hull2(plane);
    double area = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        area += 0.5 * (p.x() * q.y() - p.y() * q.x());
    }
    return 2.0 * std::abs(area) * valuation_weight(kind, from3(u));
}

double support_of_hyperboloid(Sheet sheet, const Vec& omega) {
    double alpha = abs_elevation(omega);
    bool inside = sheet == Sheet::HPlus ? alpha <= kPi / 4 : alpha >= kPi / 4;
    return inside ? std::sqrt(std::abs(std::cos(2.0 * alpha))) : 0.0;
}

double mixed_volume_form(const InvariantValuation& v, const ConvexBody& K) {
    if (ambient_dim(K) != v.n) throw InputError("body dimension does not match the valuation");
    Sheet sheet = v.kind == ValuationKind::TimeLike ? Sheet::HPlus : Sheet::HMinus;
    if (const auto* P = std::get_if<Polytope>(&K)) {
        if (v.n > 3) throw InputError("polytopes are supported for n <= 3 only");
        double s = 0.0;
        for (const auto& a : surface_area_measure(*P)) s += a.mass * support_of_hyperboloid(sheet, a.normal);
        return s;
    }
    ZonalMeasure z = zonal_surface_measure(K, v.n - 1);
    double s = 0.0;
    for (const auto& a : z.atoms) {
        Vec w = Vec::Zero(v.n);
        w(0) = std::cos(a.beta);
        w(v.n - 1) = std::sin(a.beta);
        s += a.mass * support_of_hyperboloid(sheet, w);
    }
    return s;
}

namespace {

// arc of the sheet between x and y inside span(x, y), by radial projection of the chord
struct Arc {
    Vec3 x, y;
    double sign;  // Q value on the sheet
    Vec3 point(double t) const {
        Vec3 c = (1 - t) * x + t * y;
        double q = c.x() * c.x() + c.y() * c.y() - c.z() * c.z();
        return c / std::sqrt(sign * q);
    }
    Vec3 velocity(double t) const {
        Vec3 c = (1 - t) * x + t * y, d = y - x;
        double q = sign * (c.x() * c.x() + c.y() * c.y() - c.z() * c.z());
        double dq = sign * 2.0 * (c.x() * d.x() + c.y() * d.y() - c.z() * d.z());
        return d / std::sqrt(q) - 0.5 * c * dq / (q * std::sqrt(q));
    }
};

double q3(const Vec3& u, const Vec3& v) { return u.x() * v.x() + u.y() * v.y() - u.z() * v.z(); }

}  // namespace

ConeAreaResult cone_area_identity(const HyperboloidPatch& patch) {
    const double sign = patch.sheet == Sheet::HPlus ? 1.0 : -1.0;
    const ValuationKind kind = patch.sheet == Sheet::HPlus ? ValuationKind::SpaceLike : ValuationKind::TimeLike;
    ConeAreaResult r{0.0, 0.0, 0.0};

    if (patch.closed_plane_normal) {
        if (patch.sheet != Sheet::HPlus) throw InputError("closed geodesics are only used on H+");
        Vec3 nu = to3(*patch.closed_plane_normal).normalized();
        Vec nv = from3(nu);
        if (q_norm2(nv) >= 0) throw PreconditionError("closed geodesic needs a space-like plane");
        Vec3 a = std::abs(nu.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
        Vec3 e1 = (a - a.dot(nu) * nu).normalized(), e2 = nu.cross(e1);
        auto x = [&](double th) {
            Vec3 c = std::cos(th) * e1 + std::sin(th) * e2;
            return Vec3(c / std::sqrt(q3(c, c)));
        };
        auto xd = [&](double th) {
            Vec3 c = std::cos(th) * e1 + std::sin(th) * e2, d = -std::sin(th) * e1 + std::cos(th) * e2;
            double q = q3(c, c), dq = 2.0 * q3(c, d);
            return Vec3(d / std::sqrt(q) - 0.5 * c * dq / (q * std::sqrt(q)));
        };
        r.lhs = quad::kronrod([&](double t) { return std::sqrt(std::max(0.0, q3(xd(t), xd(t)))); }, 0, 2 * kPi, 1e-13);
        r.lhs_closed = 2 * kPi;
        double area = quad::kronrod([&](double t) { return 0.5 * x(t).cross(xd(t)).norm(); }, 0, 2 * kPi, 1e-13);
        r.rhs = 2.0 * area * valuation_weight(kind, nv);
        return r;
    }

    const auto& V = patch.vertices;
    if (V.size() < 3) return r;
    for (const auto& v : V) {
        if (v.size() != 3) throw InputError("patches live in R^3");
        if (std::abs(q_norm2(v) - sign) > 1e-9) throw InputError("patch vertex is not on the sheet");
        if (patch.sheet == Sheet::HMinus && v(2) <= 0) throw InputError("use the upper sheet of H-");
    }
    for (size_t i = 0; i < V.size(); ++i) {
        Arc arc{to3(V[i]), to3(V[(i + 1) % V.size()]), sign};
        double qxy = q3(arc.x, arc.y);
        if (patch.sheet == Sheet::HPlus) {
            if (std::abs(qxy) >= 1.0) throw PreconditionError("H+ patch has a non-space-like boundary piece");
            r.lhs_closed += std::acos(qxy);
        } else {
            r.lhs_closed += std::acosh(std::max(1.0, -qxy));
        }
        r.lhs += quad::kronrod(
            [&](double t) {
                Vec3 d = arc.velocity(t);
                return std::sqrt(std::max(0.0, q3(d, d)));
            },
            0.0, 1.0, 1e-13);
        double area = quad::kronrod([&](double t) { return 0.5 * arc.point(t).cross(arc.velocity(t)).norm(); }, 0.0,
                                    1.0, 1e-13);
        Vec3 nu = arc.x.cross(arc.y).normalized();
        r.rhs += 2.0 * area * valuation_weight(kind, from3(nu));
    }
    return r;
}

HyperboloidPatch random_patch(Sheet sheet, int m, std::mt19937_64& rng) {
    if (m < 3) throw InputError("a polygon needs at least 3 vertices");
    std::uniform_real_distribution<double> U(0.0, 1.0);
    HyperboloidPatch p{sheet, {}, std::nullopt};
    if (sheet == Sheet::HMinus) {
        while (true) {
            std::vector<Vec2> pts;
            for (int i = 0; i < m; ++i) {
                double r = 0.85 * std::sqrt(U(rng)), t = 2 * kPi * U(rng);
                pts.emplace_back(r * std::cos(t), r * std::sin(t));
            }
            // Klein-model geodesics are straight, so a planar hull is a geodesic polygon
            auto hull = convex_hull2(pts);
            if (hull.size() < 3) continue;
            for (const auto& q : hull) {
                double s = 1.0 / std::sqrt(1.0 - q.squaredNorm());
                Vec v(3);
                v << q.x() * s, q.y() * s, s;
                p.vertices.push_back(v);
            }
            return p;
        }
    }
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<double> ts;
        for (int i = 0; i < m; ++i) ts.push_back(2 * kPi * U(rng));
        std::sort(ts.begin(), ts.end());
        std::vector<Vec> vs;
        for (double t : ts) {
            double s = 0.6 * (U(rng) - 0.5);
            Vec v(3);
            v << std::cosh(s) * std::cos(t), std::cosh(s) * std::sin(t), std::sinh(s);
            vs.push_back(v);
        }
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) ok = std::abs(q_form(vs[i], vs[(i + 1) % m])) < 1.0 - 1e-6;
        if (ok) {
            p.vertices = vs;
            return p;
        }
    }
    throw NumericalError("could not sample a space-like H+ polygon");
}

CutResult cut_polytope(const Polytope& P, const Vec& u, double c) {
    if (P.dim() != 3) throw InputError("cuts are implemented in R^3");
    Hull3 h = polytope_hull(P);
    CutResult out;
    const double tol = 1e-12;
    for (int i : h.vertex_indices()) {
        Vec v = P.vertices[i];
        double s = u.dot(v) - c;
        if (s <= tol) out.lower.vertices.push_back(v);
        if (s >= -tol) out.upper.vertices.push_back(v);
        if (std::abs(s) <= tol) out.section.push_back(v);
    }
    for (auto [a, b] : h.edges()) {
        const Vec& va = P.vertices[a];
        const Vec& vb = P.vertices[b];
        double sa = u.dot(va) - c, sb = u.dot(vb) - c;
        if ((sa < -tol && sb > tol) || (sa > tol && sb < -tol)) {
            Vec z = va + (sa / (sa - sb)) * (vb - va);
            out.lower.vertices.push_back(z);
            out.upper.vertices.push_back(z);
            out.section.push_back(z);
        }
    }
    if (out.lower.vertices.size() < 4 || out.upper.vertices.size() < 4 || out.section.size() < 3)
        throw InputError("cut plane does not split the polytope");
    return out;
}

}  // namespace lorval
