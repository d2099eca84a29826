#include "lorval/hull3d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "lorval/errors.hpp"

namespace lorval {

namespace {

struct Face {
    int a, b, c;
    Vec3 n;
    double d;
    bool alive = true;
};

Face make_face(const std::vector<Vec3>& p, int a, int b, int c) {
    Face f{a, b, c, Vec3::Zero(), 0.0};
    Vec3 cr = (p[b] - p[a]).cross(p[c] - p[a]);
    f.n = cr.normalized();
    f.d = f.n.dot(p[a]);
    return f;
}

}  // namespace

std::vector<std::array<int, 2>> Hull3::edges() const {
    std::set<std::pair<int, int>> s;
    for (const auto& t : triangles)
        for (int i = 0; i < 3; ++i) {
            int a = t.v[i], b = t.v[(i + 1) % 3];
            s.insert({std::min(a, b), std::max(a, b)});
        }
    std::vector<std::array<int, 2>> out;
    for (auto [a, b] : s) out.push_back({a, b});
    return out;
}

std::vector<int> Hull3::vertex_indices() const {
    std::set<int> s;
    for (const auto& t : triangles) s.insert(t.v.begin(), t.v.end());
    return {s.begin(), s.end()};
}

Hull3 convex_hull3(const std::vector<Vec3>& pts) {
    const int N = static_cast<int>(pts.size());
    if (N < 4) throw InputError("convex hull needs at least 4 points");
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    if (scale == 0.0) throw InputError("degenerate point set");
    const double eps = 1e-11 * scale;

    // initial tetrahedron from extreme points
    int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < N; ++i)
        if (pts[i].x() < pts[i0].x()) i0 = i;
    double best = 0.0;
    for (int i = 0; i < N; ++i) {
        double d = (pts[i] - pts[i0]).norm();
        if (d > best) best = d, i1 = i;
    }
    if (best <= eps) throw InputError("degenerate point set");
    best = 0.0;
    for (int i = 0; i < N; ++i) {
        double d = (pts[i1] - pts[i0]).cross(pts[i] - pts[i0]).norm();
        if (d > best) best = d, i2 = i;
    }
    if (best <= eps * scale) throw InputError("points are collinear");
    Vec3 nrm = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
    best = 0.0;
    for (int i = 0; i < N; ++i) {
        double d = std::abs(nrm.dot(pts[i] - pts[i0]));
        if (d > best) best = d, i3 = i;
    }
    if (best <= eps) throw InputError("points are coplanar; the hull is not full-dimensional");

    std::vector<Face> faces;
    auto add = [&](int a, int b, int c, const Vec3& inside) {
        Face f = make_face(pts, a, b, c);
        if (f.n.dot(inside) - f.d > 0) {
            f = make_face(pts, a, c, b);
        }
        faces.push_back(f);
    };
    Vec3 centroid = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    add(i0, i1, i2, centroid);
    add(i0, i1, i3, centroid);
    add(i0, i2, i3, centroid);
    add(i1, i2, i3, centroid);

    for (int p = 0; p < N; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (faces[f].alive && faces[f].n.dot(pts[p]) - faces[f].d > eps) visible.push_back(f);
        if (visible.empty()) continue;
        std::set<std::pair<int, int>> directed;
        for (int f : visible) {
            const Face& F = faces[f];
            directed.insert({F.a, F.b});
            directed.insert({F.b, F.c});
            directed.insert({F.c, F.a});
        }
        for (int f : visible) faces[f].alive = false;
        for (auto [a, b] : directed) {
            if (directed.count({b, a})) continue;
            faces.push_back(make_face(pts, a, b, p));
        }
    }

    Hull3 h;
    h.points = pts;
    for (const auto& f : faces) {
        if (!f.alive) continue;
        HullTriangle t;
        t.v = {f.a, f.b, f.c};
        Vec3 cr = (pts[f.b] - pts[f.a]).cross(pts[f.c] - pts[f.a]);
        t.area = 0.5 * cr.norm();
        if (t.area <= 0.0) continue;
        t.normal = cr.normalized();
        t.offset = t.normal.dot(pts[f.a]);
        h.triangles.push_back(t);
    }
    for (int ti = 0; ti < static_cast<int>(h.triangles.size()); ++ti) {
        const auto& t = h.triangles[ti];
        bool merged = false;
        for (auto& F : h.facets) {
            if (F.normal.dot(t.normal) > 1.0 - 1e-10 && std::abs(F.offset - t.offset) < 1e-9 * scale) {
                F.area += t.area;
                F.triangles.push_back(ti);
                merged = true;
                break;
            }
        }
        if (!merged) h.facets.push_back({t.normal, t.offset, t.area, {ti}});
    }
    // area-weighted normals for merged facets
    for (auto& F : h.facets) {
        Vec3 s = Vec3::Zero();
        for (int ti : F.triangles) s += h.triangles[ti].area * h.triangles[ti].normal;
        F.normal = s.normalized();
    }
    return h;
}

}  // namespace lorval
