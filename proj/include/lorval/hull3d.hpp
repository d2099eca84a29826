#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace lorval {

using Vec3 = Eigen::Vector3d;

struct HullTriangle {
    std::array<int, 3> v;  // counter-clockwise seen from outside
    Vec3 normal;           // outward unit normal
    double offset;         // normal . x on the plane
    double area;
};

struct Facet {
    Vec3 normal;
    double offset;
    double area;
    std::vector<int> triangles;
};

struct Hull3 {
    std::vector<Vec3> points;
    std::vector<HullTriangle> triangles;
    std::vector<Facet> facets;  // coplanar triangles merged

    std::vector<std::array<int, 2>> edges() const;
    std::vector<int> vertex_indices() const;
};

// Throws InputError when the points do not span R^3.
Hull3 convex_hull3(const std::vector<Vec3>& pts);

}  // namespace lorval
