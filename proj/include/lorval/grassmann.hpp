#pragma once

#include <vector>

#include "lorval/minkowski.hpp"

namespace lorval {

struct KlainWeight {
    SubspaceOrbit orbit;
    double weight;
};

// |elevation| of a unit vector above the space hyperplane, in [0, pi/2]
double abs_elevation(const Vec& omega);

// angle to the light cone, eps = |alpha - pi/4|
double light_cone_angle(const Vec& omega);

KlainWeight klain_weight(const std::vector<Vec>& basis);

// The same weight from the projection of e_n onto the subspace:
// |sin 2eps| = |2 |P e_n|^2 - 1|.
double projection_weight(const std::vector<Vec>& basis);

// |P e_n| for the Euclidean projection P onto span(basis)
double projected_time_norm(const std::vector<Vec>& basis);

// Euclidean k-Jacobian of g restricted to span(basis)
double restricted_jacobian(const Mat& g, const std::vector<Vec>& basis);

double section_covariance_check(const std::vector<Vec>& basis, double theta, int axis);

// Variant restricted to one orbit (the other orbit carries weight zero).
double section_covariance_check(const std::vector<Vec>& basis, double theta, int axis, SubspaceOrbit support);

}  // namespace lorval
