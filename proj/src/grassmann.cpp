#include "lorval/grassmann.hpp"

#include <cmath>
#include <numbers>

namespace lorval {

double abs_elevation(const Vec& omega) {
    double nn = omega.norm();
    if (std::abs(nn - 1.0) > 1e-10) throw InputError("expected a unit vector");
    const auto n = omega.size();
    double horiz = omega.head(n - 1).norm();
    return std::atan2(std::abs(omega(n - 1)), horiz);
}

double light_cone_angle(const Vec& omega) {
    return std::abs(abs_elevation(omega) - std::numbers::pi / 4);
}

KlainWeight klain_weight(const std::vector<Vec>& basis) {
    SubspaceOrbit o = classify_subspace(basis);
    if (o == SubspaceOrbit::Degenerate) return {o, 0.0};
    LorentzFrame f = q_orthonormalize(basis);
    int s = o == SubspaceOrbit::SpaceLike ? 1 : -1;
    double a = lorentz_area_sq(f, s);
    return {o, 1.0 / std::sqrt(a)};
}

double projected_time_norm(const std::vector<Vec>& basis) {
    Mat B = from_columns(basis);
    Eigen::HouseholderQR<Mat> qr(B);
    Mat U = qr.householderQ() * Mat::Identity(B.rows(), B.cols());
    return U.row(B.rows() - 1).norm();
}

double projection_weight(const std::vector<Vec>& basis) {
    double p = projected_time_norm(basis);
    return std::sqrt(std::abs(2.0 * p * p - 1.0));
}

double restricted_jacobian(const Mat& g, const std::vector<Vec>& basis) {
    Mat B = from_columns(basis);
    Mat GB = g * B;
    return std::sqrt((GB.transpose() * GB).determinant() / (B.transpose() * B).determinant());
}

double section_covariance_check(const std::vector<Vec>& basis, double theta, int axis) {
    const int n = static_cast<int>(basis.front().size());
    Mat g = boost(theta, axis, n);
    std::vector<Vec> moved;
    for (const auto& v : basis) moved.push_back(g * v);
    double w0 = klain_weight(basis).weight;
    double w1 = klain_weight(moved).weight;
    return std::abs(w1 * restricted_jacobian(g, basis) - w0);
}

double section_covariance_check(const std::vector<Vec>& basis, double theta, int axis, SubspaceOrbit support) {
    const int n = static_cast<int>(basis.front().size());
    Mat g = boost(theta, axis, n);
    std::vector<Vec> moved;
    for (const auto& v : basis) moved.push_back(g * v);
    auto restricted = [&](const std::vector<Vec>& b) {
        KlainWeight kw = klain_weight(b);
        return kw.orbit == support ? kw.weight : 0.0;
    };
    return std::abs(restricted(moved) * restricted_jacobian(g, basis) - restricted(basis));
}

}  // namespace lorval
