#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lorval/errors.hpp"

namespace lorval {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Signature (n-1, 1); the time axis is the last coordinate.
struct LorentzSpace {
    int n;
    explicit LorentzSpace(int dim);
    Mat J() const;
    Vec e(int j) const;
};

double q_form(const Vec& u, const Vec& v);
inline double q_norm2(const Vec& v) { return q_form(v, v); }
inline double zeta(const Vec& v) { return v(v.size() - 1); }

struct LorentzFrame {
    std::vector<Vec> vectors;
    std::vector<double> z;

    explicit LorentzFrame(std::vector<Vec> vs);
    int k() const { return static_cast<int>(vectors.size()); }
    int n() const { return static_cast<int>(vectors.front().size()); }
    Mat basis() const;
    Mat q_gram() const;
    Mat euclid_gram() const;
};

enum class SubspaceOrbit { SpaceLike, MixedSignature, Degenerate };

const char* orbit_name(SubspaceOrbit o);

double lorentz_area_sq(const LorentzFrame& frame, int sign_last);

// hyperbolic rotation in span(e_axis, e_n)
Mat boost(double theta, int axis, int n);

Mat restricted_q_gram(const std::vector<Vec>& basis);
SubspaceOrbit classify_subspace(const std::vector<Vec>& basis);
LorentzFrame q_orthonormalize(const std::vector<Vec>& basis);

// sign of Q on the last frame vector (+1 or -1)
int last_sign(const LorentzFrame& frame, double tol = 1e-9);

std::vector<Vec> columns(const Mat& B);
Mat from_columns(const std::vector<Vec>& vs);

}  // namespace lorval
