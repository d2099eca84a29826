#include "lorval/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lorval {

LorentzSpace::LorentzSpace(int dim) : n(dim) {
    if (dim < 2) throw InputError("LorentzSpace needs n >= 2");
}

Mat LorentzSpace::J() const {
    Mat j = Mat::Identity(n, n);
    j(n - 1, n - 1) = -1.0;
    return j;
}

Vec LorentzSpace::e(int j) const {
    if (j < 0 || j >= n) throw InputError("basis index out of range");
    Vec v = Vec::Zero(n);
    v(j) = 1.0;
    return v;
}

double q_form(const Vec& u, const Vec& v) {
    if (u.size() != v.size() || u.size() < 2) throw InputError("q_form: dimension mismatch");
    const Eigen::Index n = u.size();
    return u.head(n - 1).dot(v.head(n - 1)) - u(n - 1) * v(n - 1);
}

std::vector<Vec> columns(const Mat& B) {
    std::vector<Vec> out;
    for (Eigen::Index j = 0; j < B.cols(); ++j) out.emplace_back(B.col(j));
    return out;
}

Mat from_columns(const std::vector<Vec>& vs) {
    if (vs.empty()) throw InputError("empty basis");
    const Eigen::Index n = vs.front().size();
    Mat B(n, static_cast<Eigen::Index>(vs.size()));
    for (size_t j = 0; j < vs.size(); ++j) {
        if (vs[j].size() != n) throw InputError("basis vectors of different length");
        B.col(static_cast<Eigen::Index>(j)) = vs[j];
    }
    return B;
}

LorentzFrame::LorentzFrame(std::vector<Vec> vs) : vectors(std::move(vs)) {
    if (vectors.empty()) throw InputError("LorentzFrame: no vectors");
    const auto n = vectors.front().size();
    if (static_cast<Eigen::Index>(vectors.size()) > n) throw InputError("LorentzFrame: more vectors than dimension");
    Mat B = from_columns(vectors);
    Mat G = B.transpose() * B;
    double scale = G.diagonal().prod();
    double det = G.determinant();
    if (!(det > 1e-14 * std::max(scale, 1e-300))) throw InputError("LorentzFrame: vectors are dependent");
    for (const auto& v : vectors) z.push_back(zeta(v));
}

Mat LorentzFrame::basis() const { return from_columns(vectors); }

Mat LorentzFrame::q_gram() const {
    const int kk = k();
    Mat G(kk, kk);
    for (int i = 0; i < kk; ++i)
        for (int j = 0; j < kk; ++j) G(i, j) = q_form(vectors[i], vectors[j]);
    return G;
}

Mat LorentzFrame::euclid_gram() const {
    Mat B = basis();
    return B.transpose() * B;
}

const char* orbit_name(SubspaceOrbit o) {
    switch (o) {
        case SubspaceOrbit::SpaceLike: return "M+";
        case SubspaceOrbit::MixedSignature: return "M-";
        case SubspaceOrbit::Degenerate: return "M0";
    }
    return "?";
}

int last_sign(const LorentzFrame& frame, double tol) {
    Mat G = frame.q_gram();
    const int kk = frame.k();
    Mat target = Mat::Identity(kk, kk);
    int s = G(kk - 1, kk - 1) < 0 ? -1 : 1;
    target(kk - 1, kk - 1) = s;
    double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
    if ((G - target).cwiseAbs().maxCoeff() > tol * scale)
        throw PreconditionError("frame is not Q-orthonormal");
    return s;
}

double lorentz_area_sq(const LorentzFrame& frame, int sign_last) {
    if (sign_last != 1 && sign_last != -1) throw InputError("sign_last must be +1 or -1");
    if (last_sign(frame) != sign_last) throw PreconditionError("frame sign does not match sign_last");
    const int kk = frame.k();
    double head = 0.0;
    for (int j = 0; j < kk - 1; ++j) head += frame.z[j] * frame.z[j];
    const double zk2 = frame.z[kk - 1] * frame.z[kk - 1];
    double a = sign_last > 0 ? 1.0 + 2.0 * (head + zk2) : 2.0 * (zk2 - head) - 1.0;
    if (a <= 0.0) {
        if (a > -1e-9) return 0.0;
        throw NumericalError("lorentz_area_sq: nonpositive area");
    }
    return a;
}

Mat boost(double theta, int axis, int n) {
    if (axis < 0 || axis >= n - 1) throw InputError("boost axis must be a space index");
    Mat g = Mat::Identity(n, n);
    const double c = std::cosh(theta), s = std::sinh(theta);
    g(axis, axis) = c;
    g(axis, n - 1) = s;
    g(n - 1, axis) = s;
    g(n - 1, n - 1) = c;
    return g;
}

namespace {

// Euclidean-orthonormal basis of span(basis); throws on dependence
Mat orthonormal_span(const std::vector<Vec>& basis) {
    Mat B = from_columns(basis);
    if (B.cols() > B.rows()) throw InputError("too many basis vectors");
    Eigen::HouseholderQR<Mat> qr(B);
    Mat R = qr.matrixQR().topRows(B.cols()).triangularView<Eigen::Upper>();
    double rmax = 0.0;
    for (Eigen::Index i = 0; i < B.cols(); ++i) rmax = std::max(rmax, std::abs(R(i, i)));
    for (Eigen::Index i = 0; i < B.cols(); ++i)
        if (std::abs(R(i, i)) <= 1e-12 * rmax || rmax == 0.0) throw InputError("basis is linearly dependent");
    Mat Q = qr.householderQ() * Mat::Identity(B.rows(), B.cols());
    return Q;
}

Mat q_gram_of(const Mat& B) {
    Mat JB = B;
    JB.row(B.rows() - 1) *= -1.0;
    return B.transpose() * JB;
}

}  // namespace

Mat restricted_q_gram(const std::vector<Vec>& basis) { return q_gram_of(from_columns(basis)); }

SubspaceOrbit classify_subspace(const std::vector<Vec>& basis) {
    Mat U = orthonormal_span(basis);
    Eigen::SelfAdjointEigenSolver<Mat> es(q_gram_of(U));
    const Vec& ev = es.eigenvalues();
    // U is Euclidean-orthonormal, so the spectrum lies in [-1, 1]
    if (ev.cwiseAbs().minCoeff() < 1e-10) return SubspaceOrbit::Degenerate;
    int neg = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) neg += ev(i) < 0;
    // Q has a single negative direction, so neg is 0 or 1 here
    return neg == 0 ? SubspaceOrbit::SpaceLike : SubspaceOrbit::MixedSignature;
}

LorentzFrame q_orthonormalize(const std::vector<Vec>& basis) {
    if (classify_subspace(basis) == SubspaceOrbit::Degenerate)
        throw DegenerateSubspace("q_orthonormalize: Q restricted to the subspace is degenerate");
    Mat U = orthonormal_span(basis);
    Eigen::SelfAdjointEigenSolver<Mat> es(q_gram_of(U));
    // most Q-positive directions first, the time-like one (if any) last
    std::vector<int> order(static_cast<size_t>(U.cols()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });
    std::vector<Vec> out;
    for (int idx : order) {
        Vec w = U * es.eigenvectors().col(idx);
        out.push_back(w / std::sqrt(std::abs(es.eigenvalues()(idx))));
    }
    // one Q-Gram-Schmidt sweep to clean residual non-orthogonality
    for (size_t i = 0; i < out.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            double qj = q_norm2(out[j]);
            out[i] -= (q_form(out[i], out[j]) / qj) * out[j];
        }
        out[i] /= std::sqrt(std::abs(q_norm2(out[i])));
    }
    return LorentzFrame(std::move(out));
}

}  // namespace lorval
