// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lorval/bodies.hpp"
#include "lorval/experiments.hpp"
#include "lorval/grassmann.hpp"
#include "lorval/mero.hpp"
#include "lorval/minkowski.hpp"
#include "lorval/valuations.hpp"
#include "lorval/zonal.hpp"

using namespace lorval;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

Vec gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = N(rng);
    return v;
}

double uniform(double a, double b, std::mt19937_64& rng) { return std::uniform_real_distribution<double>(a, b)(rng); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Polytope random_polytope(std::mt19937_64& rng, int m = 12) {
    Polytope P;
    for (int i = 0; i < m; ++i) P.vertices.push_back(gaussian(3, rng));
    return P;
}

// random rotation of the space coordinates, fixing the time axis
Mat space_rotation(int n, std::mt19937_64& rng) {
    Mat A(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) A.col(i) = gaussian(n - 1, rng);
    Eigen::HouseholderQR<Mat> qr(A);
    Mat R = Mat::Identity(n, n);
    R.topLeftCorner(n - 1, n - 1) = qr.householderQ();
    return R;
}

Outcome c1_area() {
    std::mt19937_64 rng(101);
    double worst = 0;
    int done = 0;
    while (done < 1000) {
        int n = 2 + static_cast<int>(rng() % 5), k = 1 + static_cast<int>(rng() % n);
        std::vector<Vec> b;
        for (int i = 0; i < k; ++i) b.push_back(gaussian(n, rng));
        if (classify_subspace(b) == SubspaceOrbit::Degenerate) continue;
        LorentzFrame f = q_orthonormalize(b);
        Mat V = f.basis();
        double gram = (V.transpose() * V).determinant();
        worst = std::max(worst, rel(lorentz_area_sq(f, last_sign(f)), gram));
        ++done;
    }
    return {worst <= 1e-10, fmt("1000 frames, worst relative error %.2e", worst)};
}

Outcome c2_degeneration() {
    std::mt19937_64 rng(102);
    double worst = 0;
    for (int p = 0; p < 50; ++p) {
        int n = 3 + static_cast<int>(rng() % 4), k = 2 + static_cast<int>(rng() % (n - 2));
        Mat R = space_rotation(n, rng);
        const double t = 1e-4, sgn = p % 2 ? 1.0 : -1.0, beta = kPi / 4 + sgn * t;
        std::vector<Vec> b;
        Vec v = Vec::Zero(n);
        v(0) = std::cos(beta);
        v(n - 1) = std::sin(beta);
        b.push_back(R * v);
        for (int i = 1; i < k; ++i) b.push_back(R * Vec::Unit(n, i));
        // scramble the basis
        std::vector<Vec> c;
        for (int i = 0; i < k; ++i) {
            Vec s = Vec::Zero(n);
            for (int j = 0; j < k; ++j) s += (i == j ? 2.0 : 0.0) * b[j] + uniform(-0.5, 0.5, rng) * b[j];
            c.push_back(s);
        }
        const double A = 1.0 / std::sin(2 * t);
        worst = std::max(worst, std::abs(klain_weight(c).weight * std::sqrt(A) - 1.0));
        worst = std::max(worst, std::abs(projection_weight(c) * std::sqrt(A) - 1.0));
    }
    return {worst <= 1e-6, fmt("50 paths at distance 1e-4, worst |w A^1/2 - 1| = %.2e", worst)};
}

Outcome c3_invariance() {
    std::mt19937_64 rng(103);
    const InvariantValuation vals[2] = {{ValuationKind::TimeLike, 3}, {ValuationKind::SpaceLike, 3}};
    double hom = 0, boost_err = 0, cut = 0;
    bool even = true;
    for (int t = 0; t < 20; ++t) {
        Polytope P = random_polytope(rng);
        for (const auto& v : vals) {
            double f = evaluate(v, P);
            for (double s : {0.5, 2.0, 3.0}) hom = std::max(hom, rel(evaluate(v, P.scaled(s)), s * s * f));
            even = even && evaluate(v, P.scaled(-1.0)) == f;
            for (int b = 0; b < 50; ++b) {
                Mat g = lorval::boost(uniform(-1.5, 1.5, rng), static_cast<int>(rng() % 2), 3);
                boost_err = std::max(boost_err, rel(evaluate(v, P.transformed(g)), f));
            }
            Vec u = gaussian(3, rng).normalized();
            CutResult c = cut_polytope(P, u, 0.1 * uniform(-1, 1, rng));
            double lhs = evaluate(v, c.lower) + evaluate(v, c.upper) - evaluate_flat(v.kind, c.section, u);
            cut = std::max(cut, std::abs(lhs - f) / std::max(1.0, f));
        }
    }
    bool ok = hom <= 1e-10 && even && boost_err <= 1e-8 && cut <= 1e-9;
    char buf[256];
    std::snprintf(buf, sizeof buf, "homogeneity %.1e, evenness %s, boosts %.1e, cut additivity %.1e", hom,
                  even ? "exact" : "inexact", boost_err, cut);
    return {ok, buf};
}

Outcome c4_cone_area() {
    std::mt19937_64 rng(104);
    double worst = 0;
    for (Sheet s : {Sheet::HPlus, Sheet::HMinus})
        for (int t = 0; t < 10; ++t) {
            ConeAreaResult r = cone_area_identity(random_patch(s, 3 + t % 4, rng));
            worst = std::max(worst, rel(r.lhs, r.rhs));
        }
    return {worst <= 1e-6, fmt("20 geodesic polygons, worst relative gap %.2e", worst)};
}

Outcome c5_cosine() {
    ZonalMeasure atoms{{{kPi / 4, 1.0}, {-kPi / 4, 1.0}}, {}};
    double t1 = 0;
    const double r0 = cosine_transform_at(1, atoms, 0.0);
    for (double a = -1.5; a <= 1.5; a += 0.01)
        t1 = std::max(t1, std::abs(cosine_transform_at(1, atoms, a) - r0 * std::max(std::abs(std::sin(a)), std::abs(std::cos(a)))));
    double tk = 0;
    for (int k = 2; k <= 5; ++k) {
        double c = cosine_transform_at(k, atoms, 0.2) / double_cone_hk(k, 0.0, 0.2);
        for (double a = 0.0; a < kPi / 2; a += 0.03) tk = std::max(tk, rel(cosine_transform_at(k, atoms, a), c * double_cone_hk(k, 0.0, a)));
    }
    std::vector<ZonalFunction> fs{
        [](double) { return 1.0; },
        [](double b) { return std::exp(-2.0 * std::sin(b) * std::sin(b)); },
        [](double b) { return std::cos(b) * std::cos(b); },
        [](double b) { return 1.0 / (2.0 + std::cos(2 * b)); },
        [](double b) { return std::pow(std::sin(b), 4) + 0.3 * std::sin(b) * std::sin(b); }};
    double box = 0;
    for (int k = 1; k <= 4; ++k)
        for (const auto& f : fs) box = std::max(box, box_identity_residual(k, f));
    return {t1 <= 1e-10 && tk <= 1e-8 && box <= 1e-4,
            fmt("T_1 atoms %.1e, T_k vs double cone %.1e, box identity residual %.1e", t1, tk, box)};
}

Outcome c6_mero() {
    std::mt19937_64 rng(106);
    boost::math::quadrature::gauss_kronrod<double, 61> gk;
    double quad_err = 0;
    for (int t = 0; t < 20; ++t) {
        int k = static_cast<int>(rng() % 7);
        double l = uniform(0.05, 5.0, rng);
        double q = gk.integrate([&](double x) { return std::pow(x, k) * std::pow(std::sin(x), l); }, 0.0, 1.0, 15, 1e-14);
        quad_err = std::max(quad_err, std::abs(moment_I(k, l).reported().real() - q));
    }
    double at0 = 0;
    for (int k = 0; k <= 6; ++k) at0 = std::max(at0, std::abs(moment_I(k, 0.0).reported().real() - 1.0 / (k + 1)));
    double d = 1e-7;
    double res = std::abs(d * moment_I(0, -1.0 + d).reported().real() - 1.0);
    CircleFunction phi;
    phi.f = [](const Jet& a) { return exp(0.4 * cos(a)) + 0.3 * sin(3.0 * a) - 0.2 * cos(2.0 * a + 0.5); };
    double cov = 0;
    for (int t = 0; t < 20; ++t) {
        double th = uniform(-0.5, 0.5, rng), lam = uniform(-3.9, 2.0, rng);
        for (Parity p : {Parity::S, Parity::T, Parity::ConeSym, Parity::ConeAntisym})
            cov = std::max(cov, covariance_residual(p, phi, th, lam));
    }
    bool ok = quad_err <= 1e-10 && at0 <= 1e-14 && res <= 1e-6 && cov <= 1e-7;
    char buf[256];
    std::snprintf(buf, sizeof buf, "I_k vs quadrature %.1e, I_k(0) %.1e, residue at -1 %.1e, covariance %.1e", quad_err, at0,
                  res, cov);
    return {ok, buf};
}

std::vector<SweepRecord> run_sweep(int n, Parity p, bool plus = true, bool minus = true) {
    SweepConfig c;
    c.n = n;
    c.parity = p;
    c.plus = plus;
    c.minus = minus;
    return sweep(c);
}

LineFit fit_side(const std::vector<SweepRecord>& r, SweepSide s, double lo, double hi) {
    std::vector<double> e, v;
    for (const auto& x : r)
        if (x.side == s && std::abs(x.eps) >= lo * (1 - 1e-9) && std::abs(x.eps) <= hi * (1 + 1e-9)) {
            e.push_back(x.eps);
            v.push_back(x.value);
        }
    return fit_log(e, v);
}

Outcome c7_divergence() {
    std::string det;
    bool ok = true;
    // (a)
    auto r3 = run_sweep(3, Parity::S, true, false);
    LineFit all = fit_side(r3, SweepSide::Plus, 1e-5, 1e-1);
    LineFit d1 = fit_side(r3, SweepSide::Plus, 1e-4, 1e-3), d2 = fit_side(r3, SweepSide::Plus, 1e-5, 1e-4);
    bool a = all.r2 >= 0.99 && std::abs(d2.slope - d1.slope) <= 0.1 * std::abs(d1.slope);
    ok = ok && a;
    det += fmt("(a) slope %.3f r2 %.4f, last decades %.3f/", all.slope, all.r2, d1.slope) + fmt("%.3f ", d2.slope) + (a ? "ok; " : "fail; ");
    // (b)
    bool b = true;
    for (auto [n, p] : {std::pair{5, Parity::ConeAntisym}, std::pair{7, Parity::ConeSym}}) {
        auto r = run_sweep(n, p);
        for (SweepSide s : {SweepSide::Plus, SweepSide::Minus}) {
            LineFit f = fit_side(r, s, 1e-5, 1e-1);
            double c = std::abs(f.slope);
            bool grows = f.r2 >= 0.99 && c > 5 * f.slope_stderr && c > 0;
            b = b && grows;
            det += fmt("(b) n=%.0f ", n) + side_name(s) + fmt(" c=%.3f r2=%.4f; ", c, f.r2);
        }
    }
    ok = ok && b;
    // (c)
    bool cc = true;
    for (auto [n, p] : {std::pair{3, Parity::ConeAntisym}, std::pair{5, Parity::ConeSym}, std::pair{7, Parity::ConeAntisym}}) {
        DivergenceVerdict v = fit_divergence(run_sweep(n, p));
        bool m = v.mode == DivergenceMode::OneSidedMismatch && v.plus_stable && v.minus_stable && std::abs(v.gap) > 10 * v.tol;
        cc = cc && m;
        det += fmt("(c) n=%.0f limits %.6f/%.6f ", n, v.limit_plus, v.limit_minus) + mode_name(v.mode) + "; ";
    }
    ok = ok && cc;
    // (d)
    bool dd = true;
    for (int n : {4, 6}) {
        DivergenceVerdict s = fit_divergence(run_sweep(n, Parity::S));
        auto rt = run_sweep(n, Parity::T);
        DivergenceVerdict t = fit_divergence(rt);
        double J = -std::numeric_limits<double>::infinity();
        for (double e : {-1e-2, -1e-3, -1e-4, -1e-5}) J = std::max(J, obstruction_statistic(e));  // closest to 0
        bool m = s.mode == DivergenceMode::LogDivergent && t.mode != DivergenceMode::LogDivergent && std::abs(J) >= 1.0;
        dd = dd && m;
        det += fmt("(d) n=%.0f S ", n) + mode_name(s.mode) + ", T " + mode_name(t.mode) + fmt(" gap %.4f, max J %.3f; ", t.gap, J);
    }
    ok = ok && dd;
    return {ok, det};
}

Outcome c8_positive_control() {
    double worst = 0;
    std::string det;
    for (int n : {3, 4, 5})
        for (ValuationKind kind : {ValuationKind::TimeLike, ValuationKind::SpaceLike}) {
            double ref = evaluate({kind, n}, double_cone(n));
            for (double s : {1.0, -1.0}) {
                std::vector<double> e, v;
                for (double x : eps_magnitudes(1e-6, 1e-3, 10)) {
                    e.push_back(s * x);
                    v.push_back(positive_control_value(n, kind, s * x));
                }
                double lim = extrapolate_sqrt(e, v, 5);
                worst = std::max(worst, std::abs(lim - ref) / std::max(1.0, std::abs(ref)));
            }
        }
    return {worst <= 1e-6, fmt("extrapolated limits vs double cone, worst relative error %.2e", worst)};
}

Outcome c9_jet_subtraction() {
    std::mt19937_64 rng(109);
    double worst = 1e300;
    std::string det;
    for (int t = 0; t < 10; ++t) {
        double a = uniform(-1, 1, rng), b = uniform(0.5, 3, rng), c = uniform(-1, 1, rng), d = uniform(0.5, 2, rng);
        int m = 1 + static_cast<int>(rng() % 5);
        JetFn w = [a, b](const Jet& x) { return exp(a * x) * cos(b * x) + 0.5; };
        JetFn h = [c, d](const Jet& x) { return sin(d * x + c) + x * x; };
        double slope = jet_subtract_order(w, h, m, 1e-3, 1e-1, 20);
        worst = std::min(worst, slope - (m + 0.9));
        det += fmt("m=%.0f:%.2f ", m, slope);
    }
    return {worst >= 0, "remainder orders " + det};
}

}  // namespace

int main() {
    std::vector<std::pair<const char*, std::function<Outcome()>>> cs{
        {"1 Lorentz area identity", c1_area},          {"2 degeneration law", c2_degeneration},
        {"3 invariance suite", c3_invariance},         {"4 cone-area identity", c4_cone_area},
        {"5 cosine transform", c5_cosine},             {"6 meromorphic engine", c6_mero},
        {"7 divergence program", c7_divergence},       {"8 positive control", c8_positive_control},
        {"9 jet subtraction order", c9_jet_subtraction}};
    int failed = 0;
    for (auto& [name, f] : cs) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %s: %s (%.1fs) %s\n", name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(cs.size()) - failed, cs.size());
    return failed == 0 ? 0 : 1;
}
