#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <numbers>
#include <sstream>

#include "lorval/errors.hpp"
#include "lorval/experiments.hpp"
#include "test_util.hpp"

using namespace lorval;
constexpr double kPi = std::numbers::pi;

namespace {

LaurentValue direct(Parity p, const ZonalData& H, int n) {
    const double lam = crofton_lambda(n);
    return combine_parity(p, zonal_space_half(H, lam), zonal_time_half(H, lam));
}

std::vector<SweepRecord> synthetic(const std::function<double(double)>& f, std::mt19937_64& rng, double noise) {
    std::vector<SweepRecord> r;
    std::normal_distribution<double> g(0.0, noise);
    for (double s : {1.0, -1.0})
        for (double e : eps_magnitudes(1e-5, 1e-1, 16))
            r.push_back({3, 1, Parity::S, s > 0 ? SweepSide::Plus : SweepSide::Minus, s * e, f(s * e) + g(rng)});
    return r;
}

}  // namespace

TEST(Experiments, ArgumentChecks) {
    EXPECT_THROW(evaluate_on_stretched_cone(3, Parity::S, 0.0), InputError);
    EXPECT_THROW(evaluate_on_stretched_cone(3, Parity::S, 0.5), InputError);
    EXPECT_THROW(evaluate_on_stretched_cone(3, Parity::S, 1e-8), InputError);
    EXPECT_THROW(evaluate_on_stretched_cone(2, Parity::S, 0.01), InputError);
    SweepConfig c;
    c.points = 4;
    EXPECT_THROW(sweep(c), InputError);
}

TEST(Experiments, TwoRoutesAgreeOnSmoothData) {
    std::vector<JetFn> fs{[](const Jet& a) { return sin(a) * cos(a); },
                          [](const Jet& a) { return exp(0.3 * a) * sin(a); }};
    for (const auto& f : fs)
        for (int n = 3; n <= 8; ++n)
            for (Parity p : {Parity::S, Parity::T, Parity::ConeSym, Parity::ConeAntisym}) {
                if (n % 2 == 0 && (p == Parity::ConeSym || p == Parity::ConeAntisym)) continue;
                ZonalData H{f, 0.5, {}};
                double a = direct(p, H, n).reported().real(), b = n_route_assembly(p, H, n).reported().real();
                EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, std::abs(a))) << n << " " << parity_name(p);
            }
}

TEST(Experiments, TwoRoutesAgreeOnConeData) {
    for (int n : {3, 4, 5})
        for (double e : {0.05, -0.05, 0.01, -0.01})
            for (Parity p : {Parity::S, Parity::T}) {
                double a = evaluate_on_stretched_cone(n, p, e);
                double b = n_route_assembly(p, cone_total(n, e), n).reported().real();
                EXPECT_NEAR(a, b, 1e-8 * std::max(1.0, std::abs(a))) << n << " " << e << " " << parity_name(p);
            }
}

TEST(Experiments, SeamPartVanishesAboveSeam) {
    ZonalData W = cone_seam_part(3, 0.05);
    EXPECT_EQ(W.f(Jet(kPi / 4 + 0.01)).value(), 0.0);
    EXPECT_EQ(W.f(Jet(cone_seam(0.05) + 1e-3)).value(), 0.0);
    ZonalData T = cone_total(3, 0.05), P = cone_plus_branch(3, 0.05);
    EXPECT_NEAR(T.f(Jet(kPi / 4)).value(), P.f(Jet(kPi / 4)).value(), 1e-15);
}

TEST(Fit, LogDivergentSynthetic) {
    std::mt19937_64 rng(5);
    auto recs = synthetic([](double e) { return 3.0 * std::log(1.0 / std::abs(e)) + 0.7; }, rng, 1e-3);
    DivergenceVerdict v = fit_divergence(recs);
    EXPECT_EQ(v.mode, DivergenceMode::LogDivergent);
    EXPECT_NEAR(v.fit.slope, 3.0, 0.01);
    EXPECT_GE(v.fit.r2, 0.99);
}

TEST(Fit, BoundedSynthetic) {
    std::mt19937_64 rng(6);
    DivergenceVerdict v = fit_divergence(synthetic([](double e) { return 1.0 + e; }, rng, 0.0));
    EXPECT_NE(v.mode, DivergenceMode::LogDivergent);
    EXPECT_NEAR(v.limit_plus, 1.0, 1e-8);
    EXPECT_NEAR(v.limit_minus, 1.0, 1e-8);
    EXPECT_NEAR(v.gap, 0.0, 1e-8);
    EXPECT_EQ(v.mode, DivergenceMode::BoundedNonzeroObstruction);

    DivergenceVerdict w = fit_divergence(synthetic([](double e) { return e > 0 ? 2.0 + e : -1.0 + e * e; }, rng, 0.0));
    EXPECT_EQ(w.mode, DivergenceMode::OneSidedMismatch);
    EXPECT_NEAR(w.gap, 3.0, 1e-8);
}

TEST(Fit, RichardsonRecoversLimit) {
    auto e = eps_magnitudes(1e-5, 1e-1, 16);
    std::vector<double> v;
    for (double x : e) v.push_back(2.5 + 0.3 * x - 4.0 * x * x);
    Extrapolation r = richardson(e, v, {1, 2});
    EXPECT_TRUE(r.stable);
    EXPECT_NEAR(r.limit, 2.5, 1e-10);
}

TEST(Fit, RejectsBadInput) {
    std::vector<SweepRecord> few;
    for (int i = 0; i < 5; ++i) few.push_back({3, 1, Parity::S, SweepSide::Plus, 0.1 / (i + 1), 1.0});
    EXPECT_THROW(fit_divergence(few), InputError);
    std::mt19937_64 rng(7);
    auto recs = synthetic([](double) { return 1.0; }, rng, 0.0);
    recs[3].value = std::nan("");
    EXPECT_THROW(fit_divergence(recs), NumericalError);
}

TEST(Sweep, CsvRoundTrip) {
    SweepConfig c;
    c.points = 8;
    c.eps_min = 1e-3;
    c.minus = false;
    auto recs = sweep(c);
    ASSERT_EQ(recs.size(), 8u);
    std::stringstream ss;
    write_sweep_csv(ss, c, recs);
    auto back = read_sweep_csv(ss);
    ASSERT_EQ(back.size(), recs.size());
    for (size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(back[i].n, 3);
        EXPECT_EQ(back[i].side, SweepSide::Plus);
        EXPECT_NEAR(back[i].eps, recs[i].eps, 1e-12 * std::abs(recs[i].eps));
        EXPECT_NEAR(back[i].value, recs[i].value, 1e-11 * std::max(1.0, std::abs(recs[i].value)));
    }
    std::stringstream bad("# meta {}\nn,k,parity,side,eps,value\n3,1,S,plus,oops,1\n");
    EXPECT_THROW(read_sweep_csv(bad), InputError);
}

TEST(Obstruction, AgainstIndependentQuadrature) {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double e : {-0.1, -0.01, -1e-3}) {
        const double m = std::abs(e), eta = std::tan(kPi / 4 - m);
        // a = pi/4 + u^2 removes the endpoint power
        auto f = [&](double u) {
            if (u < 1e-6) return -4.0 * eta * eta / std::sqrt(1 - eta * eta);
            double t = std::tan(kPi / 4 + u * u);
            double q = std::max(0.0, 1 - eta * eta * t * t);
            return 2.0 * (std::sqrt(q) - std::sqrt(1 - eta * eta)) / (u * u);
        };
        double ref = -4.0 + ts.integrate(f, 0.0, std::sqrt(m));
        double s = obstruction_statistic(e);
        EXPECT_NEAR(s, ref, 1e-9);
        EXPECT_LE(s, -4.0);
    }
    EXPECT_THROW(obstruction_statistic(0.05), InputError);
}

TEST(PositiveControl, ConvergesToDoubleCone) {
    for (int n : {3, 4})
        for (ValuationKind kind : {ValuationKind::TimeLike, ValuationKind::SpaceLike}) {
            double ref = evaluate({kind, n}, double_cone(n));
            std::vector<double> e, v;
            for (double x : eps_magnitudes(1e-6, 1e-3, 10)) {
                e.push_back(x);
                v.push_back(positive_control_value(n, kind, x));
            }
            EXPECT_NEAR(extrapolate_sqrt(e, v, 5), ref, 1e-7 * std::max(1.0, std::abs(ref)));
            EXPECT_NEAR(positive_control_value(n, kind, 0.02), evaluate({kind, n}, StretchedCone::make(n, 0.02, n - 1)),
                        1e-8 * std::max(1.0, std::abs(ref)));
        }
}

TEST(Parallel, CoversEveryIndex) {
    std::vector<int> hit(1000, 0);
    parallel_for(1000, [&](int i) { hit[i] += 1; });
    for (int h : hit) EXPECT_EQ(h, 1);
}
