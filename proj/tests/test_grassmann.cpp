#include <gtest/gtest.h>

#include <numbers>

#include "lorval/errors.hpp"
#include "lorval/grassmann.hpp"
#include "test_util.hpp"

using namespace lorval;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<Vec> orthogonal_complement(const Vec& w) {
    const int n = static_cast<int>(w.size());
    Eigen::HouseholderQR<Mat> qr(w);
    Mat Qm = qr.householderQ();
    std::vector<Vec> out;
    for (int j = 1; j < n; ++j) out.push_back(Qm.col(j));
    return out;
}

double elevation(const Vec& w) { return std::asin(std::min(1.0, std::abs(w(w.size() - 1)) / w.norm())); }

}  // namespace

TEST(LightConeAngle, Examples) {
    LorentzSpace L(3);
    EXPECT_NEAR(light_cone_angle(L.e(0)), kPi / 4, 1e-15);
    EXPECT_NEAR(light_cone_angle(L.e(2)), kPi / 4, 1e-15);
    Vec w = (L.e(0) + L.e(2)) / std::sqrt(2.0);
    EXPECT_NEAR(light_cone_angle(w), 0.0, 1e-12);
    EXPECT_THROW(light_cone_angle(Vec(2 * L.e(0))), InputError);
}

TEST(KlainWeight, Examples) {
    LorentzSpace L(4);
    for (int k = 1; k <= 3; ++k) {
        std::vector<Vec> b;
        for (int j = 0; j < k; ++j) b.push_back(L.e(j));
        EXPECT_NEAR(klain_weight(b).weight, 1.0, 1e-14);
    }
    KlainWeight z = klain_weight({Vec(L.e(0) + L.e(3))});
    EXPECT_EQ(z.orbit, SubspaceOrbit::Degenerate);
    EXPECT_EQ(z.weight, 0.0);
}

TEST(KlainWeight, HyperplaneIdentity) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        int n = 3 + t % 4;
        Vec w = testutil::unit(n, rng);
        KlainWeight kw = klain_weight(orthogonal_complement(w));
        double expect = std::sqrt(std::abs(std::cos(2 * elevation(w))));
        EXPECT_NEAR(kw.weight, expect, 1e-8);
        EXPECT_NEAR(kw.weight, std::sqrt(std::abs(std::sin(2 * light_cone_angle(w)))), 1e-8);
        EXPECT_GT(kw.weight, 0.0);
        EXPECT_LE(kw.weight, 1.0 + 1e-12);
    }
}

TEST(KlainWeight, BasisIndependentAndProjectionForm) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        int n = 3 + t % 4, k = 1 + static_cast<int>(rng() % (n - 1));
        auto b = testutil::random_basis(n, k, rng);
        if (classify_subspace(b) == SubspaceOrbit::Degenerate) continue;
        Mat R = Mat::Random(k, k) + 3 * Mat::Identity(k, k);
        auto b2 = columns(from_columns(b) * R);
        double w1 = klain_weight(b).weight, w2 = klain_weight(b2).weight;
        EXPECT_NEAR(w1, w2, 1e-9);
        EXPECT_NEAR(w1, projection_weight(b), 1e-8);
    }
}

TEST(SectionCovariance, Examples) {
    LorentzSpace L(4);
    std::vector<Vec> b{L.e(0), L.e(1)};
    EXPECT_NEAR(section_covariance_check(b, 0.0, 2), 0.0, 1e-15);
    for (double th : {-1.5, 0.3, 2.0}) EXPECT_LE(section_covariance_check(b, th, 2), 1e-8);
}

TEST(SectionCovariance, Random) {
    std::mt19937_64 rng(9);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        int n = 3 + t % 4, k = 1 + static_cast<int>(rng() % (n - 1));
        auto b = testutil::random_basis(n, k, rng);
        if (classify_subspace(b) == SubspaceOrbit::Degenerate) continue;
        double th = testutil::uniform(-2, 2, rng);
        int axis = static_cast<int>(rng() % (n - 1));
        worst = std::max(worst, section_covariance_check(b, th, axis));
        // single-orbit sections never mix orbits
        worst = std::max(worst, section_covariance_check(b, th, axis, SubspaceOrbit::SpaceLike));
        worst = std::max(worst, section_covariance_check(b, th, axis, SubspaceOrbit::MixedSignature));
    }
    EXPECT_LE(worst, 1e-7);
}

TEST(Degeneration, WeightVanishesLikeSqrtSin) {
    LorentzSpace L(4);
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
        for (double sgn : {1.0, -1.0}) {
            double beta = kPi / 4 + sgn * t;
            Vec v = std::cos(beta) * L.e(0) + std::sin(beta) * L.e(3);
            KlainWeight kw = klain_weight({L.e(1), v});
            EXPECT_NEAR(kw.weight, std::sqrt(std::sin(2 * t)), 1e-9);
        }
    }
}
