#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "qwalk/qwalk.hpp"

using namespace qwalk;
using Catch::Matchers::WithinAbs;

namespace {
// C(n, k) in doubles; exact for the small n used here.
double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
} // namespace

TEST_CASE("step-law validation", "[classical]") {
    CHECK_NOTHROW(validate(ClassicalStepLaw::normal()));
    CHECK_NOTHROW(validate(ClassicalStepLaw::lazy_uniform()));
    CHECK_NOTHROW(validate(ClassicalStepLaw{0.2, 0.3, 0.5}));
    CHECK_THROWS_AS(validate(ClassicalStepLaw{0.5, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ClassicalStepLaw{-0.1, 0.6, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ClassicalStepLaw{0.7, 0.2, 0.0999}), std::invalid_argument);
}

TEST_CASE("classical distributions by direct enumeration", "[classical]") {
    SECTION("one lazy step is uniform over three sites") {
        const auto d = classical_distribution(ClassicalStepLaw::lazy_uniform(), 1);
        REQUIRE(d.size() == 3);
        for (int i = 0; i < 3; ++i) CHECK_THAT(d.probs[i], WithinAbs(1.0 / 3.0, 1e-15));
    }
    SECTION("two balanced steps give the 1/4, 1/2, 1/4 profile") {
        const auto d = classical_distribution(ClassicalStepLaw::normal(), 2);
        REQUIRE(d.size() == 5);
        CHECK_THAT(d.probs[0], WithinAbs(0.25, 1e-15));
        CHECK(d.probs[1] == 0.0);
        CHECK_THAT(d.probs[2], WithinAbs(0.50, 1e-15));
        CHECK(d.probs[3] == 0.0);
        CHECK_THAT(d.probs[4], WithinAbs(0.25, 1e-15));
    }
    SECTION("binomial cross-check at t = 12") {
        const auto d = classical_distribution(ClassicalStepLaw::normal(), 12);
        for (int x = -12; x <= 12; ++x) {
            const double want =
                (x + 12) % 2 == 0 ? binom(12, (x + 12) / 2) / 4096.0 : 0.0;
            CAPTURE(x);
            CHECK_THAT(d.probs[x + 12], WithinAbs(want, 1e-14));
        }
    }
    SECTION("parity zeros are exact") {
        const auto d = classical_distribution(ClassicalStepLaw::normal(), 101);
        for (int x = -101; x <= 101; ++x)
            if ((x + 101) % 2 != 0) CHECK(d.probs[x + 101] == 0.0);
    }
    SECTION("probabilities sum to one") {
        for (int t : {0, 1, 7, 64, 300}) {
            CHECK(std::abs(classical_distribution(ClassicalStepLaw::lazy_uniform(), t).sum() -
                           1.0) < 1e-12);
            CHECK(std::abs(classical_distribution(ClassicalStepLaw{0.1, 0.2, 0.7}, t).sum() -
                           1.0) < 1e-12);
        }
    }
    SECTION("negative t rejected") {
        CHECK_THROWS_AS(classical_distribution(ClassicalStepLaw::normal(), -1),
                        std::invalid_argument);
    }
}

TEST_CASE("exact rational evolution matches the float pipeline", "[classical]") {
    SECTION("integer-weight laws") {
        const auto exact = classical_distribution_exact(1, 1, 1, 200);
        const auto fl = classical_distribution(ClassicalStepLaw::lazy_uniform(), 200);
        REQUIRE(exact.size() == fl.size());
        CHECK((exact.probs - fl.probs).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_THAT(exact.sum(), WithinAbs(1.0, 1e-14));

        const auto exact2 = classical_distribution_exact(1, 0, 1, 200);
        const auto fl2 = classical_distribution(ClassicalStepLaw::normal(), 200);
        CHECK((exact2.probs - fl2.probs).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("asymmetric weights") {
        const auto exact = classical_distribution_exact(1, 2, 3, 50);
        const auto fl =
            classical_distribution(ClassicalStepLaw{1.0 / 6, 2.0 / 6, 3.0 / 6}, 50);
        CHECK((exact.probs - fl.probs).cwiseAbs().maxCoeff() < 1e-13);
    }
    SECTION("validation") {
        CHECK_THROWS_AS(classical_distribution_exact(0, 0, 0, 5), std::invalid_argument);
        CHECK_THROWS_AS(classical_distribution_exact(-1, 1, 1, 5), std::invalid_argument);
        CHECK_THROWS_AS(classical_distribution_exact(1, 1, 1, -5), std::invalid_argument);
    }
}

TEST_CASE("classical moments follow the random-walk law", "[classical]") {
    SECTION("balanced walk: <x> = 0, <x^2> = t") {
        for (int t : {100, 500}) {
            const auto d = classical_distribution(ClassicalStepLaw::normal(), t);
            CHECK(std::abs(moment(d, 1)) < 1e-10);
            CHECK_THAT(moment(d, 2), WithinAbs(static_cast<double>(t), 1e-8));
        }
    }
    SECTION("uniform three-choice walk: <x^2> = 2t/3") {
        for (int t : {99, 300}) {
            const auto d = classical_distribution(ClassicalStepLaw::lazy_uniform(), t);
            CHECK(std::abs(moment(d, 1)) < 1e-10);
            CHECK_THAT(moment(d, 2), WithinAbs(2.0 * t / 3.0, 1e-8));
        }
    }
    SECTION("drifting walk: <x> = (p_r - p_l) t") {
        const auto d = classical_distribution(ClassicalStepLaw{0.2, 0.3, 0.5}, 200);
        CHECK_THAT(moment(d, 1), WithinAbs(0.3 * 200, 1e-8));
    }
}

TEST_CASE("gaussian envelope approximation", "[classical]") {
    CHECK_THAT(gaussian_approx(0, 100),
               WithinAbs(std::sqrt(2.0 / (std::numbers::pi * 100.0)), 1e-15));
    CHECK(gaussian_approx(5, 100) == gaussian_approx(-5, 100));
    CHECK(gaussian_approx(30, 100) < gaussian_approx(0, 100));
    SECTION("tracks the even-parity binomial at large t") {
        const int t = 1000;
        const auto d = classical_distribution(ClassicalStepLaw::normal(), t);
        for (int x : {0, 10, 20, 40}) {
            const double exact = d.probs[x + t];
            const double approx = gaussian_approx(x, t);
            CAPTURE(x);
            CHECK(std::abs(approx - exact) / exact < 0.01);
        }
    }
    CHECK_THROWS_AS(gaussian_approx(0, 0), std::invalid_argument);
}

TEST_CASE("threshold crossing x* and the asymptotic occupancy rate", "[classical]") {
    SECTION("frozen value at t = 200") {
        CHECK_THAT(x_star(200), WithinAbs(35.3074, 5e-3));
        CHECK_THAT(classical_occ_rate_asymptotic(200), WithinAbs(0.0882684, 1e-6));
    }
    SECTION("x* grows while x*/t shrinks") {
        double prev = 0.0;
        for (int t : {10, 30, 100, 300, 1000, 3000}) {
            const double xs = x_star(t);
            CHECK(xs > prev);
            prev = xs;
        }
        CHECK(x_star(1000000) / 1e6 < 0.004);
    }
    SECTION("rate decreases monotonically from t = 10") {
        double prev = classical_occ_rate_asymptotic(10);
        for (int t = 11; t <= 2000; ++t) {
            const double r = classical_occ_rate_asymptotic(t);
            CHECK(r < prev);
            prev = r;
        }
    }
    SECTION("rate is small by t = 1e5") {
        CHECK(classical_occ_rate_asymptotic(100000) < 0.02);
    }
    SECTION("matches the exact rate within 15% at t = 1000") {
        const auto d = classical_distribution(ClassicalStepLaw::normal(), 1000);
        const double exact = occupancy_rate(d, 2001);
        const double asym = classical_occ_rate_asymptotic(1000);
        CHECK(std::abs(asym - exact) / exact < 0.15);
    }
    SECTION("exact rates fall with t") {
        auto rate_at = [](int t) {
            return occupancy_rate(classical_distribution(ClassicalStepLaw::normal(), t),
                                  2 * t + 1);
        };
        CHECK(rate_at(2000) < rate_at(500));
        CHECK(rate_at(500) < rate_at(100));
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(x_star(0), std::invalid_argument);
        CHECK_THROWS_AS(classical_occ_rate_asymptotic(0), std::invalid_argument);
    }
}

TEST_CASE("lazy spread occupies at least the balanced spread", "[classical]") {
    for (int t = 100; t <= 200; t += 10) {
        const double lazy = occupancy_rate(
            classical_distribution(ClassicalStepLaw::lazy_uniform(), t), 2 * t + 1);
        const double norm = occupancy_rate(
            classical_distribution(ClassicalStepLaw::normal(), t), 2 * t + 1);
        CAPTURE(t);
        CHECK(lazy >= norm);
    }
}
