#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "qwalk/qwalk.hpp"

using namespace qwalk;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kTol = 1e-12;

double max_entry_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}
} // namespace

TEST_CASE("dft coin entries", "[coin]") {
    const CoinOperator c2 = dft_coin(2);
    REQUIRE(c2.dim == 2);
    REQUIRE(c2.label == "dft2");
    const double s2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd h(2, 2);
    h << s2, s2, s2, -s2;
    CHECK(max_entry_diff(c2.entries, h) < kTol);

    const CoinOperator c3 = dft_coin(3);
    REQUIRE(c3.dim == 3);
    REQUIRE(c3.label == "dft3");
    const double s3 = 1.0 / std::sqrt(3.0);
    // (j,k) entry is s3 * exp(2 pi i j k / 3); spot-check every cell.
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const double phi = 2.0 * std::numbers::pi * j * k / 3.0;
            const std::complex<double> want(s3 * std::cos(phi), s3 * std::sin(phi));
            CAPTURE(j, k);
            CHECK(std::abs(c3.entries(j, k) - want) < kTol);
        }
    // The (1,1) cell is the primitive third root of unity over sqrt(3).
    CHECK_THAT(c3.entries(1, 1).real(), WithinAbs(-0.5 * s3, kTol));
    CHECK_THAT(c3.entries(1, 1).imag(), WithinAbs(0.5, kTol));

    CHECK_THROWS_AS(dft_coin(1), std::invalid_argument);
    CHECK_THROWS_AS(dft_coin(4), std::invalid_argument);
}

TEST_CASE("g coin structure and special points", "[coin]") {
    SECTION("grover point") {
        const CoinOperator g = grover_coin();
        REQUIRE(g.label == "grover");
        Eigen::MatrixXcd want(3, 3);
        const double a = -1.0 / 3.0, b = 2.0 / 3.0;
        want << a, b, b, b, a, b, b, b, a;
        CHECK(max_entry_diff(g.entries, want) < kTol);
        CHECK(max_entry_diff(g.entries, g_coin(std::sqrt(1.0 / 3.0)).entries) < kTol);
    }
    SECTION("center entry is 2 rho^2 - 1") {
        CHECK_THAT(g_coin(0.1).entries(1, 1).real(), WithinAbs(-0.98, kTol));
        CHECK_THAT(g_coin(0.5).entries(1, 1).real(), WithinAbs(-0.5, kTol));
    }
    SECTION("symmetric pattern") {
        const CoinOperator g = g_coin(0.37);
        CHECK(std::abs(g.entries(0, 1) - g.entries(1, 0)) < kTol);
        CHECK(std::abs(g.entries(0, 1) - g.entries(1, 2)) < kTol);
        CHECK(std::abs(g.entries(0, 0) - g.entries(2, 2)) < kTol);
        CHECK(std::abs(g.entries(0, 2) - g.entries(2, 0)) < kTol);
    }
    SECTION("unitary across the admissible range") {
        for (double rho : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999, 1.0, -0.3, -0.9, -1.0}) {
            std::stringstream sink;
            auto* old = std::cerr.rdbuf(sink.rdbuf());
            const CoinOperator g = g_coin(rho);
            std::cerr.rdbuf(old);
            CAPTURE(rho);
            CHECK(unitarity_deviation(g.entries) < kTol);
        }
    }
    SECTION("values outside (0,1) warn but construct") {
        std::stringstream sink;
        auto* old = std::cerr.rdbuf(sink.rdbuf());
        const CoinOperator g = g_coin(-0.5);
        std::cerr.rdbuf(old);
        CHECK(g.dim == 3);
        CHECK(sink.str().find("warning") != std::string::npos);
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(g_coin(0.0), std::invalid_argument);
        CHECK_THROWS_AS(g_coin(1.5), std::invalid_argument);
        CHECK_THROWS_AS(g_coin(-1.0001), std::invalid_argument);
    }
}

TEST_CASE("hadamard coin equals dft2 with its own label", "[coin]") {
    const CoinOperator h = hadamard_coin();
    REQUIRE(h.label == "hadamard");
    CHECK(max_entry_diff(h.entries, dft_coin(2).entries) == 0.0);
}

TEST_CASE("general 2x2 unitary constructor", "[coin]") {
    const double s2 = 1.0 / std::sqrt(2.0);
    SECTION("accepts hadamard and pauli x") {
        const CoinOperator h = general_u2(s2, s2, s2, -s2);
        CHECK(max_entry_diff(h.entries, hadamard_coin().entries) < kTol);
        CHECK(h.label == "u2");
        const CoinOperator x = general_u2(0.0, 1.0, 1.0, 0.0);
        CHECK(std::abs(x.entries(0, 1) - 1.0) < kTol);
        CHECK(std::abs(x.entries(0, 0)) < kTol);
        CHECK(unitarity_deviation(x.entries) < kTol);
    }
    SECTION("accepts random unitaries, rejects perturbations") {
        std::mt19937 gen(20240311u);
        for (int it = 0; it < 20; ++it) {
            const Eigen::MatrixXcd u = qtest::random_unitary(2, gen);
            CHECK_NOTHROW(general_u2(u(0, 0), u(0, 1), u(1, 0), u(1, 1)));
            const Eigen::MatrixXcd bad = u * 1.001;
            CHECK_THROWS_AS(general_u2(bad(0, 0), bad(0, 1), bad(1, 0), bad(1, 1)),
                            std::invalid_argument);
        }
    }
    SECTION("error message carries the deviation") {
        try {
            general_u2(1.0, 0.1, 0.1, 1.0);
            FAIL("expected a throw");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("deviation") != std::string::npos);
        }
    }
}

TEST_CASE("identity coin", "[coin]") {
    CHECK(max_entry_diff(identity_coin(2).entries, Eigen::MatrixXcd::Identity(2, 2)) == 0.0);
    CHECK(max_entry_diff(identity_coin(3).entries, Eigen::MatrixXcd::Identity(3, 3)) == 0.0);
    CHECK(identity_coin(3).label == "identity");
    CHECK_THROWS_AS(identity_coin(4), std::invalid_argument);
}

TEST_CASE("coin string grammar", "[coin]") {
    CHECK(parse_coin("dft2").label == "dft2");
    CHECK(parse_coin("dft3").label == "dft3");
    CHECK(parse_coin("grover").label == "grover");
    CHECK(parse_coin("hadamard").label == "hadamard");
    CHECK(parse_coin("identity2").dim == 2);
    CHECK(parse_coin("identity3").dim == 3);

    const CoinOperator g = parse_coin("g:0.5");
    CHECK(g.label == "g(0.5)");
    CHECK(max_entry_diff(g.entries, g_coin(0.5).entries) == 0.0);

    const CoinOperator x = parse_coin("u2:0,1,1,0");
    CHECK(std::abs(x.entries(1, 0) - 1.0) < kTol);

    // Complex literals inside u2 entries.
    const CoinOperator p = parse_coin("u2:0.70710678118654752,0.70710678118654752j,"
                                      "0.70710678118654752j,0.70710678118654752");
    CHECK(unitarity_deviation(p.entries) < 1e-10);
    CHECK(std::abs(p.entries(0, 1).imag() - 1.0 / std::sqrt(2.0)) < 1e-10);

    CHECK_THROWS_AS(parse_coin("fourier"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coin("g:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coin("g:abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coin("u2:1,0,0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coin("u2:1,0,0,1,0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coin("u2:1,0,0,2"), std::invalid_argument);
}

TEST_CASE("unitarity deviation measures defects", "[coin]") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
    CHECK(unitarity_deviation(m) == 0.0);
    m(0, 0) = 1.1;
    CHECK(unitarity_deviation(m) > 0.2);
}
