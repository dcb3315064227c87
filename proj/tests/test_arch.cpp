#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "rtf/arch.hpp"

using namespace rtf;

TEST_CASE("representation matrices are unitary") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 1; k <= 6; k++) {
        SU2Rep rep(k);
        for (int trial = 0; trial < 5; trial++) {
            double th = unif(rng) * std::numbers::pi / 2;
            std::complex<double> a = std::polar(std::cos(th), unif(rng) * 6.28);
            std::complex<double> b = std::polar(std::sin(th), unif(rng) * 6.28);
            auto M = rep.matrix(a, b);
            int n = rep.dim();
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++) {
                    std::complex<double> dot = 0;
                    for (int l = 0; l < n; l++) dot += M[i][l] * std::conj(M[j][l]);
                    CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
                }
            // the diagonal coefficient agrees with the closed expansion
            for (int m = -(k - 1); m <= k - 1; m++)
                CHECK(std::abs(M[k - 1 + m][k - 1 + m] - rep.coefficient(m, a, b)) < 1e-12);
        }
        CHECK(std::abs(rep.coefficient(0, 1.0, 0.0) - 1.0) < 1e-15);  // identity
    }
}

TEST_CASE("Schur orthogonality, numeric and exact") {
    const double pi = std::numbers::pi;
    for (int k = 1; k <= 5; k++)
        for (int m = -(k - 1); m <= k - 1; m++) {
            double target = 4 * pi * pi / (2 * k - 1);
            double got = arch_spectral_numeric({k, m}, 64);
            CHECK(std::abs(got - target) < 1e-6 * target);
            CHECK(schur_exact({k, m}) == Rational(1, 2 * k - 1));
        }
    for (int k = 6; k <= 12; k++)
        for (int m : {0, 1, k - 1}) CHECK(schur_exact({k, m}) == Rational(1, 2 * k - 1));
}

TEST_CASE("beta-binomial identity") {
    for (int k = 1; k <= 12; k++)
        for (int m = -(k - 1); m <= k - 1; m++)
            CHECK(beta_binomial_product(k, m) == Rational(1));
}

TEST_CASE("closed orbital formula matches the quadrature oracle") {
    for (int k = 1; k <= 5; k++)
        for (int m = 0; m <= k - 1; m++)
            for (double xi : {-0.1, -1.0, -10.0}) {
                Rational xr(xi == -0.1 ? Rational(-1, 10) : Rational((long)xi));
                double closed = arch_orbital_closed({k, m}, xr).eval();
                double oracle = arch_orbital_numeric({k, m}, xi, 128);
                CHECK(std::abs(closed - oracle) < 1e-6 * std::max(1.0, std::abs(closed)));
                // m -> -m symmetry
                CHECK(arch_orbital_closed({k, -m}, xr) == arch_orbital_closed({k, m}, xr));
                CHECK(std::abs(arch_orbital_numeric({k, -m}, xi, 128) - oracle) <
                      1e-6 * std::max(1.0, std::abs(oracle)));
            }
}

TEST_CASE("specific closed values") {
    CHECK(arch_orbital_closed({1, 0}, Rational(-7, 2)) == ExactScalar(4));
    CHECK(arch_orbital_closed({2, 0}, Rational(-1)) == ExactScalar(0));  // 4 * (1-1) / 2
    CHECK(arch_orbital_closed({2, 1}, Rational(-1)) == ExactScalar(2));  // 4 * 1 / 2
    // alternating sum: 4 * (1 - 4/10 + 1/100) / (11/10)^2
    CHECK(arch_orbital_closed({3, 0}, Rational(-1, 10)) ==
          ExactScalar(Rational(4 * 61, 121)));
    CHECK_THROWS_AS(arch_orbital_closed({2, 0}, Rational(1, 2)), std::domain_error);
}
