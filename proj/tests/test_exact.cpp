#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rtf/residue.hpp"

using namespace rtf;

TEST_CASE("squarefree extraction") {
    CHECK(ExactScalar::sqrt_of(4) == ExactScalar(2));
    CHECK(ExactScalar::sqrt_of(18).str() == "3*sqrt(2)");
    CHECK(ExactScalar::sqrt_of(1) == ExactScalar(1));
    CHECK(ExactScalar::sqrt_of(36) == ExactScalar(6));
    // sqrt(2)*sqrt(6) = 2 sqrt(3)
    CHECK(ExactScalar::sqrt_of(2) * ExactScalar::sqrt_of(6) ==
          ExactScalar(2) * ExactScalar::sqrt_of(3));
}

TEST_CASE("ring laws on random values") {
    std::mt19937 rng(7);
    auto rand_scalar = [&] {
        ExactScalar x;
        for (int t = 0; t < 3; t++) {
            long rad[] = {1, 2, 3, 5};
            Monomial m;
            m.rad = rad[rng() % 4];
            m.pi_pow = (int)(rng() % 3) - 1;
            if (rng() % 2) m.syms["vU"] = (int)(rng() % 3) - 1;
            x.add_term(m, Rational((long)(rng() % 7) - 3, 1 + (long)(rng() % 4)));
        }
        return x;
    };
    for (int i = 0; i < 50; i++) {
        ExactScalar a = rand_scalar(), b = rand_scalar(), c = rand_scalar();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        std::map<std::string, double> env{{"vU", 0.37}};
        CHECK((a * b).eval(env) == doctest::Approx((a.eval(env) * b.eval(env))).epsilon(1e-12));
    }
}

TEST_CASE("monomial division") {
    ExactScalar x = ExactScalar(3) * ExactScalar::sqrt_of(5) * ExactScalar::pi(2) +
                    ExactScalar::symbol("vU", 3);
    ExactScalar d = ExactScalar(2) * ExactScalar::sqrt_of(5) * ExactScalar::symbol("vU");
    ExactScalar q = x / d;
    CHECK(q * d == x);
    ExactScalar bad = ExactScalar(1) + ExactScalar::pi();
    CHECK_THROWS_AS(x / bad, std::domain_error);
    CHECK_THROWS_AS(x / ExactScalar(), std::domain_error);
}

TEST_CASE("canonical rendering is deterministic and sorted") {
    ExactScalar x = ExactScalar::pi() + ExactScalar(Rational(-1, 2)) +
                    ExactScalar(2) * ExactScalar::sqrt_of(3) * ExactScalar::symbol("vU", -1);
    ExactScalar y = ExactScalar(2) * ExactScalar::sqrt_of(3) * ExactScalar::symbol("vU", -1) +
                    ExactScalar(Rational(-1, 2)) + ExactScalar::pi();
    CHECK(x.str() == y.str());
    CHECK(ExactScalar().str() == "0");
}

TEST_CASE("cyclotomic relations are recognized") {
    CycScalar s;
    for (int j = 0; j < 3; j++) s += CycScalar::root(RootOfUnity(j, 3));
    CHECK(s.is_zero());

    // full character sum over Z/8
    CycScalar t;
    for (int j = 0; j < 8; j++) s += CycScalar::root(RootOfUnity(3 * j, 8));
    CHECK(s.is_zero());

    CycScalar half = CycScalar::root(RootOfUnity(1, 2));
    CHECK(half == CycScalar(ExactScalar(-1)));

    // mixed orders: e(1/3)*e(1/2) = e(5/6)
    CHECK(CycScalar::root(RootOfUnity(1, 3)) * half == CycScalar::root(RootOfUnity(5, 6)));
}

TEST_CASE("gauss sum magnitude is q") {
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        Fq k(p);
        long chi = (p - 1) / 2;  // quadratic character
        CycScalar g = gauss_sum(k, chi);
        CycScalar norm = g * g.conj();
        ExactScalar val;
        REQUIRE(norm.is_exact_real(&val));
        CHECK(val == ExactScalar(p));
    }
    // nontrivial characters of GF(9)
    Fq k9(3, 2);
    for (long chi = 1; chi < 8; chi++) {
        CycScalar g = gauss_sum(k9, chi);
        ExactScalar val;
        REQUIRE((g * g.conj()).is_exact_real(&val));
        CHECK(val == ExactScalar(9));
    }
}

TEST_CASE("cyclotomic polynomial sanity") {
    CHECK(cyclotomic_poly(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic_poly(12) == std::vector<Int>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_poly(15).size() == 9);
}
