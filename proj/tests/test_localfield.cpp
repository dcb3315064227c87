#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rtf/localfield.hpp"

using namespace rtf;

namespace {

PadicElem random_elt(const QuadExt& E, std::mt19937& rng, bool base, bool ext_ram) {
    long e = (long)(rng() % 7) - 3;
    Int a = (long)(rng() % 10000);
    Int b = base ? 0 : (long)(rng() % 10000);
    return PadicElem::make(E, base, e, a, b);
}

}  // namespace

TEST_CASE("base field ring and valuation") {
    LocalFieldDesc F{5, 1, 6};
    QuadExt E(F, ExtKind::Unramified);
    PadicElem x = E.from_rational(Rational(50, 3));
    CHECK(x.valuation() == 2);
    PadicElem y = E.from_rational(Rational(3, 25));
    CHECK(y.valuation() == -2);
    CHECK((x * y).valuation() == 0);
    CHECK((x * y - E.from_rational(Rational(2))).valuation_at_least(6));  // 50/3 * 3/25 = 2
    PadicElem inv = x.inverse();
    CHECK((x * inv - E.from_int(1)).is_exact_zero() == false);
    CHECK((x * inv).valuation() == 0);
    CHECK((x * inv - E.from_int(1)).valuation_at_least(5));
}

TEST_CASE("cancellation is fail-loud") {
    LocalFieldDesc F{3, 1, 4};
    QuadExt E(F, ExtKind::Unramified);
    PadicElem x = E.from_int(7);
    PadicElem d = x - E.from_int(7);
    CHECK(d.is_exact_zero() == false);  // truncation cannot certify exact zero
    CHECK_THROWS_AS(d.valuation(), PrecisionExhausted);
    CHECK(d.valuation_at_least(4));
    CHECK_THROWS_AS(d.valuation_at_least(5), PrecisionExhausted);
    // partial cancellation keeps a certified leading digit
    PadicElem e = E.from_int(7 + 27) - E.from_int(7);
    CHECK(e.valuation() == 3);
}

TEST_CASE("unramified extension arithmetic") {
    LocalFieldDesc F{5, 1, 6};
    QuadExt E(F, ExtKind::Unramified);
    PadicElem t = E.tau();
    // tau satisfies its minimal polynomial exactly at working precision
    PadicElem rel = t * t - E.lift(E.from_int(E.T())) * t + E.lift(E.from_int(E.N0()));
    CHECK(rel.valuation_at_least(6));
    std::mt19937 rng(11);
    for (int i = 0; i < 40; i++) {
        PadicElem x = random_elt(E, rng, false, false);
        PadicElem y = random_elt(E, rng, false, false);
        long vx = x.valuation(), vy = y.valuation();
        // N(xy) = N(x)N(y), Tr is additive, conj is an involution
        CHECK(((x * y).norm() - x.norm() * y.norm()).valuation_at_least(2 * (vx + vy) + 3));
        CHECK(((x + y).trace() - x.trace() - y.trace()).valuation_at_least(std::min(vx, vy) + 3));
        CHECK((x.conj().conj() - x).valuation_at_least(vx + 3));
        // N(x) = x * conj(x)
        PadicElem n = x * x.conj();
        CHECK((n - E.lift(x.norm())).valuation_at_least(2 * vx + 3));
        CHECK((x * x.inverse() - E.one_E()).valuation_at_least(3));
    }
}

TEST_CASE("ramified extension arithmetic") {
    LocalFieldDesc F{3, 1, 6};
    QuadExt E(F, ExtKind::Ramified);
    PadicElem w = E.pi_E();
    CHECK((w * w - E.lift(E.from_int(3))).valuation_at_least(12));
    CHECK(w.norm().valuation() == 1);
    // N(pi_E) = -p
    CHECK((w.norm() + E.from_int(3)).valuation_at_least(5));
    CHECK(w.trace().is_exact_zero() == false);
    CHECK(w.trace().valuation_at_least(5));  // Tr(pi_E) = 0 within precision
    std::mt19937 rng(13);
    for (int i = 0; i < 40; i++) {
        PadicElem x = random_elt(E, rng, false, true);
        PadicElem y = random_elt(E, rng, false, true);
        long vx = x.valuation(), vy = y.valuation();
        // v_p(N(x)) equals the pi_E valuation of x in the ramified case
        CHECK(((x * y).norm() - x.norm() * y.norm()).valuation_at_least(vx + vy + 2));
        CHECK((x.conj().conj() - x).valuation_at_least(vx + 3));
        PadicElem n = x * x.conj();
        CHECK((n - E.lift(x.norm())).valuation_at_least(2 * vx + 3));
    }
}

TEST_CASE("valuation certification window") {
    LocalFieldDesc F{3, 1, 4};
    QuadExt E(F, ExtKind::Unramified);
    // elements indistinguishable below precision
    PadicElem a = E.from_int(1 + 81);
    PadicElem b = E.from_int(1);
    PadicElem d = a - b;
    CHECK_THROWS_AS(d.valuation(), PrecisionExhausted);
    // 1 + 27 differs from 1 at the last certified digit
    CHECK((E.from_int(1 + 27) - b).valuation() == 3);
}

TEST_CASE("teichmuller lifts") {
    LocalFieldDesc F{7, 1, 5};
    QuadExt E(F, ExtKind::Unramified);
    for (long r = 1; r < 7; r++) {
        PadicElem t = E.from_int(r).teichmuller();
        PadicElem acc = t;
        for (int i = 1; i < 6; i++) acc = acc * t;
        CHECK((acc - E.from_int(1)).valuation_at_least(5));  // t^(q-1) = 1
        CHECK(t.residue()[0] == r);
    }
    // extension: lift of the residue generator has order q^2 - 1
    PadicElem g = E.teich_of_residue(E.kE().generator(), false);
    PadicElem acc = g;
    for (int i = 1; i < 48; i++) acc = acc * g;
    CHECK((acc - E.one_E()).valuation_at_least(5));
    PadicElem part = g;
    for (int i = 1; i < 24; i++) part = part * g;
    CHECK((part - E.one_E()).valuation_at_least(5) == false);
}

TEST_CASE("norm solving") {
    std::mt19937 rng(17);
    for (long p : {3L, 5L}) {
        LocalFieldDesc F{p, 1, 6};
        QuadExt U(F, ExtKind::Unramified);
        QuadExt R(F, ExtKind::Ramified);
        for (int i = 0; i < 25; i++) {
            long u = 1 + (long)(rng() % (p * p * p));
            if (u % p == 0) continue;
            PadicElem c = U.from_rational(Rational(u * p * p));
            auto x = U.solve_norm(c);
            REQUIRE(x.has_value());
            CHECK((x->norm() - c).valuation_at_least(c.valuation() + 4));
            // odd valuation is never an unramified norm
            CHECK(!U.solve_norm(U.from_int(p * u)).has_value());
            auto y = R.solve_norm(R.from_int(u));
            if (y) {
                CHECK((y->norm() - R.from_int(u)).valuation_at_least(4));
            } else {
                CHECK(kronecker(u % p, p) == -1);
            }
        }
    }
}
