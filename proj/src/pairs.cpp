#include "rtf/pairs.hpp"

#include <algorithm>
#include <sstream>

namespace rtf {

std::string AdmissiblePair::label() const {
    std::ostringstream out;
    if (level == 0) {
        out << "q" << q << ".level0.a" << a;
    } else {
        out << "q" << q << ".half." << (sign > 0 ? "plus" : "minus") << ".b" << beta;
    }
    return out.str();
}

AdmissiblePair canonical(const AdmissiblePair& p) {
    AdmissiblePair r = p;
    if (p.level == 0) {
        long n = p.q * p.q - 1;
        long a = ((p.a % n) + n) % n;
        r.a = std::min(a, (a * p.q) % n);
        r.sign = 1;
        r.beta = 0;
    } else {
        long b = ((p.beta % p.q) + p.q) % p.q;
        r.beta = std::min(b, p.q - b);
        r.a = 0;
    }
    return r;
}

std::vector<AdmissiblePair> enumerate_level0_pairs(long q) {
    long n = q * q - 1;
    std::vector<AdmissiblePair> out;
    for (long a = q - 1; a < n; a += q - 1) {
        if (a % (q + 1) == 0) continue;
        AdmissiblePair p{0, q, a};
        if (canonical(p).a == a) out.push_back(p);
    }
    return out;
}

std::vector<AdmissiblePair> enumerate_level_half_pairs(long q) {
    std::vector<AdmissiblePair> out;
    for (int sign : {+1, -1})
        for (long b = 1; b <= (q - 1) / 2; b++) out.push_back(AdmissiblePair{1, q, 0, sign, b});
    return out;
}

ToricChar theta_of(const QuadExt& E, const AdmissiblePair& p) {
    if (E.q() != p.q) throw MismatchedPlaceKind("residue size disagrees with the pair");
    if (p.level == 0) {
        if (E.kind() != ExtKind::Unramified)
            throw MismatchedPlaceKind("level-0 pairs live over unramified extensions");
        return ToricChar::unramified(E, p.a);
    }
    if (E.kind() != ExtKind::Ramified)
        throw MismatchedPlaceKind("level-1/2 pairs live over ramified extensions");
    return ToricChar::ramified(E, p.sign, 2 * p.beta);
}

bool is_admissible(const QuadExt& E, const AdmissiblePair& p) {
    ToricChar theta = theta_of(E, p);
    if (theta.is_trivial()) return false;
    int depth = p.level == 0 ? 1 : 2;
    for (const PadicElem& w : unit_coset_reps(E, depth)) {
        PadicElem z = w * w.conj().inverse();
        if (!theta.eval(z).is_one()) return true;
    }
    return false;
}

RootOfUnity LambdaChar::on_iwahori_rep(long a, long b) const {
    return psi_tilde(pair.q, pair.beta * (a + b));
}

RootOfUnity LambdaChar::theta_side(const QuadExt& E, long a, long b) const {
    long inv2 = (E.p() + 1) / 2;  // 1/2 in k_F
    PadicElem x = E.element(0, 1, ((a + b) % E.p()) * inv2);
    return theta_of(E, pair).eval(x);
}

TestFunction build_test_function(const LocalPlace& place,
                                 const std::optional<AdmissiblePair>& pair) {
    TestFunction tf;
    tf.kind = place.kind;
    switch (place.kind) {
        case PlaceKind::Sigma2:
            if (!pair || pair->level != 0)
                throw MismatchedPlaceKind("Sigma2 needs a level-0 admissible pair");
            tf.pair = canonical(*pair);
            break;
        case PlaceKind::Sigma3:
            if (!pair || pair->level != 1)
                throw MismatchedPlaceKind("Sigma3 needs a level-1/2 admissible pair");
            tf.pair = canonical(*pair);
            break;
        case PlaceKind::Arch:
            if (place.k < 1 || std::abs(place.m) >= place.k)
                throw MismatchedPlaceKind("archimedean place needs |m| < k");
            tf.k = place.k;
            tf.m = place.m;
            break;
        case PlaceKind::Sigma1:
            if (place.n_omega != 0)
                throw MismatchedPlaceKind("Omega_v is unramified at Sigma1 places");
            break;
        default:
            tf.n_omega = place.n_omega;
            break;
    }
    return tf;
}

ExactScalar local_volume(const LocalPlace& place) {
    ExactScalar vU = ExactScalar::symbol("vU");
    ExactScalar L2inv = ExactScalar::symbol("L2", -1);
    long q = place.q;
    switch (place.kind) {
        case PlaceKind::Arch:
            return ExactScalar(4) * ExactScalar::pi(2);  // vol(D_v^x / Z_v)
        case PlaceKind::Sigma1:
        case PlaceKind::Sigma2:
            // vol(R^x Z/Z) = vol(E^x U_D^1 / F^x) = L2^{-1} vU^3 / (q-1)
            return ExactScalar(Rational(1, q - 1)) * L2inv * vU * vU * vU;
        case PlaceKind::Sigma3:
            return ExactScalar(Rational(2, q * q - 1)) * L2inv * vU * vU * vU;
        default:
            return L2inv * vU * vU * vU;  // vol(GL2(o) Z/Z)
    }
}

ExactScalar local_spectral_value(const LocalPlace& place, const TestFunction& tf) {
    if (tf.kind != place.kind) throw MismatchedPlaceKind("test function built for another kind");
    ExactScalar vol = local_volume(place);
    ExactScalar LL = ExactScalar::symbol("Lhalf") * ExactScalar::symbol("Ladj", -1);
    long q = place.q;
    Rational qi(1, q);
    switch (place.kind) {
        case PlaceKind::Arch: {
            // vol(G') / (2k-1) * 1/(2 pi B(k+|m|, k-|m|)) * Lhalf Leta1 / (Ladj L21)
            long k = tf.k, m = std::abs((long)tf.m);
            Rational binom = 1;  // C(2k-2, k+m-1)
            for (long i = 1; i <= k + m - 1; i++) binom *= Rational(2 * k - 1 - i, i);
            // 1/(2 pi B) = (2k-1) C(2k-2, k+m-1) / (2 pi)
            return ExactScalar(2) * ExactScalar::pi() * ExactScalar(binom) * LL *
                   ExactScalar::symbol("Leta1") * ExactScalar::symbol("L21", -1);
        }
        case PlaceKind::Sigma1:
            return vol * LL;
        case PlaceKind::Sigma2:
            // L(1/2, pi_E x Omega) = L(1, Ad) = (1 + q^{-1})^{-1}: exact cancellation
            return vol;
        case PlaceKind::Sigma3:
            // both L-factors are 1
            return vol;
        case PlaceKind::GoodSplit: {
            ExactScalar extra = ExactScalar::symbol("vU") * ExactScalar::symbol("L2");
            if (tf.n_omega == 0) return vol * LL * extra * ExactScalar(Rational(q - 1, q));
            Rational qn(1, ipow(Int(q), tf.n_omega).convert_to<long>());
            return vol * LL * extra * ExactScalar(qn * Rational(q, q - 1));
        }
        case PlaceKind::GoodInert: {
            ExactScalar extra = ExactScalar::symbol("L2");
            if (tf.n_omega == 0) return vol * LL * extra * ExactScalar(1 + qi);
            Rational qn(1, ipow(Int(q), tf.n_omega).convert_to<long>());
            return vol * LL * extra * ExactScalar(qn / (1 + qi));
        }
        case PlaceKind::GoodRamified: {
            // e(E_v|F_v) = 2 and L(1, eta_v) = 1
            ExactScalar extra = ExactScalar::symbol("L2") * ExactScalar(Rational(1, 2));
            if (tf.n_omega == 0) return vol * LL * extra;
            Rational qn(1, ipow(Int(q), tf.n_omega).convert_to<long>());
            return vol * LL * extra * ExactScalar(qn);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace rtf
