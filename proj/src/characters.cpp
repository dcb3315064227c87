#include "rtf/characters.hpp"

namespace rtf {

RootOfUnity psi_tilde(long p, const Int& y) {
    Int r = y % p;
    if (r < 0) r += p;
    return RootOfUnity(static_cast<long>(r), p);
}

ToricChar ToricChar::unramified(const QuadExt& E, long a, long c) {
    if (E.kind() != ExtKind::Unramified)
        throw std::invalid_argument("ToricChar::unramified needs an unramified extension");
    long n = E.q() * E.q() - 1;
    a %= n;
    if (a < 0) a += n;
    if (a % (E.q() - 1) != 0)
        throw std::invalid_argument("character not trivial on F^x: (q-1) must divide a");
    ToricChar t(E, false);
    t.a_ = a;
    t.c_ = ((c % E.p()) + E.p()) % E.p();
    return t;
}

ToricChar ToricChar::ramified(const QuadExt& E, int sign, long two_beta) {
    if (E.kind() != ExtKind::Ramified)
        throw std::invalid_argument("ToricChar::ramified needs a ramified extension");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    ToricChar t(E, true);
    t.sign_ = sign;
    t.c_ = ((two_beta % E.p()) + E.p()) % E.p();
    return t;
}

int ToricChar::n_omega() const {
    if (ram_) return c_ != 0 ? 1 : 0;
    if (c_ != 0) return 2;
    return a_ != 0 ? 1 : 0;
}

bool ToricChar::is_trivial() const {
    return ram_ ? (sign_ == 1 && c_ == 0) : (a_ == 0 && c_ == 0);
}

namespace {

// pi_E^e as an exact extension element (e may be negative).
PadicElem pi_power(const QuadExt& E, long e) {
    if (E.kind() == ExtKind::Ramified) return E.element(e, 1, 0);
    Rational r = e >= 0 ? Rational(ipow(Int(E.p()), (int)e)) : Rational(1, ipow(Int(E.p()), (int)-e));
    return E.lift(E.from_rational(r));
}

// Coefficient of the first filtration step of u1 = x / (pi^e teich):
// unramified, returns the tau-coefficient y_b of u1 = 1 + p(y_a + y_b tau);
// ramified, returns y with u1 = 1 + y pi_E + ...
long level2_digit(const PadicElem& x, long e) {
    const QuadExt& E = x.ext();
    PadicElem d = x * E.teich_of_residue(x.residue(), false).inverse() - pi_power(E, e);
    if (d.is_exact_zero() || d.valuation_at_least(e + 2)) return 0;
    if (d.valuation() != e + 1) throw std::logic_error("unit part not congruent to 1");
    Int digit = (E.kind() == ExtKind::Ramified ? d.unit_a() : d.unit_b()) % E.p();
    return static_cast<long>(digit < 0 ? digit + E.p() : digit);
}

}  // namespace

RootOfUnity ToricChar::eval(const PadicElem& x) const {
    if (x.is_exact_zero()) throw std::domain_error("character evaluated at zero");
    if (x.in_base()) return RootOfUnity();  // trivial on F^x
    long e = x.valuation();
    RootOfUnity val;
    if (ram_) {
        if (sign_ == -1 && (e % 2 != 0)) val = RootOfUnity(1, 2);
        if (c_ != 0) val = val * psi_tilde(E_->p(), c_ * level2_digit(x, e));
    } else {
        long n = E_->q() * E_->q() - 1;
        if (a_ != 0) val = RootOfUnity(a_ * E_->kE().dlog(x.residue()), n);
        if (c_ != 0) val = val * psi_tilde(E_->p(), c_ * level2_digit(x, e));
    }
    return val;
}

RootOfUnity UnitChar::eval(const PadicElem& x) const {
    if (x.is_exact_zero()) throw std::domain_error("character evaluated at zero");
    if (!x.in_base()) throw std::domain_error("UnitChar expects a base-field element");
    long e = x.valuation();
    RootOfUnity val = at_pi_.pow(e);
    if (b_ != 0) val = val * RootOfUnity(b_ * F_->kF().dlog(x.residue()), F_->q() - 1);
    if (c_ != 0) {
        // same first-filtration digit as in the extension case: u1 = 1 + p y
        PadicElem d = x * F_->teich_of_residue(x.residue(), true).inverse() -
                      F_->from_rational(e >= 0 ? Rational(ipow(Int(F_->p()), (int)e))
                                              : Rational(1, ipow(Int(F_->p()), (int)-e)));
        long y = 0;
        if (!d.is_exact_zero() && !d.valuation_at_least(e + 2)) {
            if (d.valuation() != e + 1) throw std::logic_error("unit part not congruent to 1");
            Int digit = d.unit_a() % F_->p();
            y = static_cast<long>(digit < 0 ? digit + F_->p() : digit);
        }
        val = val * psi_tilde(F_->p(), c_ * y);
    }
    return val;
}

std::vector<PadicElem> unit_coset_reps(const QuadExt& E, int m) {
    if (m < 1) throw std::invalid_argument("unit_coset_reps needs m >= 1");
    if (m > E.M() - 1) throw PrecisionExhausted("coset depth exceeds working precision");
    std::vector<PadicElem> reps;
    long p = E.p();
    if (E.kind() == ExtKind::Unramified) {
        Int pm = ipow(Int(p), m);
        for (Int x = 0; x < pm; x++) reps.push_back(E.element(0, x, 1));
        for (int j = 1; j < m; j++) {
            Int pj = ipow(Int(p), j), pmj = ipow(Int(p), m - j);
            for (Int u = 1; u < pmj; u++)
                if (u % p != 0) reps.push_back(E.element(0, 1, u * pj));
        }
        reps.push_back(E.one_E());
    } else if (E.kind() == ExtKind::Ramified) {
        Int ph = ipow(Int(p), m / 2);
        for (Int c = 0; c < ph; c++) reps.push_back(E.element(0, 1, c));
    } else {
        throw std::invalid_argument("unit_coset_reps: split algebras have no unit quotient here");
    }
    return reps;
}

std::vector<PadicElem> torus_coset_reps(const QuadExt& E, int m) {
    std::vector<PadicElem> reps = unit_coset_reps(E, m);
    if (E.kind() == ExtKind::Ramified) {
        size_t n = reps.size();
        for (size_t i = 0; i < n; i++) reps.push_back(reps[i] * E.pi_E());
    }
    return reps;
}

std::vector<PadicElem> norm_one_reps(const QuadExt& E, int m) {
    std::vector<PadicElem> reps;
    for (const PadicElem& w : torus_coset_reps(E, m))
        reps.push_back(w * w.conj().inverse());
    return reps;
}

}  // namespace rtf
