#pragma once

#include <memory>
#include <optional>

#include "rtf/residue.hpp"

namespace rtf {

/** Thrown when a result needs p-adic digits beyond the working precision. */
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Non-archimedean local field F with odd residue characteristic p,
 * residue field GF(p^f), uniformizer p, and truncated arithmetic at
 * relative precision M (unit parts carried modulo p^M).
 * psi_conductor is the conductor exponent of the fixed additive
 * character; it only enters epsilon-factor bookkeeping.
 */
struct LocalFieldDesc {
    long p;
    int f = 1;
    int M = 8;
    int psi_conductor = 0;

    long q() const {
        long r = 1;
        for (int i = 0; i < f; i++) r *= p;
        return r;
    }
    Int unit_modulus() const { return ipow(Int(p), M); }
    void validate() const;
};

enum class ExtKind { Unramified, Ramified, Split };

class QuadExt;

/**
 * Element of F or of a quadratic extension E/F in floating-slot form
 * pi_E^e * (a + b*gen), with the unit pair (a, b) carried modulo p^M.
 * gen is tau (unramified, tau^2 = T tau - N0) or pi_E (ramified,
 * pi_E^2 = p).  Three states:
 *   Zero        exact zero
 *   Known       leading digit nonzero, valuation() = e is certified
 *   BelowPrec   all digits cancelled; only valuation() >= vmin is known
 * Any operation needing more than M digits throws PrecisionExhausted.
 */
class PadicElem {
public:
    enum class State { Zero, Known, BelowPrec };

    PadicElem() : state_(State::Zero) {}

    static PadicElem zero(const QuadExt& E, bool base);
    static PadicElem from_int(const QuadExt& E, bool base, const Int& value);
    static PadicElem from_rational(const QuadExt& E, bool base, const Rational& value);
    // pi_E^e * (a + b gen); a, b reduced mod p^M, then normalized.
    static PadicElem make(const QuadExt& E, bool base, long e, Int a, Int b);

    State state() const { return state_; }
    bool is_exact_zero() const { return state_ == State::Zero; }
    bool in_base() const { return base_; }

    // Valuation in pi_E units (pi units for base elements).
    long valuation() const;
    // Sound one-sided test for valuation() >= cutoff; throws only when
    // undecidable at the working precision.
    bool valuation_at_least(long cutoff) const;

    PadicElem operator+(const PadicElem&) const;
    PadicElem operator-(const PadicElem&) const;
    PadicElem operator-() const;
    PadicElem operator*(const PadicElem&) const;
    PadicElem inverse() const;
    PadicElem operator/(const PadicElem& o) const { return *this * o.inverse(); }

    PadicElem conj() const;
    PadicElem norm() const;   // N_{E/F}, a base element
    PadicElem trace() const;  // Tr_{E/F}, a base element

    // Unit-part coefficients (throws unless state is Known).
    const Int& unit_a() const;
    const Int& unit_b() const;
    long slot() const;  // the exponent e

    // Residue of a unit in the residue field of its ring.
    Fq::Elt residue() const;
    // (q-1)-st (base) or (q^2-1)-st (unramified ext) root of unity
    // congruent to this unit.
    PadicElem teichmuller() const;

    const QuadExt& ext() const { return *E_; }

    std::string str() const;

private:
    const QuadExt* E_ = nullptr;
    bool base_ = true;
    State state_ = State::Zero;
    long e_ = 0;       // Known: slot exponent; BelowPrec: valuation floor
    int prec_ = 0;     // valid p-adic digits of the unit pair, <= M
    Int a_, b_;

    void normalize();
    friend class QuadExt;
};

/**
 * Quadratic extension E/F (or the split algebra descriptor).  For the
 * unramified kind, tau lifts the deterministic generator of the residue
 * field GF(q^2); for the ramified kind the uniformizer is sqrt(p), so
 * N(pi_E) = -p and the extension has valuation of discriminant 1.
 */
class QuadExt {
public:
    QuadExt(const LocalFieldDesc& F, ExtKind kind);

    const LocalFieldDesc& F() const { return F_; }
    ExtKind kind() const { return kind_; }
    long p() const { return F_.p; }
    long q() const { return F_.q(); }
    int M() const { return F_.M; }
    int ramification_e() const { return kind_ == ExtKind::Ramified ? 2 : 1; }
    // v(disc E/F); 0 unramified or split, 1 ramified (p odd).
    int disc_val() const { return kind_ == ExtKind::Ramified ? 1 : 0; }

    const Fq& kF() const { return *kF_; }
    const Fq& kE() const { return *kE_; }  // residue field of E (unramified kind)
    long T() const { return T_; }
    long N0() const { return N0_; }

    PadicElem from_int(const Int& v) const { return PadicElem::from_int(*this, true, v); }
    PadicElem from_rational(const Rational& v) const {
        return PadicElem::from_rational(*this, true, v);
    }
    PadicElem element(long e, Int a, Int b) const {
        return PadicElem::make(*this, false, e, std::move(a), std::move(b));
    }
    PadicElem tau() const;   // unramified generator as an E element
    PadicElem pi_E() const;  // uniformizer of E
    PadicElem zero_E() const { return PadicElem::zero(*this, false); }
    PadicElem one_E() const { return PadicElem::make(*this, false, 0, 1, 0); }
    // Embeds a base element into E.
    PadicElem lift(const PadicElem& base_elt) const;

    // Solves N(x) = c for base c, or reports that c is not a norm.
    // Uses a residue-field solution refined Hensel-style.
    std::optional<PadicElem> solve_norm(const PadicElem& c) const;

    // Teichmuller lift of a residue-field element into E (or F).
    PadicElem teich_of_residue(const Fq::Elt& r, bool base) const;

private:
    LocalFieldDesc F_;
    ExtKind kind_;
    std::shared_ptr<Fq> kF_, kE_;
    long T_ = 0, N0_ = 0;  // tau^2 = T tau - N0
};

Int mod_inverse(const Int& a, const Int& m);
// Square root of a unit square mod p^M (p odd), Newton refinement.
std::optional<Int> sqrt_mod_pM(const Int& a, long p, int M);

}  // namespace rtf
