#pragma once

#include <vector>

#include "rtf/localfield.hpp"

namespace rtf {

// Additive character of the prime residue field: y -> e(y/p).
RootOfUnity psi_tilde(long p, const Int& y);

/**
 * Character of E^x trivial on F^x for a nonsplit quadratic extension.
 *
 * Unramified kind: determined by the exponent a on the Teichmuller part
 * (tau-generator of mu(q^2-1) maps to e(a/(q^2-1)); triviality on F^x
 * forces (q-1) | a) together with an optional level-two parameter c in
 * k_F pairing with the tau-coordinate of U^1/U^2.
 *
 * Ramified kind: determined by the sign at pi_E and the pairing
 * 1 + y pi_E -> psi~(t y) on U^1/U^2 (t stored already doubled, so the
 * classification label (sign, 2*beta) has t = 2*beta mod p).
 */
class ToricChar {
public:
    static ToricChar unramified(const QuadExt& E, long a, long c = 0);
    static ToricChar ramified(const QuadExt& E, int sign, long two_beta);

    const QuadExt& ext() const { return *E_; }
    long a() const { return a_; }
    long level2() const { return c_; }
    int sign() const { return sign_; }
    long two_beta() const { return c_; }

    // Conductor exponent: least n with the character trivial on
    // (o + pi^n o_E)^x.
    int n_omega() const;
    bool is_trivial() const;

    RootOfUnity eval(const PadicElem& x) const;
    CycScalar evalc(const PadicElem& x) const { return CycScalar::root(eval(x)); }

private:
    const QuadExt* E_;
    long a_ = 0;    // unramified: exponent mod q^2-1
    long c_ = 0;    // unramified: level-2 pairing; ramified: doubled beta
    int sign_ = 1;  // ramified: value at pi_E
    bool ram_;

    ToricChar(const QuadExt& E, bool ram) : E_(&E), ram_(ram) {}
};

/**
 * Character of F_v^x, used at split places where a character of
 * E_v^x = F_v^x x F_v^x trivial on the diagonal is (x1, x2) ->
 * omega(x1) omega(x2)^{-1}.  Parameters: exponent b on mu(q-1),
 * level-two parameter c in k_F, and a free value at pi.
 */
class UnitChar {
public:
    UnitChar(const QuadExt& F, long b, long c, RootOfUnity at_pi)
        : F_(&F), b_(b), c_(c), at_pi_(at_pi) {}

    int n_conductor() const { return c_ % F_->p() != 0 ? 2 : (b_ % (F_->q() - 1) != 0 ? 1 : 0); }
    bool is_trivial_on_units() const { return n_conductor() == 0; }

    RootOfUnity eval(const PadicElem& x) const;

private:
    const QuadExt* F_;
    long b_, c_;
    RootOfUnity at_pi_;
};

/**
 * Closed-form coset representatives for the unit quotient
 * U_E / (U_F * U_E^m), m >= 1 in pi_E-valuation units.
 * Unramified: the projective line over o/pi^m gives
 *   {x + tau : x mod p^m} u {1 + tau pi^j u : 1 <= j < m, u unit mod p^{m-j}} u {1},
 * count (q+1) q^{m-1}.  Ramified: {1 + c pi_E : c mod p^{floor(m/2)}}.
 */
std::vector<PadicElem> unit_coset_reps(const QuadExt& E, int m);

// Representatives of F^x \ E^x / U_E^m: the unit reps, together with
// the extra pi_E coset in the ramified case.
std::vector<PadicElem> torus_coset_reps(const QuadExt& E, int m);

// Representatives of E^1 / (E^1 n U_E^m) via Hilbert 90: w -> w / conj(w)
// over the torus representatives.
std::vector<PadicElem> norm_one_reps(const QuadExt& E, int m);

}  // namespace rtf
