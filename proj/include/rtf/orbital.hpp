#pragma once

#include <memory>
#include <optional>

#include "rtf/characters.hpp"
#include "rtf/pairs.hpp"

namespace rtf {

/** Requested closed form exists only as a certified bound. */
struct NotClosedForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** The oracle could not certify the support window of the integrand. */
struct SupportNotCertified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OrbitalKind { Exact, UpperBound };

/**
 * Value of a local orbital integral.  Exact values are cyclotomic
 * combinations of the volume symbols
 *   vFE  = vol(F_v^x \ E_v^x)     (nonsplit places)
 *   vU   = vol(U_v)               (split places)
 * while certified bounds are expressed in
 *   vUE  = vol(U_v \ U_{E_v}),  vE1U = vol(E_v^1 n U_{E_v}).
 */
struct OrbitalValue {
    CycScalar value;
    OrbitalKind kind = OrbitalKind::Exact;
};

/**
 * A finite place bundled with its local test-function data: the
 * quadratic algebra E_v / F_v, the place class, and the character
 * Omega_v.  At Sigma2/Sigma3 the character comes from an admissible
 * pair; at good nonsplit places it is a toric character; at split
 * places Omega(x1, x2) = omega(x1 / x2) for a character omega of F_v^x.
 */
class OrbitalContext {
public:
    static OrbitalContext sigma1(const LocalFieldDesc& F);
    static OrbitalContext sigma2(const LocalFieldDesc& F, const AdmissiblePair& pair);
    static OrbitalContext sigma3(const LocalFieldDesc& F, const AdmissiblePair& pair);
    static OrbitalContext inert(const LocalFieldDesc& F, long a = 0, long c = 0);
    static OrbitalContext ramified(const LocalFieldDesc& F, int sign, long two_beta);
    static OrbitalContext split(const LocalFieldDesc& F, long b, long c, RootOfUnity at_pi);

    PlaceKind kind() const { return kind_; }
    bool is_split() const { return kind_ == PlaceKind::GoodSplit; }
    // The quadratic extension (throws for split places).
    const QuadExt& E() const;
    // Carrier ring for base-field truncated arithmetic (always valid).
    const QuadExt& base_ring() const { return *E_; }
    long p() const { return E_->p(); }
    long q() const { return E_->q(); }
    int n_omega() const;
    const ToricChar& omega() const;
    const UnitChar& omega_split() const;
    const std::optional<AdmissiblePair>& pair() const { return pair_; }

private:
    OrbitalContext(PlaceKind k, std::shared_ptr<QuadExt> E)
        : kind_(k), E_(std::move(E)) {}

    PlaceKind kind_;
    std::shared_ptr<QuadExt> E_;
    std::optional<AdmissiblePair> pair_;
    std::optional<ToricChar> omega_;
    std::optional<UnitChar> split_omega_;
};

/**
 * Regular orbit parameter xi (rational, xi != 0, 1) with the derived
 * local valuations and, when xi lies in the relevant norm set, a
 * realization:
 *   Sigma1/Sigma2:    xi = p N(x)   (v(eps) = 1 normalization)
 *   Sigma3, nonsplit: xi = N(x)
 *   split:            xi = x1 * x2.
 * Points without a realization index empty orbits; their orbital
 * integrals are exactly 0.
 */
struct RegularOrbitPoint {
    Rational xi;
    long v_xi = 0;
    long v_one_minus_xi = 0;
    bool realizable = false;
    std::optional<PadicElem> x;
    std::optional<std::pair<Rational, Rational>> x_split;
};

// Builds the orbit point for xi; `variant` selects among equivalent
// realizations (the orbital integrals must not depend on it).
RegularOrbitPoint realize_orbit_point(const OrbitalContext& ctx, const Rational& xi,
                                      unsigned variant = 0);

// Singular orbital integral: vFE on Ram(D) u Sigma3; the normalized
// order-unit volume (carrying q^-n L(1,eta_v) for n(Omega_v) = n > 0)
// elsewhere.
OrbitalValue singular_orbital_local(const OrbitalContext& ctx);

// Closed-form regular orbital integral per the branch tables; throws
// NotClosedForm when n(Omega_v) > 0 at a good place and the vanishing
// criterion v(1 - xi) > v(d_{E/F} N(c(Omega_v))) = v(d) + 2 n(Omega_v)
// does not apply.
OrbitalValue regular_orbital_closed(const OrbitalContext& ctx, const RegularOrbitPoint& pt);

// Brute-force oracle: finite sum over certified quotient enumerations
// of the defining double integral.  mesh = 0 selects the least depth at
// which the integrand is exactly constant on cosets.
OrbitalValue regular_orbital_oracle(const OrbitalContext& ctx, const RegularOrbitPoint& pt,
                                    int mesh = 0);

// Certified upper bound for |I(xi, f'_v)| when n(Omega_v) > 0.  The
// constant factor is 1 for v unramified in E and configurable otherwise.
OrbitalValue ramified_bound(const OrbitalContext& ctx, const RegularOrbitPoint& pt,
                            const Rational& ramified_constant = Rational(1));

// Exact p-adic valuation of a nonzero rational.
long rational_valuation(const Rational& r, long p);

}  // namespace rtf
