#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rtf/orbital.hpp"

namespace rtf {

struct ParityViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SplittingMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CoprimalityViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EvenResidueInN2N3 : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CriteriaNotMet : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedBaseField : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SigmaThreeNonEmpty : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/**
 * Global arithmetic data for the identity between the spectral average
 * and the singular orbital term.  For degree 1 everything is derived
 * from |Delta_E| and the factored square-free levels; higher-degree
 * totally real base fields are supported at the invariant level only
 * (norms plus per-place splitting data supplied explicitly).
 */
struct GlobalSetup {
    int degree = 1;       // [F:Q]
    long delta_F = 1;     // |Delta_F|
    int h_F = 1;
    long delta_E_abs = 0;  // |Delta_E| = Delta_F^2 * d_{E/F}

    std::vector<long> N1, N2, N3;  // prime (norm) factors, square-free

    // Residue norm -> n(Omega_v) >= 1 at places outside the level.
    std::map<long, int> omega_ramified;
    // degree > 1: residue norm -> eta value in {-1, 0, +1}.
    std::map<long, int> eta_override;

    std::vector<int> k, m;  // per infinite place; |m_v| < k_v

    long d_EF() const { return delta_E_abs / (delta_F * delta_F); }
    // Conductor norm c(Omega) = |N2|^2 * prod_{Sigma3} q^2 * prod q^{2n}.
    long c_omega() const;
    long c_prime_omega() const;  // c(Omega) / |N2|^2
    long norm(const std::vector<long>& N) const;
};

struct GlobalPlace {
    long q;
    PlaceKind kind;
    int eta;      // +1 split, -1 inert, 0 ramified in E
    int n_omega;  // conductor exponent of Omega_v
};

// Validates the setup and tags every relevant finite place.
std::vector<GlobalPlace> classify_places(const GlobalSetup& s);

// Quadratic-symbol value eta(p) (degree 1: computed from Delta_E).
int eta_symbol(const GlobalSetup& s, long p);

// Singular orbital term: 2^{[F:Q]} sqrt(|Delta_F|/|Delta_E|)
//   * |N2 N3| / sqrt(c(Omega)) * L_{S'}(1, eta).
ExactScalar global_singular(const GlobalSetup& s);

// Product of Euler factors of L(1, eta) over the places of S'(Omega).
Rational l_seta_local(const GlobalSetup& s);

// Binomial factor prod C(2 k_v - 2, k_v + m_v - 1).
Rational binomial_factor(const GlobalSetup& s);

// Full coefficient multiplying the spectral average, including the
// binomial factor.
ExactScalar spectral_prefactor(const GlobalSetup& s);

// Right-hand side of the central identity:
// |N1 N2 N3^2| |Delta_F|^{3/2} / 2^{#Sigma3 + [F:Q] - 2} * L^{S'}(1,eta),
// with the removed-factor L-value carried as the formal symbol LSeta.
ExactScalar identity_rhs_theorem(const GlobalSetup& s);

struct IdentityReport {
    ExactScalar lhs, rhs, residual;
    bool equal = false;
    // constituents, for decomposition reports and mutation testing
    ExactScalar singular, prefactor, rhs_theorem;
    Rational binom;
};

// Checks 2 L(1,eta) I(0,f') == prefactor * (theorem RHS / binom) as an
// exact identity, with L(1,eta) = L_{S'} * L^{S'} and L^{S'} formal.
// The scale factors support mutation testing of either side.
IdentityReport verify_identity(const GlobalSetup& s, const Rational& lhs_scale = 1,
                               const Rational& rhs_scale = 1);

// Audited conductor table for the Rankin-Selberg pairing with the theta
// series: exponent of q in c(pi x sigma_Omega) per finite place
// (2 on Sigma1 u Sigma2, 5 on Sigma3, 2 (v_q(d) + 2 n(Omega_v)) at good
// places where d_{E/F} or the conductor of Omega is nontrivial).
std::map<long, int> rankin_conductor_exponents(const GlobalSetup& s);

// The two sufficient emptiness conditions for the regular support set.
std::pair<bool, bool> emptiness_criteria(const GlobalSetup& s);

struct GlobalOrbitPoint {
    Rational xi;
    long y = 0;
    long a = 0;
};

// Generator of the principal support ideal d_{E/F} c(Omega) N2^{-2} N3^{-3}.
long support_modulus(const GlobalSetup& s);

// Whether xi lies in eps N(E^x): negative at the real place, odd
// valuation at Sigma1 u Sigma2, eta_v(xi) = 1 away from Ram(D).
bool is_global_norm(const GlobalSetup& s, const Rational& xi);

// Hilbert symbol (x, y)_p in {-1, +1}.
int hilbert_symbol(const Rational& x, const Rational& y, long p);

// The regular support set, enumerated through xi_y = y / (y + a).
std::vector<GlobalOrbitPoint> enumerate_regular_support(
    const GlobalSetup& s, std::optional<long> a = std::nullopt);

struct SupportPattern {
    std::vector<long> r, t;    // per S'(Omega) place: v(y), v(y + a)
    long count = 0;            // enumerated points in this class
    double cardinality_bound;  // 2^{[F:Q]+1} |a| / |N1 N2 prod p^{max(r,t)}|
};

struct RegularBoundReport {
    long a = 0;
    std::vector<GlobalOrbitPoint> support;  // S(a), y in N1 N2
    std::vector<double> terms;              // per-point bound contributions
    double total = 0;
    std::vector<SupportPattern> patterns;
    double cardinality_total = 0;
};

// Numeric bound on the total regular orbital contribution: exact divisor
// counts away from S'(Omega) times certified local bounds on S'(Omega).
RegularBoundReport regular_bound_total(const GlobalSetup& s);

struct SubconvexityReport {
    double t = 0, eps = 0;
    double c_prime = 0, n1n2 = 0;
    double window_lo_exp = 0, window_hi_exp = 0;  // exponents on c'(Omega)
    bool window_nonempty = false;
    bool in_window = false;
    double achieved_exponent = 0;       // on c'(Omega) |N1 N2|
    double convexity_exponent = 0.5;
    bool beats_convexity = false;
};

SubconvexityReport subconvexity_report(const GlobalSetup& s, double t, double eps);

}  // namespace rtf
