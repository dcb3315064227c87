#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtf/global.hpp"

namespace rtf {

struct DiscriminantOutOfTable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InsufficientCoefficients : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownLocalType : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FixtureIncomplete : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CharacterObstruction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/** Real primitive character attached to a fundamental discriminant < 0. */
struct QuadraticCharacter {
    long delta;  // fundamental discriminant, delta < 0
    explicit QuadraticCharacter(long delta);
    int operator()(long n) const;  // Kronecker symbol (delta / n)
};

bool is_fundamental_discriminant(long delta);

// Imaginary quadratic class number and unit count, by counting reduced
// binary quadratic forms; supports |delta| <= 200 (the built-in range).
struct ClassNumberEntry {
    long h = 0;
    long w = 2;
};
ClassNumberEntry class_number(long delta);

struct LOneEta {
    ExactScalar exact;   // 2 pi h / (w sqrt(|delta|)), empty if out of range
    double value = 0;    // numeric value of the formula (or series fallback)
    bool exact_available = false;
};

// L(1, eta) by the class-number formula, with series fallback when the
// discriminant is outside the built-in class-number range.
LOneEta l_one_eta(const QuadraticCharacter& chi);

// Direct series sum_{n <= terms} eta(n)/n, accelerated by one summation
// by parts (error O((|delta| / terms)^2)).
double l_one_eta_series(const QuadraticCharacter& chi, long terms = 2'000'000);

// Resummed series for L(1, eta) with the Euler factors at the primes of
// S removed: sum over n coprime to S of eta(n)/n via the digamma formula
// for periodic zero-mean sequences.
double l_one_eta_series_omitting(const QuadraticCharacter& chi,
                                 const std::vector<long>& S);

// Product over p in S of the Euler factor (1 - eta(p)/p)^{-1} at s = 1.
Rational partial_euler_exact(const QuadraticCharacter& chi,
                             const std::vector<long>& S);

// Numeric partial Euler products at general s: over S, or over all
// p <= cutoff excluding S.
double partial_euler(const QuadraticCharacter& chi, double s,
                     const std::vector<long>& S);
double euler_product_omitting(const QuadraticCharacter& chi, double s,
                              const std::vector<long>& S, long cutoff);

/**
 * Dirichlet series with real coefficients, completed by
 * Lambda(s) = N^{s/2} prod_j Gamma_R(s + mu_j) L(s) and satisfying
 * Lambda(s) = eps Lambda(1 - s).  root_number = 0 means "unknown,
 * determine numerically from functional-equation consistency".
 */
struct CoefficientSeries {
    std::vector<double> a;   // a[n]; index 0 unused
    int degree = 1;
    double conductor = 1;
    std::vector<double> mu;  // Gamma_R shifts
    double root_number = 0;
    bool has_pole = false;       // simple poles of Lambda at s = 1 and 0
    double residue_at_one = 0;   // residue of Lambda at s = 1
    double residue_at_zero = 0;  // residue of Lambda at s = 0
    std::string label;
};

CoefficientSeries zeta_series(long cutoff);
CoefficientSeries dirichlet_series(const QuadraticCharacter& chi, long cutoff);
// Dirichlet convolution; gamma data concatenated, conductors multiplied.
CoefficientSeries product_series(const CoefficientSeries& x,
                                 const CoefficientSeries& y);

struct AfeOptions {
    double point = 0.5;   // evaluation point s0 on the critical strip
    double width = 36;    // Gaussian kernel exp(u^2 / width)
    double step = 0.07;   // quadrature step on the vertical line
    double tol = 1e-10;   // relative tail target for the cutoff
};

struct AfeResult {
    double value = 0;      // L(s0)
    double completed = 0;  // Lambda(s0)
    double root_number = 0;
    double root_number_residual = 0;  // distance of the estimate from +-1
    double tail_estimate = 0;         // heuristic truncation majorant
    double stability = 0;             // drift between two kernel widths
    long cutoff_used = 0;
};

// Number of Dirichlet coefficients the smoothed approximate functional
// equation needs for the given gamma data / conductor at point s0.
long afe_required_cutoff(const CoefficientSeries& cs, const AfeOptions& opt = {});

// Smoothed approximate functional equation with kernel exp(u^2/width).
AfeResult afe_value(const CoefficientSeries& cs, const AfeOptions& opt = {});
double afe_central_value(const CoefficientSeries& cs);

// Independent oracle: Hurwitz zeta by Euler-Maclaurin (s > 0, s != 1)
// and L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q).
double hurwitz_zeta(double s, double a);
double dirichlet_l_hurwitz(const QuadraticCharacter& chi, double s);

/** Hecke eigenvalue data for one newform, loaded from a JSON fixture. */
struct NewformFixture {
    std::string label;
    long level = 0;
    int weight = 0;
    std::map<long, double> ap;
    std::map<long, std::string> local_types;
    std::string source;

    double eigenvalue(long p) const;  // throws InsufficientCoefficients
};

NewformFixture parse_fixture(const std::string& json_text);
std::vector<NewformFixture> load_fixtures(const std::string& dir);

/**
 * Unitary Hecke character of E = Q(i) with conductor (3) and infinity
 * type (z / zbar)^m: Omega((alpha)) = chi(alpha mod 3) (alpha/|alpha|... )
 * with chi the order-4 character of (Z[i]/3)^* trivial on (Z/3)^*.
 * Well-definedness on principal ideals forces m odd; even m throws
 * CharacterObstruction.
 */
struct HeckeCharacterQi {
    int m = 1;
    explicit HeckeCharacterQi(int m);
    // Omega((x + iy)) for an ideal prime to 3.
    std::complex<double> value(long x, long y) const;
    // chi(x + iy mod 3) alone (the finite part).
    std::complex<double> finite_part(long x, long y) const;
    // n-th coefficient of the attached theta series (sum over ideals).
    double theta_coefficient(long n) const;
};

// Degree-4 Rankin-Selberg series L(s, pi_E x Omega) for F = Q, E = Q(i),
// in the unitary normalization; conductor from the audited table.
CoefficientSeries rankin_selberg_series(const NewformFixture& f,
                                        const GlobalSetup& s,
                                        const HeckeCharacterQi& omega,
                                        long cutoff);

// Degree-3 adjoint series L(s, pi, Ad) (Sigma3 empty only).
CoefficientSeries adjoint_series(const NewformFixture& f, const GlobalSetup& s,
                                 long cutoff);

struct Theorem1Report {
    std::vector<std::string> family;                        // labels summed
    std::vector<std::pair<std::string, std::string>> excluded;  // label, why
    std::vector<double> central_values;  // L_fin(1/2, pi_E x Omega)
    std::vector<double> adjoint_values;  // L_fin(1, pi, Ad)
    double binom = 0;
    double lhs = 0;  // binom * sum of ratios
    double rhs = 0;  // |N1 N2 N3^2| |Delta_F|^{3/2} / 2^{...} * L^{S'}(1,eta)
    double rel_dev = 0;
    bool degenerate = false;  // no eligible forms
};

// End-to-end numeric check of the central identity over F = Q, E = Q(i).
Theorem1Report theorem1_numeric_check(const GlobalSetup& s,
                                      const std::vector<NewformFixture>& fixtures,
                                      const HeckeCharacterQi& omega);

}  // namespace rtf
