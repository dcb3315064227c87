#pragma once

#include <complex>
#include <vector>

#include "rtf/exact.hpp"

namespace rtf {

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Archimedean place data: half-weight k >= 1 and torus weight |m| < k. */
struct ArchPlace {
    int k;
    int m = 0;
};

/**
 * The (2k-1)-dimensional irreducible representation of the unit
 * quaternions modulo center, realized as Sym^{2k-2} of the standard
 * representation of SU(2) on the orthonormal weight basis.
 */
class SU2Rep {
public:
    explicit SU2Rep(int k);

    int dim() const { return 2 * k_ - 1; }

    // Full matrix at g = [[a, b], [-conj(b), conj(a)]], |a|^2 + |b|^2 = 1.
    std::vector<std::vector<std::complex<double>>> matrix(std::complex<double> a,
                                                          std::complex<double> b) const;

    // Diagonal coefficient <pi(g) u_m, u_m> for the weight-2m vector.
    std::complex<double> coefficient(int m, std::complex<double> a,
                                     std::complex<double> b) const;

private:
    int k_;
};

// Numeric Schur integral 4 pi^2 int |<pi(g)u,u>|^2 dg; must equal
// 4 pi^2 / (2k-1).
double arch_spectral_numeric(const ArchPlace& place, int quad_steps = 64);

// Exact Schur integral int |<pi(g)u,u>|^2 dg over the probability Haar
// measure, via monomial moments of (alpha, beta); equals 1/(2k-1).
Rational schur_exact(const ArchPlace& place);

// Exact value of (2k-1) B(k+m, k-m) C(2k-2, k+m-1); the identity behind
// the archimedean spectral constant says this is 1.
Rational beta_binomial_product(int k, int m);

// Closed-form regular orbital integral at xi < 0:
//   4 (1-xi)^{1-k} sum_i C(k-m-1, i) C(k+m-1, i) xi^i.
ExactScalar arch_orbital_closed(const ArchPlace& place, const Rational& xi);

// Quadrature oracle realizing the defining double-torus integral.
double arch_orbital_numeric(const ArchPlace& place, double xi, int quad_steps = 256);

}  // namespace rtf
