#include "rtf/arch.hpp"

#include <cmath>
#include <numbers>

namespace rtf {

namespace {

Rational binom(long n, long r) {
    if (r < 0 || r > n) return 0;
    Rational b = 1;
    for (long i = 1; i <= r; i++) b *= Rational(n - r + i, i);
    return b;
}

Rational factorial(long n) {
    Rational f = 1;
    for (long i = 2; i <= n; i++) f *= i;
    return f;
}

}  // namespace

SU2Rep::SU2Rep(int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("SU2Rep needs k >= 1");
}

std::vector<std::vector<std::complex<double>>> SU2Rep::matrix(std::complex<double> a,
                                                              std::complex<double> b) const {
    int n = 2 * k_ - 2;
    using C = std::complex<double>;
    std::vector<std::vector<C>> M(n + 1, std::vector<C>(n + 1));
    // pi(g) x^t y^{n-t} = (a x - conj(b) y)^t (b x + conj(a) y)^{n-t};
    // M[s][t] = sqrt(C(n,t)/C(n,s)) [x^s y^{n-s}] of that product.
    for (int t = 0; t <= n; t++) {
        std::vector<C> poly(n + 1, 0.0);  // coefficients in x-degree
        poly[0] = 1.0;
        auto mul_linear = [&](C cx, C cy) {
            std::vector<C> next(n + 1, 0.0);
            for (int d = 0; d < n + 1; d++) {
                if (poly[d] == 0.0) continue;
                if (d + 1 <= n) next[d + 1] += poly[d] * cx;
                next[d] += poly[d] * cy;
            }
            poly = next;
        };
        for (int i = 0; i < t; i++) mul_linear(a, -std::conj(b));
        for (int i = 0; i < n - t; i++) mul_linear(b, std::conj(a));
        for (int s = 0; s <= n; s++) {
            double scale = std::sqrt(static_cast<double>(binom(n, t) / binom(n, s)));
            M[s][t] = poly[s] * scale;
        }
    }
    return M;
}

std::complex<double> SU2Rep::coefficient(int m, std::complex<double> a,
                                         std::complex<double> b) const {
    int n = 2 * k_ - 2, j = k_ - 1 + m;
    if (j < 0 || j > n) throw std::invalid_argument("weight out of range");
    std::complex<double> sum = 0.0;
    double bb = std::norm(b);
    for (int i = std::max(0, 2 * j - n); i <= j; i++) {
        double c = static_cast<double>(binom(j, i) * binom(n - j, j - i));
        double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * c * std::pow(a, i) * std::pow(std::conj(a), n - 2 * j + i) *
               std::pow(bb, j - i);
    }
    return sum;
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int g, std::vector<double>& x, std::vector<double>& w) {
    const double pi = std::numbers::pi;
    x.assign(g, 0.0);
    w.assign(g, 0.0);
    for (int i = 0; i < g; i++) {
        double t = std::cos(pi * (i + 0.75) / (g + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; iter++) {
            double p0 = 1, p1 = t;
            for (int n = 2; n <= g; n++) {
                double p2 = ((2 * n - 1) * t * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = g * (t * p1 - p0) / (t * t - 1);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2 / ((1 - t * t) * dp * dp);
    }
}

}  // namespace

double arch_spectral_numeric(const ArchPlace& place, int quad_steps) {
    if (quad_steps < 64) throw std::invalid_argument("need quad_steps >= 64");
    SU2Rep rep(place.k);
    const double pi = std::numbers::pi;
    // Haar measure dg = sin(2 theta) d theta d psi d chi / (4 pi^2) with
    // alpha = cos(theta) e^{i psi}, beta = sin(theta) e^{i chi}.  In the
    // variable u = cos(2 theta) the measure becomes du/2 and the phase-
    // averaged integrand is a polynomial in u, so Gauss-Legendre in u plus
    // full-period trapezoid sums in the phases are exact once the node and
    // step counts exceed the polynomial/trigonometric degree.
    auto level = [&](int g) {
        std::vector<double> xs, ws;
        gauss_legendre(g, xs, ws);
        double total = 0;
        int n = quad_steps;
        for (int iu = 0; iu < g; iu++) {
            double cth = std::sqrt((1 + xs[iu]) / 2);
            double sth = std::sqrt((1 - xs[iu]) / 2);
            double slice = 0;
            for (int ip = 0; ip < n; ip++) {
                double ps = 2 * pi * ip / n;
                for (int ic = 0; ic < n; ic++) {
                    double ch = 2 * pi * ic / n;
                    std::complex<double> a = std::polar(cth, ps);
                    std::complex<double> b = std::polar(sth, ch);
                    slice += std::norm(rep.coefficient(place.m, a, b));
                }
            }
            total += ws[iu] / 2 * slice * (2 * pi / n) * (2 * pi / n) / (4 * pi * pi);
        }
        return total * (4 * pi * pi);
    };
    double c1 = level(2 * place.k + 2), c2 = level(2 * place.k + 5);
    if (std::abs(c1 - c2) > 1e-8 * std::max(1.0, std::abs(c2)))
        throw QuadratureNotConverged("spectral quadrature did not stabilize");
    return c2;
}

Rational schur_exact(const ArchPlace& place) {
    long n = 2 * place.k - 2, j = place.k - 1 + place.m;
    // int alpha^p conj(alpha)^p (beta conj(beta))^q dg = p! q! / (p+q+1)!
    Rational sum = 0;
    for (long i = std::max(0L, 2 * j - n); i <= j; i++)
        for (long i2 = std::max(0L, 2 * j - n); i2 <= j; i2++) {
            Rational c = binom(j, i) * binom(n - j, j - i) * binom(j, i2) *
                         binom(n - j, j - i2);
            long sign = ((2 * j - i - i2) % 2 == 0) ? 1 : -1;
            long p = n - 2 * j + i + i2, q = 2 * j - i - i2;
            sum += sign * c * factorial(p) * factorial(q) / factorial(p + q + 1);
        }
    return sum;
}

Rational beta_binomial_product(int k, int m) {
    // B(k+m, k-m) = (k+m-1)! (k-m-1)! / (2k-1)!
    Rational B = factorial(k + m - 1) * factorial(k - m - 1) / factorial(2 * k - 1);
    return Rational(2 * k - 1) * B * binom(2 * k - 2, k + m - 1);
}

ExactScalar arch_orbital_closed(const ArchPlace& place, const Rational& xi) {
    if (xi >= 0) throw std::domain_error("closed form requires xi < 0");
    long k = place.k, m = std::abs((long)place.m);
    // The double-torus integral factors through the diagonal matrix
    // coefficient at the unitarized orbit representative, which expands
    // with plain powers xi^i (alternating for xi < 0).
    Rational sum = 0, pw = 1;
    for (long i = 0; i <= k - m - 1; i++) {
        sum += binom(k - m - 1, i) * binom(k + m - 1, i) * pw;
        pw *= xi;
    }
    Rational denom = 1;
    for (long i = 0; i < k - 1; i++) denom *= (1 - xi);
    return ExactScalar(Rational(4) * sum / denom);
}

double arch_orbital_numeric(const ArchPlace& place, double xi, int quad_steps) {
    if (xi >= 0) throw std::domain_error("oracle requires xi < 0");
    SU2Rep rep(place.k);
    const double pi = std::numbers::pi;
    double r = std::sqrt(-xi);
    double scale = 1.0 / std::sqrt(1 + r * r);
    auto level = [&](int n) {
        double total = 0;
        for (int i1 = 0; i1 < n; i1++) {
            double f1 = 2 * pi * i1 / n;
            for (int i2 = 0; i2 < n; i2++) {
                double f2 = 2 * pi * i2 / n;
                std::complex<double> a = std::polar(scale, f1 + f2);
                std::complex<double> b = -std::polar(r * scale, f1 - f2);
                std::complex<double> phi = rep.coefficient(place.m, a, b);
                std::complex<double> omega = std::polar(1.0, 2 * place.m * (f1 + f2));
                total += (std::conj(phi) * omega).real();
            }
        }
        return total * (2 * pi / n) * (2 * pi / n) / (pi * pi);
    };
    double c1 = level(quad_steps), c2 = level(quad_steps * 2);
    if (std::abs(c1 - c2) > 1e-8 * std::max(1.0, std::abs(c2)))
        throw QuadratureNotConverged("orbital quadrature did not stabilize");
    return c2;
}

}  // namespace rtf
