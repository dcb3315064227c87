#pragma once

#include <complex>
#include <map>

#include "rtf/exact.hpp"

namespace rtf {

/** e(num/den) = exp(2*pi*i*num/den), kept reduced with 0 <= num < den. */
struct RootOfUnity {
    long num = 0;
    long den = 1;

    RootOfUnity() = default;
    RootOfUnity(long n, long d);

    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity inverse() const { return RootOfUnity(-num, den); }
    RootOfUnity pow(long e) const;
    bool operator==(const RootOfUnity&) const = default;
    bool is_one() const { return num == 0; }
    std::complex<double> value() const;
};

/**
 * Exact element of a cyclotomic ring with ExactScalar coefficients:
 * sum of c_j * zeta_n^j.  Equality and zero tests reduce modulo the
 * n-th cyclotomic polynomial, so relations like 1 + zeta_3 + zeta_3^2 = 0
 * are recognized.
 */
class CycScalar {
public:
    CycScalar() = default;
    CycScalar(const ExactScalar& c) { add(RootOfUnity(), c); }
    CycScalar(long v) : CycScalar(ExactScalar(v)) {}

    static CycScalar root(const RootOfUnity& r) { CycScalar z; z.add(r, ExactScalar(1)); return z; }

    void add(const RootOfUnity& r, const ExactScalar& coeff);

    CycScalar operator+(const CycScalar& o) const;
    CycScalar operator-(const CycScalar& o) const;
    CycScalar operator*(const CycScalar& o) const;
    CycScalar& operator+=(const CycScalar& o) { return *this = *this + o; }
    CycScalar& operator*=(const CycScalar& o) { return *this = *this * o; }

    CycScalar conj() const;

    bool is_zero() const;
    bool operator==(const CycScalar& o) const { return (*this - o).is_zero(); }

    // True when the value lies in the ExactScalar subring; result via value_exact().
    bool is_exact_real(ExactScalar* out = nullptr) const;

    std::complex<double> eval(const std::map<std::string, double>& bindings = {}) const;
    std::string str() const;

    long order() const { return order_; }

private:
    long order_ = 1;                      // all exponents live in Z/order_
    std::map<long, ExactScalar> coef_;    // exponent -> coefficient, no zeros
    void rescale(long new_order);
    std::map<long, ExactScalar> reduced() const;  // coefficients mod Phi_order
};

// n-th cyclotomic polynomial, ascending coefficients.
std::vector<Int> cyclotomic_poly(long n);

}  // namespace rtf
