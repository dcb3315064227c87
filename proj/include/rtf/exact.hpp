#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "rtf/numeric.hpp"

namespace rtf {

/**
 * One multiplicative monomial sqrt(rad) * pi^pi_pow * prod sym^e.
 * rad is a positive squarefree integer; symbol exponents may be negative.
 */
struct Monomial {
    long rad = 1;
    int pi_pow = 0;
    std::map<std::string, int> syms;

    auto operator<=>(const Monomial&) const = default;
    bool trivial() const { return rad == 1 && pi_pow == 0 && syms.empty(); }
};

/**
 * Exact sum of rational multiples of monomials.  Closed under ring
 * operations; division is defined only for single-monomial divisors.
 * The term map never stores a zero coefficient, so equality of values
 * is equality of representations.
 */
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long v) { add_term(Monomial{}, Rational(v)); }
    ExactScalar(const Rational& v) { add_term(Monomial{}, v); }

    static ExactScalar sqrt_of(long n);           // n > 0
    static ExactScalar sqrt_of(const Rational&);  // positive
    static ExactScalar pi(int pow = 1);
    static ExactScalar symbol(const std::string& name, int exp = 1);

    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-(const ExactScalar& o) const;
    ExactScalar operator-() const;
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    // Throws std::domain_error unless the divisor is a single nonzero term.
    ExactScalar operator/(const ExactScalar& o) const;

    bool operator==(const ExactScalar& o) const { return terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Value of a purely rational scalar; throws otherwise.
    Rational rational_value() const;

    // Numeric evaluation with the given symbol bindings; unbound symbols throw.
    double eval(const std::map<std::string, double>& bindings = {}) const;

    // Canonical rendering, e.g. "3/2*sqrt(5)*pi^2*vU^3 + 1".
    std::string str() const;

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    void add_term(const Monomial& m, const Rational& c);

private:
    std::map<Monomial, Rational> terms_;
};

inline ExactScalar operator*(const Rational& c, const ExactScalar& x) {
    return ExactScalar(c) * x;
}

}  // namespace rtf
