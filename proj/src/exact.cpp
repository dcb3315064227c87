#include "rtf/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rtf {

void ExactScalar::add_term(const Monomial& m_in, const Rational& c) {
    if (c == 0) return;
    Monomial m = m_in;
    std::erase_if(m.syms, [](const auto& kv) { return kv.second == 0; });
    if (m.rad < 1) throw std::domain_error("monomial radicand must be positive");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ExactScalar ExactScalar::sqrt_of(long n) {
    auto [s, d] = squarefree_decompose(n);
    ExactScalar r;
    Monomial m;
    m.rad = d;
    r.add_term(m, Rational(s));
    return r;
}

ExactScalar ExactScalar::sqrt_of(const Rational& q) {
    if (q <= 0) throw std::domain_error("sqrt_of needs a positive argument");
    // sqrt(a/b) = sqrt(ab)/b
    long a = static_cast<long>(numerator(q));
    long b = static_cast<long>(denominator(q));
    ExactScalar r = sqrt_of(a * b);
    return r / ExactScalar(b);
}

ExactScalar ExactScalar::pi(int pow) {
    ExactScalar r;
    Monomial m;
    m.pi_pow = pow;
    r.add_term(m, 1);
    return r;
}

ExactScalar ExactScalar::symbol(const std::string& name, int exp) {
    ExactScalar r;
    Monomial m;
    if (exp != 0) m.syms[name] = exp;
    r.add_term(m, 1);
    return r;
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    ExactScalar r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

namespace {

// sqrt(d1)*sqrt(d2) = g*sqrt(d1 d2 / g^2) with g = gcd(d1, d2); both
// radicands squarefree, so the reduced product is squarefree again.
std::pair<long, Monomial> mul_monomials(const Monomial& a, const Monomial& b) {
    long g = lgcd(a.rad, b.rad);
    Monomial m;
    m.rad = (a.rad / g) * (b.rad / g);
    m.pi_pow = a.pi_pow + b.pi_pow;
    m.syms = a.syms;
    for (const auto& [s, e] : b.syms) {
        m.syms[s] += e;
        if (m.syms[s] == 0) m.syms.erase(s);
    }
    return {g, m};
}

}  // namespace

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    ExactScalar r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            auto [g, m] = mul_monomials(m1, m2);
            r.add_term(m, c1 * c2 * g);
        }
    return r;
}

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
    if (o.terms_.size() != 1)
        throw std::domain_error("ExactScalar division needs a single-term divisor");
    const auto& [dm, dc] = *o.terms_.begin();
    // 1/sqrt(d) = sqrt(d)/d, symbol and pi exponents just negate.
    Monomial inv;
    inv.rad = dm.rad;
    inv.pi_pow = -dm.pi_pow;
    for (const auto& [s, e] : dm.syms) inv.syms[s] = -e;
    ExactScalar oinv;
    oinv.add_term(inv, Rational(1) / (dc * dm.rad));
    return *this * oinv;
}

bool ExactScalar::is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.trivial();
}

Rational ExactScalar::rational_value() const {
    if (terms_.empty()) return 0;
    if (!is_rational()) throw std::domain_error("not a rational scalar: " + str());
    return terms_.begin()->second;
}

double ExactScalar::eval(const std::map<std::string, double>& bindings) const {
    double total = 0;
    for (const auto& [m, c] : terms_) {
        double t = static_cast<double>(c) * std::sqrt(static_cast<double>(m.rad)) *
                   std::pow(std::numbers::pi, m.pi_pow);
        for (const auto& [s, e] : m.syms) {
            auto it = bindings.find(s);
            if (it == bindings.end())
                throw std::domain_error("unbound symbol " + s + " in ExactScalar::eval");
            t *= std::pow(it->second, e);
        }
        total += t;
    }
    return total;
}

std::string ExactScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        std::ostringstream factors;
        if (m.rad != 1) factors << "sqrt(" << m.rad << ")";
        if (m.pi_pow != 0) {
            if (factors.tellp() > 0) factors << "*";
            factors << "pi";
            if (m.pi_pow != 1) factors << "^" << m.pi_pow;
        }
        for (const auto& [s, e] : m.syms) {
            if (factors.tellp() > 0) factors << "*";
            factors << s;
            if (e != 1) factors << "^" << e;
        }
        std::string f = factors.str();
        if (f.empty()) {
            out << c;
        } else if (c == 1) {
            out << f;
        } else if (c == -1) {
            out << "-" << f;
        } else {
            out << c << "*" << f;
        }
    }
    return out.str();
}

}  // namespace rtf
