#include "rtf/cyclo.hpp"

#include <numbers>
#include <sstream>

namespace rtf {

RootOfUnity::RootOfUnity(long n, long d) {
    if (d == 0) throw std::invalid_argument("RootOfUnity with zero denominator");
    if (d < 0) { d = -d; n = -n; }
    n %= d;
    if (n < 0) n += d;
    long g = lgcd(n, d);
    if (n == 0) g = d;
    num = n / g;
    den = d / g;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    long d = llcm(den, o.den);
    return RootOfUnity(num * (d / den) + o.num * (d / o.den), d);
}

RootOfUnity RootOfUnity::pow(long e) const {
    long r = ((num * e) % den + den) % den;
    return RootOfUnity(r, den);
}

std::complex<double> RootOfUnity::value() const {
    double t = 2.0 * std::numbers::pi * num / den;
    return {std::cos(t), std::sin(t)};
}

std::vector<Int> cyclotomic_poly(long n) {
    // x^n - 1 divided by all Phi_d for proper divisors d; exact since each
    // quotient is monic with integer coefficients.
    std::vector<Int> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (long d = 1; d < n; d++) {
        if (n % d) continue;
        std::vector<Int> phi = cyclotomic_poly(d);
        std::vector<Int> q(poly.size() - phi.size() + 1, 0);
        for (long i = (long)q.size() - 1; i >= 0; i--) {
            Int c = poly[i + phi.size() - 1];
            q[i] = c;
            if (c != 0)
                for (size_t j = 0; j < phi.size(); j++) poly[i + j] -= c * phi[j];
        }
        poly = q;
    }
    return poly;
}

void CycScalar::rescale(long new_order) {
    if (new_order == order_) return;
    std::map<long, ExactScalar> out;
    long f = new_order / order_;
    for (auto& [e, c] : coef_) out[e * f] = c;
    order_ = new_order;
    coef_ = std::move(out);
}

void CycScalar::add(const RootOfUnity& r, const ExactScalar& c) {
    if (c.is_zero()) return;
    long n = llcm(order_, r.den);
    rescale(n);
    long e = r.num * (n / r.den);
    coef_[e] += c;
    if (coef_[e].is_zero()) coef_.erase(e);
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
    CycScalar r = *this;
    long n = llcm(r.order_, o.order_);
    r.rescale(n);
    for (auto& [e, c] : o.coef_) {
        long e2 = e * (n / o.order_);
        r.coef_[e2] += c;
        if (r.coef_[e2].is_zero()) r.coef_.erase(e2);
    }
    return r;
}

CycScalar CycScalar::operator-(const CycScalar& o) const {
    CycScalar neg = o;
    for (auto& [e, c] : neg.coef_) c = -c;
    return *this + neg;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
    CycScalar r;
    long n = llcm(order_, o.order_);
    r.order_ = n;
    for (auto& [e1, c1] : coef_)
        for (auto& [e2, c2] : o.coef_) {
            long e = (e1 * (n / order_) + e2 * (n / o.order_)) % n;
            ExactScalar prod = c1 * c2;
            r.coef_[e] += prod;
            if (r.coef_[e].is_zero()) r.coef_.erase(e);
        }
    return r;
}

CycScalar CycScalar::conj() const {
    CycScalar r;
    r.order_ = order_;
    for (auto& [e, c] : coef_) r.coef_[(order_ - e) % order_] = c;
    return r;
}

std::map<long, ExactScalar> CycScalar::reduced() const {
    std::vector<Int> phi = cyclotomic_poly(order_);
    long deg = (long)phi.size() - 1;
    std::vector<ExactScalar> p(order_ ? order_ : 1);
    for (auto& [e, c] : coef_) p[e] += c;
    // Long division by the monic Phi_order.
    for (long i = (long)p.size() - 1; i >= deg; i--) {
        if (p[i].is_zero()) continue;
        ExactScalar lead = p[i];
        for (long j = 0; j <= deg; j++)
            p[i - deg + j] -= ExactScalar(Rational(phi[j])) * lead;
    }
    std::map<long, ExactScalar> out;
    for (long i = 0; i < deg && i < (long)p.size(); i++)
        if (!p[i].is_zero()) out[i] = p[i];
    return out;
}

bool CycScalar::is_zero() const {
    if (coef_.empty()) return true;
    return reduced().empty();
}

bool CycScalar::is_exact_real(ExactScalar* out) const {
    auto r = reduced();
    if (r.size() > 1 || (r.size() == 1 && r.begin()->first != 0)) return false;
    if (out) *out = r.empty() ? ExactScalar() : r.begin()->second;
    return true;
}

std::complex<double> CycScalar::eval(const std::map<std::string, double>& bindings) const {
    std::complex<double> total = 0;
    for (auto& [e, c] : coef_)
        total += c.eval(bindings) * RootOfUnity(e, order_).value();
    return total;
}

std::string CycScalar::str() const {
    if (coef_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [e, c] : coef_) {
        if (!first) out << " + ";
        first = false;
        if (e == 0) {
            out << "(" << c.str() << ")";
        } else {
            out << "(" << c.str() << ")*e(" << e << "/" << order_ << ")";
        }
    }
    return out.str();
}

}  // namespace rtf
