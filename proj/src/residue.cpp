#include "rtf/residue.hpp"

#include <algorithm>

namespace rtf {

namespace {

// Multiplication in GF(p)[x] modulo a monic `mod` of degree f.
std::vector<long> polymulmod(const std::vector<long>& a, const std::vector<long>& b,
                             const std::vector<long>& mod, long p) {
    int f = (int)mod.size() - 1;
    std::vector<long> prod(2 * f - 1, 0);
    for (int i = 0; i < f; i++)
        for (int j = 0; j < f; j++) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int i = 2 * f - 2; i >= f; i--) {
        long c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (int j = 0; j < f; j++)
            prod[i - f + j] = ((prod[i - f + j] - c * mod[j]) % p + p) % p;
    }
    prod.resize(f);
    return prod;
}

}  // namespace

Fq::Fq(long p, int f) : p_(p), f_(f) {
    if (!is_prime(p)) throw std::invalid_argument("Fq characteristic must be prime");
    if (f < 1) throw std::invalid_argument("Fq degree must be positive");
    q_ = 1;
    for (int i = 0; i < f; i++) q_ *= p;
    if (f == 1) {
        mod_ = {0, 1};  // placeholder x; unused for f = 1
        for (long g = 1; g < p; g++) {
            long ord = 1, x = g % p;
            while (x != 1) { x = x * g % p; ord++; }
            if (ord == p - 1) { gen_ = {g}; break; }
        }
        mod_ = {(p - gen_[0]) % p, 1};
        build_tables();
        return;
    }
    // Lexicographically smallest monic modulus (by ascending coefficient
    // tuple) whose residue class of x generates the multiplicative group.
    std::vector<long> c(f, 0);
    for (;;) {
        int i = 0;
        while (i < f && c[i] == p - 1) { c[i] = 0; i++; }
        if (i == f) throw std::logic_error("no primitive polynomial found");
        c[i]++;
        mod_ = c;
        mod_.push_back(1);
        // x must have multiplicative order q-1; that also forces irreducibility.
        Elt x(f, 0);
        x[1] = 1;
        Elt acc = x;
        long ord = 1;
        bool ok = true;
        Elt id(f, 0);
        id[0] = 1;
        while (!(acc == id)) {
            if (std::all_of(acc.begin(), acc.end(), [](long v) { return v == 0; })) { ok = false; break; }
            acc = polymulmod(acc, x, mod_, p_);
            if (++ord > q_ - 1) { ok = false; break; }
        }
        if (ok && ord == q_ - 1) {
            gen_ = x;
            build_tables();
            return;
        }
    }
}

void Fq::build_tables() {
    by_dlog_.clear();
    dlog_.clear();
    Elt acc = one();
    for (long k = 0; k < q_ - 1; k++) {
        by_dlog_.push_back(acc);
        dlog_[acc] = k;
        acc = mul(acc, gen_);
    }
}

Fq::Elt Fq::one() const {
    Elt e(f_, 0);
    e[0] = 1;
    return e;
}

Fq::Elt Fq::from_int(long a) const {
    Elt e(f_, 0);
    e[0] = (a % p_ + p_) % p_;
    return e;
}

Fq::Elt Fq::add(const Elt& a, const Elt& b) const {
    Elt r(f_);
    for (int i = 0; i < f_; i++) r[i] = (a[i] + b[i]) % p_;
    return r;
}

Fq::Elt Fq::sub(const Elt& a, const Elt& b) const {
    Elt r(f_);
    for (int i = 0; i < f_; i++) r[i] = ((a[i] - b[i]) % p_ + p_) % p_;
    return r;
}

Fq::Elt Fq::neg(const Elt& a) const { return sub(zero(), a); }

Fq::Elt Fq::mul(const Elt& a, const Elt& b) const {
    if (f_ == 1) return {a[0] * b[0] % p_};
    return polymulmod(a, b, mod_, p_);
}

bool Fq::is_zero(const Elt& a) const {
    return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
}

long Fq::dlog(const Elt& a) const {
    auto it = dlog_.find(a);
    if (it == dlog_.end()) throw std::domain_error("dlog of zero");
    return it->second;
}

Fq::Elt Fq::from_dlog(long k) const {
    k %= (q_ - 1);
    if (k < 0) k += q_ - 1;
    return by_dlog_[k];
}

Fq::Elt Fq::inv(const Elt& a) const { return from_dlog(-dlog(a)); }

Fq::Elt Fq::pow(const Elt& a, long e) const {
    if (is_zero(a)) {
        if (e <= 0) throw std::domain_error("0^e with e <= 0");
        return zero();
    }
    return from_dlog(dlog(a) * e);
}

std::vector<Fq::Elt> Fq::elements() const {
    std::vector<Elt> out;
    out.push_back(zero());
    for (long k = 0; k < q_ - 1; k++) out.push_back(by_dlog_[k]);
    return out;
}

CycScalar additive_char(const Fq& k, const Fq::Elt& a) {
    // absolute trace down to GF(p)
    Fq::Elt t = k.zero(), frob = a;
    for (int i = 0; i < k.f(); i++) {
        t = k.add(t, frob);
        frob = k.pow(frob, k.p());
    }
    for (int i = 1; i < k.f(); i++)
        if (t[i] != 0) throw std::logic_error("trace not in prime field");
    return CycScalar::root(RootOfUnity(t[0], k.p()));
}

CycScalar gauss_sum(const Fq& k, long chi_dlog_mult) {
    CycScalar total;
    for (long j = 0; j < k.q() - 1; j++) {
        CycScalar chi = CycScalar::root(RootOfUnity(chi_dlog_mult * j, k.q() - 1));
        total += chi * additive_char(k, k.from_dlog(j));
    }
    return total;
}

}  // namespace rtf
