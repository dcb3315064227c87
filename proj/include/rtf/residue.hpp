#pragma once

#include <optional>
#include <vector>

#include "rtf/cyclo.hpp"

namespace rtf {

/**
 * Small finite field GF(p^f) as polynomials over GF(p) modulo a
 * deterministically chosen irreducible h (lexicographically smallest
 * among those whose root generates the multiplicative group).
 * Elements are coefficient vectors of length f; sizes here are tiny
 * (q <= 169 in every caller), so discrete logs are table lookups.
 */
class Fq {
public:
    Fq(long p, int f = 1);

    long p() const { return p_; }
    int f() const { return f_; }
    long q() const { return q_; }
    const std::vector<long>& modulus() const { return mod_; }

    using Elt = std::vector<long>;  // length f, entries in [0, p)

    Elt zero() const { return Elt(f_, 0); }
    Elt one() const;
    Elt from_int(long a) const;   // prime-subfield element a mod p
    Elt generator() const { return gen_; }

    Elt add(const Elt&, const Elt&) const;
    Elt sub(const Elt&, const Elt&) const;
    Elt neg(const Elt&) const;
    Elt mul(const Elt&, const Elt&) const;
    Elt inv(const Elt&) const;
    Elt pow(const Elt&, long e) const;
    bool is_zero(const Elt& a) const;

    // Index in [0, q-1) with g^dlog = a; throws on zero.
    long dlog(const Elt& a) const;
    Elt from_dlog(long k) const;

    // All elements, in a fixed enumeration order.
    std::vector<Elt> elements() const;

private:
    long p_, q_;
    int f_;
    std::vector<long> mod_;  // monic modulus, ascending, length f+1
    Elt gen_;
    std::vector<Elt> by_dlog_;
    std::map<Elt, long> dlog_;

    void build_tables();
};

// Standard additive character value e(a/p) promoted to GF(p^f) via the
// absolute trace; `a` is a field element.
CycScalar additive_char(const Fq& k, const Fq::Elt& a);

// Gauss sum sum_{t in k^*} chi(t) e(Tr t / p) for chi = g -> e(chi_dlog/ (q-1)).
CycScalar gauss_sum(const Fq& k, long chi_dlog_mult);

}  // namespace rtf
