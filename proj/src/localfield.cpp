#include "rtf/localfield.hpp"

#include <sstream>

namespace rtf {

void LocalFieldDesc::validate() const {
    if (!is_prime(p) || p == 2)
        throw std::invalid_argument("residue characteristic must be an odd prime");
    if (f != 1)
        throw std::invalid_argument("truncated arithmetic is implemented for prime q only");
    if (M < 2) throw std::invalid_argument("precision M must be at least 2");
}

Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = a % m, r = m, old_s = 1, s = 0;
    if (old_r < 0) old_r += m;
    while (r != 0) {
        Int qt = old_r / r;
        Int t = old_r - qt * r; old_r = r; r = t;
        t = old_s - qt * s; old_s = s; s = t;
    }
    if (old_r != 1) throw std::domain_error("mod_inverse of a non-unit");
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

std::optional<Int> sqrt_mod_pM(const Int& a, long p, int M) {
    long a0 = (long)(a % p);
    if (a0 < 0) a0 += p;
    if (a0 == 0) return std::nullopt;
    long r0 = -1;
    for (long x = 1; x < p; x++)
        if (x * x % p == a0) { r0 = x; break; }
    if (r0 < 0) return std::nullopt;
    Int pk = p, x = r0;
    for (int k = 1; k < M; k *= 2) {
        pk = pk * pk;
        Int target = a % pk;
        // Newton: x <- (x + a/x) / 2
        x = (x + target * mod_inverse(x, pk)) % pk;
        x = x * mod_inverse(Int(2), pk) % pk;
    }
    Int mod = ipow(Int(p), M);
    x %= mod;
    if (x < 0) x += mod;
    return x;
}

// ---------------------------------------------------------------- QuadExt

QuadExt::QuadExt(const LocalFieldDesc& F, ExtKind kind) : F_(F), kind_(kind) {
    F_.validate();
    kF_ = std::make_shared<Fq>(F_.p, F_.f);
    if (kind_ == ExtKind::Unramified) {
        kE_ = std::make_shared<Fq>(F_.p, 2 * F_.f);
        // kE modulus x^2 + c1 x + c0 gives tau^2 = T tau - N0.
        const auto& m = kE_->modulus();
        T_ = (F_.p - m[1]) % F_.p;
        N0_ = m[0];
    } else {
        kE_ = kF_;
    }
}

PadicElem QuadExt::tau() const {
    if (kind_ != ExtKind::Unramified) throw std::logic_error("tau needs the unramified kind");
    return PadicElem::make(*this, false, 0, 0, 1);
}

PadicElem QuadExt::pi_E() const {
    switch (kind_) {
        case ExtKind::Unramified: return PadicElem::make(*this, false, 1, 1, 0);
        case ExtKind::Ramified: return PadicElem::make(*this, false, 1, 1, 0);
        default: throw std::logic_error("pi_E undefined for the split kind");
    }
}

PadicElem QuadExt::lift(const PadicElem& x) const {
    if (!x.in_base()) throw std::logic_error("lift expects a base element");
    if (x.state() == PadicElem::State::Zero) return PadicElem::zero(*this, false);
    int e_scale = ramification_e();
    PadicElem r = x;
    r.base_ = false;
    r.e_ = x.e_ * e_scale;
    r.b_ = 0;
    return r;
}

// ---------------------------------------------------------------- PadicElem

PadicElem PadicElem::zero(const QuadExt& E, bool base) {
    PadicElem z;
    z.E_ = &E;
    z.base_ = base;
    z.state_ = State::Zero;
    return z;
}

PadicElem PadicElem::make(const QuadExt& E, bool base, long e, Int a, Int b) {
    if (base && b != 0) throw std::logic_error("base element with a tau part");
    PadicElem x;
    x.E_ = &E;
    x.base_ = base;
    x.state_ = State::Known;
    x.e_ = e;
    x.prec_ = E.M();
    x.a_ = std::move(a);
    x.b_ = std::move(b);
    x.normalize();
    return x;
}

PadicElem PadicElem::from_int(const QuadExt& E, bool base, const Int& v) {
    return make(E, base, 0, v, 0);
}

PadicElem PadicElem::from_rational(const QuadExt& E, bool base, const Rational& v) {
    if (v == 0) return zero(E, base);
    Int num = numerator(v), den = denominator(v);
    long e = 0;
    while (num % E.p() == 0) { num /= E.p(); e++; }
    while (den % E.p() == 0) { den /= E.p(); e--; }
    Int mod = E.F().unit_modulus();
    Int a = num % mod * mod_inverse(den % mod, mod) % mod;
    PadicElem x = make(E, base, 0, a, 0);
    x.e_ += e * (base ? 1 : E.ramification_e());
    return x;
}

void PadicElem::normalize() {
    if (state_ != State::Known) return;
    long p = E_->p();
    bool ram = !base_ && E_->kind() == ExtKind::Ramified;
    for (;;) {
        if (prec_ <= 0) {
            state_ = State::BelowPrec;  // e_ already holds the valuation floor
            a_ = b_ = 0;
            return;
        }
        Int mod = ipow(Int(p), prec_);
        a_ %= mod; if (a_ < 0) a_ += mod;
        b_ %= mod; if (b_ < 0) b_ += mod;
        if (a_ == 0 && b_ == 0) {
            e_ += (ram ? 2 : 1) * prec_;  // valuation floor
            prec_ = 0;
            continue;
        }
        if (ram) {
            if (a_ % p != 0) return;
            if (b_ % p != 0) {
                // pi_E^e (a + b pi_E) = pi_E^{e+1} (b + (a/p) pi_E)
                Int na = b_, nb = a_ / p;
                a_ = na;
                b_ = nb;
                e_ += 1;
                prec_ -= 1;  // the promoted a/p digit window shrinks by one
                continue;
            }
            a_ /= p;
            b_ /= p;
            e_ += 2;
            prec_ -= 1;
            continue;
        }
        if (a_ % p != 0 || (!base_ && b_ % p != 0)) return;
        a_ /= p;
        if (!base_) b_ /= p;
        e_ += 1;
        prec_ -= 1;
    }
}

long PadicElem::valuation() const {
    switch (state_) {
        case State::Known: return e_;
        case State::Zero:
            throw std::domain_error("valuation of exact zero");
        default:
            throw PrecisionExhausted("valuation only bounded below: v >= " + std::to_string(e_));
    }
}

bool PadicElem::valuation_at_least(long cutoff) const {
    switch (state_) {
        case State::Zero: return true;
        case State::Known: return e_ >= cutoff;
        default:
            if (e_ >= cutoff) return true;
            throw PrecisionExhausted("membership undecidable at precision M");
    }
}

const Int& PadicElem::unit_a() const {
    if (state_ != State::Known) throw PrecisionExhausted("no unit part available");
    return a_;
}

const Int& PadicElem::unit_b() const {
    if (state_ != State::Known) throw PrecisionExhausted("no unit part available");
    return b_;
}

long PadicElem::slot() const {
    if (state_ != State::Known) throw PrecisionExhausted("no certified slot");
    return e_;
}

PadicElem PadicElem::operator-() const {
    PadicElem r = *this;
    if (r.state_ == State::Known) {
        Int mod = ipow(Int(E_->p()), r.prec_);
        r.a_ = (mod - r.a_ % mod) % mod;
        r.b_ = (mod - r.b_ % mod) % mod;
    }
    return r;
}

namespace {

// Coefficient pair of (a + b gen) * pi_E^k for k >= 0.
void shift_unit(const QuadExt& E, bool base, Int& a, Int& b, long k) {
    if (base || E.kind() != ExtKind::Ramified) {
        Int f = ipow(Int(E.p()), k);
        a *= f;
        b *= f;
        return;
    }
    if (k & 1) {
        Int na = b * E.p(), nb = a;
        a = na;
        b = nb;
        k -= 1;
    }
    Int f = ipow(Int(E.p()), k / 2);
    a *= f;
    b *= f;
}

// Digits of coefficient window gained by a slot shift of k.
int shift_digits(const QuadExt& E, bool base, long k) {
    if (base || E.kind() != ExtKind::Ramified) return (int)k;
    return (int)(k / 2);
}

}  // namespace

PadicElem PadicElem::operator+(const PadicElem& o) const {
    if (state_ == State::Zero) return o;
    if (o.state_ == State::Zero) return *this;
    if (E_ != o.E_ || base_ != o.base_)
        throw std::logic_error("mixed-ring addition needs an explicit lift");
    if (state_ == State::BelowPrec && o.state_ == State::BelowPrec) {
        PadicElem r = *this;
        r.e_ = std::min(e_, o.e_);
        return r;
    }
    if (state_ == State::BelowPrec || o.state_ == State::BelowPrec) {
        const PadicElem& known = state_ == State::Known ? *this : o;
        const PadicElem& below = state_ == State::Known ? o : *this;
        if (known.e_ >= below.e_) {
            PadicElem r = below;
            return r;
        }
        PadicElem r = known;
        r.prec_ = std::min(r.prec_, shift_digits(*E_, base_, below.e_ - known.e_));
        r.normalize();
        return r;
    }
    const PadicElem& lo = e_ <= o.e_ ? *this : o;
    const PadicElem& hi = e_ <= o.e_ ? o : *this;
    long k = hi.e_ - lo.e_;
    Int a = hi.a_, b = hi.b_;
    shift_unit(*E_, base_, a, b, k);
    PadicElem r = lo;
    r.prec_ = std::min({lo.prec_, hi.prec_ + shift_digits(*E_, base_, k), E_->M()});
    r.a_ = lo.a_ + a;
    r.b_ = lo.b_ + b;
    r.normalize();
    return r;
}

PadicElem PadicElem::operator-(const PadicElem& o) const { return *this + (-o); }

PadicElem PadicElem::operator*(const PadicElem& o) const {
    if (E_ != o.E_) throw std::logic_error("elements from different extensions");
    if (base_ != o.base_) {
        // implicit lift of the base factor
        if (base_) return E_->lift(*this) * o;
        return *this * E_->lift(o);
    }
    if (state_ == State::Zero || o.state_ == State::Zero) return zero(*E_, base_);
    if (state_ == State::BelowPrec || o.state_ == State::BelowPrec) {
        long floor1 = e_, floor2 = o.e_;
        PadicElem r = zero(*E_, base_);
        r.state_ = State::BelowPrec;
        r.e_ = floor1 + floor2;
        return r;
    }
    PadicElem r = *this;
    r.e_ = e_ + o.e_;
    r.prec_ = std::min(prec_, o.prec_);
    if (base_) {
        r.a_ = a_ * o.a_;
        r.b_ = 0;
    } else if (E_->kind() == ExtKind::Ramified) {
        r.a_ = a_ * o.a_ + Int(E_->p()) * b_ * o.b_;
        r.b_ = a_ * o.b_ + b_ * o.a_;
    } else {
        r.a_ = a_ * o.a_ - Int(E_->N0()) * b_ * o.b_;
        r.b_ = a_ * o.b_ + b_ * o.a_ + Int(E_->T()) * b_ * o.b_;
    }
    r.normalize();
    return r;
}

PadicElem PadicElem::conj() const {
    if (base_ || state_ == State::Zero) return *this;
    PadicElem r = *this;
    if (state_ == State::BelowPrec) return r;
    if (E_->kind() == ExtKind::Ramified) {
        // conj(pi_E) = -pi_E
        bool flip = (e_ % 2 + 2) % 2 == 1;
        r.b_ = -b_;
        if (flip) { r.a_ = -r.a_; r.b_ = -r.b_; }
    } else {
        r.a_ = a_ + Int(E_->T()) * b_;
        r.b_ = -b_;
    }
    r.normalize();
    return r;
}

PadicElem PadicElem::norm() const {
    if (base_) return *this * *this;
    if (state_ == State::Zero) return zero(*E_, true);
    if (state_ == State::BelowPrec) {
        PadicElem r = zero(*E_, true);
        r.state_ = State::BelowPrec;
        // valuation floor converts from pi_E units to pi units
        r.e_ = E_->kind() == ExtKind::Ramified ? e_ : 2 * e_;
        return r;
    }
    PadicElem r = zero(*E_, true);
    r.state_ = State::Known;
    r.prec_ = prec_;
    if (E_->kind() == ExtKind::Ramified) {
        r.e_ = e_;
        r.a_ = a_ * a_ - Int(E_->p()) * b_ * b_;
        if ((e_ % 2 + 2) % 2 == 1) r.a_ = -r.a_;  // N(pi_E) = -p
    } else {
        r.e_ = 2 * e_;
        r.a_ = a_ * (a_ + Int(E_->T()) * b_) + Int(E_->N0()) * b_ * b_;
    }
    r.b_ = 0;
    r.normalize();
    return r;
}

PadicElem PadicElem::trace() const {
    if (base_) return *this + *this;
    PadicElem r = zero(*E_, true);
    if (state_ == State::Zero) return r;
    if (state_ == State::BelowPrec) {
        r.state_ = State::BelowPrec;
        // floor converts from pi_E units to pi units, rounding up
        r.e_ = E_->kind() == ExtKind::Ramified ? (e_ + 1) / 2 : e_;
        return r;
    }
    r.state_ = State::Known;
    r.prec_ = prec_;
    if (E_->kind() == ExtKind::Unramified) {
        r.e_ = e_;
        r.a_ = 2 * a_ + Int(E_->T()) * b_;
    } else if ((e_ % 2 + 2) % 2 == 0) {
        r.e_ = e_ / 2;
        r.a_ = 2 * a_;
    } else {
        // pi_E^e (a + b pi_E) = p^{(e-1)/2} (p b + a pi_E), trace 2 p^{(e+1)/2} b
        r.e_ = (e_ + 1) / 2;
        r.a_ = 2 * b_;
    }
    r.normalize();
    return r;
}

PadicElem PadicElem::inverse() const {
    if (state_ == State::Zero) throw std::domain_error("inverse of zero");
    if (state_ == State::BelowPrec) throw PrecisionExhausted("inverse of an uncertified element");
    if (base_) {
        Int mod = ipow(Int(E_->p()), prec_);
        PadicElem r = *this;
        r.e_ = -e_;
        r.a_ = mod_inverse(a_ % mod, mod);
        r.normalize();
        return r;
    }
    PadicElem n = norm();
    PadicElem c = conj();
    return c * E_->lift(n.inverse());
}

Fq::Elt PadicElem::residue() const {
    if (state_ != State::Known || prec_ < 1)
        throw PrecisionExhausted("no certified residue");
    long p = E_->p();
    long ra = (long)(a_ % p), rb = (long)(b_ % p);
    if (ra < 0) ra += p;
    if (rb < 0) rb += p;
    if (base_ || E_->kind() != ExtKind::Unramified) return {ra};
    return {ra, rb};
}

PadicElem PadicElem::teichmuller() const {
    if (state_ != State::Known || e_ != 0)
        throw std::domain_error("teichmuller needs a unit");
    return E_->teich_of_residue(residue(), base_);
}

PadicElem QuadExt::teich_of_residue(const Fq::Elt& r, bool base) const {
    Int a = r[0], b = r.size() > 1 ? r[1] : 0;
    if (base && b != 0) throw std::logic_error("residue not in the base field");
    // x -> x^q contracts toward the root of unity with this residue; the
    // limit is exact, so full precision is legitimate at every step.
    long qr = base || kind_ != ExtKind::Unramified ? q() : q() * q();
    PadicElem x = PadicElem::make(*this, base, 0, a, b);
    for (int i = 0; i <= M(); i++) {
        PadicElem acc = x;
        for (long e = 1; e < qr; e++) acc = acc * x;
        acc.prec_ = M();
        acc.normalize();
        x = acc;
    }
    return x;
}

std::optional<PadicElem> QuadExt::solve_norm(const PadicElem& c) const {
    if (c.state() != PadicElem::State::Known || !c.in_base())
        throw std::domain_error("solve_norm needs a certified base unit times p^k");
    long v = c.valuation();
    if (kind_ == ExtKind::Unramified) {
        if (v % 2 != 0) return std::nullopt;
        // residue solution via discrete log, then square-root refinement
        Fq::Elt ru = c.residue();
        long dc = kE().dlog({ru[0], 0});
        long qv = q();
        if (dc % (qv + 1) != 0) throw std::logic_error("base residue with bad dlog");
        PadicElem y0 = teich_of_residue(kE().from_dlog(dc / (qv + 1)), false);
        PadicElem ratio = c * PadicElem::make(*this, true, -v, 1, 0) * y0.norm().inverse();
        auto s = sqrt_mod_pM(ratio.unit_a(), p(), M());
        if (!s) throw std::logic_error("unramified norm refinement failed");
        PadicElem delta = PadicElem::make(*this, true, 0, *s, 0);
        PadicElem x = y0 * lift(delta) * PadicElem::make(*this, false, v / 2, 1, 0);
        return x;
    }
    if (kind_ == ExtKind::Ramified) {
        // N(pi_E^v (a)) = (-p)^v a^2
        Int sign = v % 2 == 0 ? 1 : -1;
        PadicElem u = c * PadicElem::make(*this, true, -v, sign, 0);
        auto s = sqrt_mod_pM(u.unit_a(), p(), M());
        if (!s) return std::nullopt;
        return PadicElem::make(*this, false, v, *s, 0);
    }
    throw std::logic_error("solve_norm undefined for the split kind");
}

std::string PadicElem::str() const {
    std::ostringstream out;
    switch (state_) {
        case State::Zero: return "0";
        case State::BelowPrec:
            out << "O(pi^" << e_ << ")";
            return out.str();
        default: break;
    }
    out << "pi^" << e_ << "*(" << a_;
    if (!base_) out << " + " << b_ << "*" << (E_->kind() == ExtKind::Ramified ? "piE" : "tau");
    out << " : " << prec_ << " digits)";
    return out.str();
}

}  // namespace rtf
