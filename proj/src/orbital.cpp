#include "rtf/orbital.hpp"

#include <algorithm>

namespace rtf {

long rational_valuation(const Rational& r, long p) {
    if (r == 0) throw std::invalid_argument("valuation of zero");
    Int nu = numerator(r), de = denominator(r);
    long v = 0;
    while (nu % p == 0) { nu /= p; v++; }
    while (de % p == 0) { de /= p; v--; }
    return v;
}

namespace {

Rational p_pow(long p, long e) {
    return e >= 0 ? Rational(ipow(Int(p), (unsigned)e))
                  : Rational(Int(1), ipow(Int(p), (unsigned)-e));
}

long mod2(long v) { return ((v % 2) + 2) % 2; }

ExactScalar sym_vFE2() {
    return ExactScalar::symbol("vFE") * ExactScalar::symbol("vFE");
}

// Components (u, v) with x = u + v * gen, both returned as base elements.
// Computed algebraically through traces so that BelowPrec states propagate
// soundly instead of being peeled apart digit by digit.
std::pair<PadicElem, PadicElem> ecomponents(const PadicElem& x) {
    const QuadExt& E = x.ext();
    PadicElem half = E.from_rational(Rational(1, 2));
    PadicElem u = x.trace() * half;
    PadicElem diff = x - x.conj();
    PadicElem ratio;
    if (E.kind() == ExtKind::Unramified) {
        PadicElem dtau = E.tau() - E.tau().conj();
        ratio = diff * dtau.inverse();
    } else {
        ratio = diff * (E.pi_E() * E.lift(E.from_int(2))).inverse();
    }
    PadicElem v = ratio.trace() * half;
    return {u, v};
}

struct Mat2 {
    PadicElem a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 scale(const Mat2& x, const PadicElem& s) {
    return {x.a * s, x.b * s, x.c * s, x.d * s};
}

bool entry_val_at_least(const PadicElem& x, long cutoff) {
    return x.is_exact_zero() || x.valuation_at_least(cutoff);
}

// Matrix of w -> A w + B conj(w) in the basis (1, p^n gen) of the order
// o + p^n o_E, entries as base elements.
Mat2 order_matrix(const QuadExt& E, const PadicElem& A, const PadicElem& B, int n) {
    long p = E.p();
    PadicElem pn = E.from_rational(p_pow(p, n));
    PadicElem pn_inv = E.from_rational(p_pow(p, -n));
    auto [u1, v1] = ecomponents(A + B);
    Mat2 M;
    M.a = u1;
    M.c = v1 * pn_inv;
    if (E.kind() == ExtKind::Unramified) {
        auto [u2, v2] = ecomponents(A * E.tau() + B * E.tau().conj());
        M.b = u2 * pn;
        M.d = v2;
    } else {
        // T(p^n pi_E) = p^n pi_E (A - B) since conj(pi_E) = -pi_E
        auto [u2, v2] = ecomponents(A - B);
        M.b = v2 * E.from_rational(p_pow(p, n + 1));
        M.d = u2;
    }
    return M;
}

// g in Z R^x for R = End(o + p^n o_E): even determinant valuation W and
// the centrally rescaled matrix integral (the determinant of the rescaled
// matrix is then a unit, so integrality already gives invertibility).
bool lattice_member(const QuadExt& E, const Mat2& M, long W) {
    if (mod2(W) != 0) return false;
    PadicElem lam = E.from_rational(p_pow(E.p(), -W / 2));
    for (const PadicElem* e : {&M.a, &M.b, &M.c, &M.d})
        if (!entry_val_at_least(*e * lam, 0)) return false;
    return true;
}

long residue_mod_p(const PadicElem& x) {
    if (x.is_exact_zero() || x.valuation_at_least(1)) return 0;
    return x.residue()[0];
}

// Minimal coset depth at which the integrand is exactly constant: unit
// multiplications of the alpha variable act by an integral change of
// basis once U_E^m lies in the order's unit group, and z-coset moves are
// conjugations by 1 + zeta^{-1} in U_F U_E^m (Hilbert 90), so exactness
// needs U_E^m inside (o + p^n o_E)^x together with m at least the
// conductor depth of the character.
int minimal_mesh(PlaceKind kind, int n) {
    switch (kind) {
        case PlaceKind::Sigma1:
        case PlaceKind::Sigma2:
        case PlaceKind::Sigma3:
            return 2;
        case PlaceKind::GoodInert:
            return std::max(n, 1);
        case PlaceKind::GoodRamified:
            return std::max(2 * n, 2);
        case PlaceKind::GoodSplit:
            return n + 1;
        default:
            throw MismatchedPlaceKind("orbital integrals are non-archimedean");
    }
}

CycScalar oracle_sigma1(const OrbitalContext& ctx, const RegularOrbitPoint& pt, int m) {
    const QuadExt& E = ctx.E();
    auto alphas = torus_coset_reps(E, m);
    auto zs = norm_one_reps(E, m);
    long cnt = (long)unit_coset_reps(E, m).size();
    CycScalar total;
    PadicElem eps = E.from_rational(Rational(E.p()));
    for (const PadicElem& alpha : alphas) {
        CycScalar oval = ctx.omega().evalc(alpha);
        for (const PadicElem& z : zs) {
            // reduced norm N(alpha)(1 - eps N(zx)); Z R^x is the even-
            // valuation part of the division algebra
            PadicElem nrd = alpha.norm() *
                            (E.from_int(1) - eps * (z * *pt.x).norm());
            if (mod2(nrd.valuation()) == 0) total += oval;
        }
    }
    return total * CycScalar(ExactScalar(Rational(Int(1), Int(cnt) * cnt)) * sym_vFE2());
}

CycScalar oracle_sigma2(const OrbitalContext& ctx, const RegularOrbitPoint& pt, int m) {
    const QuadExt& E = ctx.E();
    auto alphas = torus_coset_reps(E, m);
    auto zs = norm_one_reps(E, m);
    long cnt = (long)unit_coset_reps(E, m).size();
    const ToricChar& theta = ctx.omega();
    PadicElem eps = E.from_rational(Rational(E.p()));
    CycScalar total;
    for (const PadicElem& alpha : alphas) {
        CycScalar oval = ctx.omega().evalc(alpha) *
                         CycScalar::root(theta.eval(alpha).inverse());
        for (const PadicElem& z : zs) {
            PadicElem zx = z * *pt.x;
            // gamma(x, z) lies in U_D^1 iff N(zx) is integral
            bool in_unit = zx.norm().valuation_at_least(0);
            PadicElem nrd = alpha.norm() * (E.from_int(1) - eps * zx.norm());
            if (in_unit != (mod2(nrd.valuation()) == 0))
                throw std::logic_error("inconsistent membership tests at Sigma2");
            if (in_unit) total += oval;
        }
    }
    return total * CycScalar(ExactScalar(Rational(Int(1), Int(cnt) * cnt)) * sym_vFE2());
}

CycScalar oracle_sigma3(const OrbitalContext& ctx, const RegularOrbitPoint& pt, int m) {
    const QuadExt& E = ctx.E();
    long p = E.p();
    const AdmissiblePair& pr = *ctx.pair();
    auto alphas = torus_coset_reps(E, m);
    auto zs = norm_one_reps(E, m);
    long cnt = (long)unit_coset_reps(E, m).size();
    PadicElem pinv = E.from_rational(Rational(1, p));
    PadicElem pelt = E.from_rational(Rational(p));
    PadicElem one = E.from_int(1), zero = PadicElem::zero(E, true);
    // D = M_2(F) through the regular representation of E on the basis
    // (pi_E, 1): a + b pi_E maps to [[a, b], [p b, a]] and the conjugation
    // intertwiner is diag(1, -1), so the lower-left entries carry p and
    // E^x U_J^1 sits inside the standard Iwahori order.
    Mat2 phi_pi_inv{zero, pinv, one, zero};
    CycScalar total;
    for (const PadicElem& alpha : alphas) {
        long W = alpha.norm().valuation() + pt.v_one_minus_xi;
        CycScalar oval = ctx.omega().evalc(alpha);
        auto [ua, va] = ecomponents(alpha);
        Mat2 Ma{ua, va, va * pelt, ua};
        for (const PadicElem& z : zs) {
            auto [uc, vc] = ecomponents(z * *pt.x);
            Mat2 G{one + uc, -vc, vc * pelt, one - uc};
            Mat2 h = mul(Ma, G);
            long modd = mod2(W);
            if (modd) h = mul(phi_pi_inv, h);
            h = scale(h, E.from_rational(p_pow(p, -(W - modd) / 2)));
            // membership in Z mu(q-1) U_J^1 after removing the pi_E power
            if (!entry_val_at_least(h.a, 0) || !entry_val_at_least(h.b, 0) ||
                !entry_val_at_least(h.d, 0) || !entry_val_at_least(h.c, 1))
                continue;
            long r11 = residue_mod_p(h.a), r22 = residue_mod_p(h.d);
            if (r11 == 0 || r11 != r22) continue;
            long rinv = mod_inverse(Int(r11), Int(p)).convert_to<long>();
            long ap = residue_mod_p(h.b) * rinv % p;
            long bp = residue_mod_p(h.c * pinv) * rinv % p;
            CycScalar f = CycScalar::root(psi_tilde(p, pr.beta * (ap + bp)).inverse());
            if (pr.sign == -1 && modd == 1) f = CycScalar(ExactScalar(-1)) * f;
            total += oval * f;
        }
    }
    return total * CycScalar(ExactScalar(Rational(Int(1), Int(4) * cnt * cnt)) * sym_vFE2());
}

CycScalar oracle_good_nonsplit(const OrbitalContext& ctx, const RegularOrbitPoint& pt,
                               int m) {
    const QuadExt& E = ctx.E();
    int n = ctx.n_omega();
    bool ram = E.kind() == ExtKind::Ramified;
    auto alphas = torus_coset_reps(E, m);
    auto zs = norm_one_reps(E, m);
    long cnt = (long)unit_coset_reps(E, m).size();
    CycScalar total;
    for (const PadicElem& alpha : alphas) {
        long W = alpha.norm().valuation() + pt.v_one_minus_xi;
        if (mod2(W) != 0) continue;
        CycScalar oval = ctx.omega().evalc(alpha);
        for (const PadicElem& z : zs) {
            PadicElem B = alpha * z * *pt.x;
            if (lattice_member(E, order_matrix(E, alpha, B, n), W)) total += oval;
        }
    }
    Rational unit_frac = ram ? Rational(1, 4) : Rational(1);
    return total * CycScalar(ExactScalar(unit_frac / (Rational(cnt) * cnt)) * sym_vFE2());
}

CycScalar oracle_good_split(const OrbitalContext& ctx, const RegularOrbitPoint& pt,
                            int m) {
    long p = ctx.p();
    const QuadExt& base = ctx.base_ring();
    const UnitChar& om = ctx.omega_split();
    int n = ctx.n_omega();
    long vx = pt.v_xi, v1 = pt.v_one_minus_xi;
    std::vector<long> units;
    long pm = 1;
    for (int i = 0; i < m; i++) pm *= p;
    for (long u = 1; u < pm; u++)
        if (u % p != 0) units.push_back(u);
    long cnt = (long)units.size();
    Rational pn = p_pow(p, n);
    CycScalar total;
    // Certified support window: if the rescaled matrix of
    // w -> alpha w + beta conj(w) preserves the lattice o + p^n(o x o),
    // then p^n alpha_i and p^n beta_2 have valuation >= W/2, forcing
    // v(alpha_1/alpha_2) in [v(1-xi) - 2n, 2n - v(1-xi)] and the
    // off-diagonal valuations below; outside these ranges membership
    // provably fails, so the finite sum is complete.
    for (long s = v1 - 2 * n; s <= 2 * n - v1; s++) {
        long W = s + v1;
        if (mod2(W) != 0) continue;
        long c1lo = std::min(W / 2 - s, 0L);
        long c1hi = vx - (W / 2 - n);
        if (c1hi < c1lo) continue;
        for (long u : units) {
            Rational t = Rational(u) * p_pow(p, s);
            CycScalar oval = CycScalar::root(om.eval(base.from_rational(t)));
            for (long vc1 = c1lo; vc1 <= c1hi; vc1++)
                for (long w : units) {
                    Rational c1 = Rational(w) * p_pow(p, vc1);
                    Rational c2 = pt.xi / c1;
                    // matrix of w -> alpha w + alpha c conj(w) for
                    // alpha = (t, 1) in the basis ((1,1), (p^n, 0))
                    Rational e11 = 1 + c2;
                    Rational e12 = pn * c2;
                    Rational e21 = (t * (1 + c1) - (1 + c2)) / pn;
                    Rational e22 = t - c2;
                    long thr = W / 2;
                    auto ok = [&](const Rational& r) {
                        return r == 0 || rational_valuation(r, p) >= thr;
                    };
                    if (ok(e11) && ok(e12) && ok(e21) && ok(e22)) total += oval;
                }
        }
    }
    ExactScalar vU2 = ExactScalar::symbol("vU") * ExactScalar::symbol("vU");
    return total * CycScalar(ExactScalar(Rational(Int(1), Int(cnt) * cnt)) * vU2);
}

}  // namespace

OrbitalContext OrbitalContext::sigma1(const LocalFieldDesc& F) {
    OrbitalContext ctx(PlaceKind::Sigma1, std::make_shared<QuadExt>(F, ExtKind::Unramified));
    ctx.omega_ = ToricChar::unramified(*ctx.E_, 0);
    return ctx;
}

OrbitalContext OrbitalContext::sigma2(const LocalFieldDesc& F, const AdmissiblePair& pair) {
    if (pair.level != 0 || pair.q != F.q())
        throw MismatchedPlaceKind("Sigma2 needs a level-0 pair at this residue size");
    OrbitalContext ctx(PlaceKind::Sigma2, std::make_shared<QuadExt>(F, ExtKind::Unramified));
    ctx.pair_ = canonical(pair);
    ctx.omega_ = theta_of(*ctx.E_, *ctx.pair_);
    return ctx;
}

OrbitalContext OrbitalContext::sigma3(const LocalFieldDesc& F, const AdmissiblePair& pair) {
    if (pair.level != 1 || pair.q != F.q())
        throw MismatchedPlaceKind("Sigma3 needs a level-1/2 pair at this residue size");
    OrbitalContext ctx(PlaceKind::Sigma3, std::make_shared<QuadExt>(F, ExtKind::Ramified));
    ctx.pair_ = canonical(pair);
    ctx.omega_ = theta_of(*ctx.E_, *ctx.pair_);
    return ctx;
}

OrbitalContext OrbitalContext::inert(const LocalFieldDesc& F, long a, long c) {
    OrbitalContext ctx(PlaceKind::GoodInert, std::make_shared<QuadExt>(F, ExtKind::Unramified));
    ctx.omega_ = ToricChar::unramified(*ctx.E_, a, c);
    return ctx;
}

OrbitalContext OrbitalContext::ramified(const LocalFieldDesc& F, int sign, long two_beta) {
    OrbitalContext ctx(PlaceKind::GoodRamified, std::make_shared<QuadExt>(F, ExtKind::Ramified));
    ctx.omega_ = ToricChar::ramified(*ctx.E_, sign, two_beta);
    return ctx;
}

OrbitalContext OrbitalContext::split(const LocalFieldDesc& F, long b, long c,
                                     RootOfUnity at_pi) {
    OrbitalContext ctx(PlaceKind::GoodSplit, std::make_shared<QuadExt>(F, ExtKind::Unramified));
    ctx.split_omega_ = UnitChar(*ctx.E_, b, c, at_pi);
    return ctx;
}

const QuadExt& OrbitalContext::E() const {
    if (kind_ == PlaceKind::GoodSplit)
        throw MismatchedPlaceKind("split places have no quadratic field");
    return *E_;
}

int OrbitalContext::n_omega() const {
    return kind_ == PlaceKind::GoodSplit ? split_omega_->n_conductor() : omega_->n_omega();
}

const ToricChar& OrbitalContext::omega() const {
    if (!omega_) throw MismatchedPlaceKind("no toric character at a split place");
    return *omega_;
}

const UnitChar& OrbitalContext::omega_split() const {
    if (!split_omega_) throw MismatchedPlaceKind("omega_split is for split places");
    return *split_omega_;
}

RegularOrbitPoint realize_orbit_point(const OrbitalContext& ctx, const Rational& xi,
                                      unsigned variant) {
    if (xi == 0 || xi == 1) throw std::invalid_argument("regular orbits need xi != 0, 1");
    long p = ctx.p();
    RegularOrbitPoint pt;
    pt.xi = xi;
    pt.v_xi = rational_valuation(xi, p);
    pt.v_one_minus_xi = rational_valuation(1 - xi, p);
    if (ctx.kind() == PlaceKind::GoodSplit) {
        pt.realizable = true;
        std::vector<Rational> cand = {Rational(1), Rational(2), Rational(p),
                                      Rational(1, p), Rational(p + 2)};
        Rational c2 = cand[variant % cand.size()];
        pt.x_split = {xi / c2, c2};
        return pt;
    }
    const QuadExt& E = ctx.E();
    bool sigma12 = ctx.kind() == PlaceKind::Sigma1 || ctx.kind() == PlaceKind::Sigma2;
    Rational target = sigma12 ? xi / p : xi;  // v(eps) = 1 at Sigma1/Sigma2
    auto x = E.solve_norm(E.from_rational(target));
    pt.realizable = x.has_value();
    if (x) {
        if (variant > 0) {
            auto reps = unit_coset_reps(E, std::min(2, E.M() - 1));
            const PadicElem& w = reps[variant % reps.size()];
            *x = *x * w * w.conj().inverse();  // norm-one twist
        }
        pt.x = *x;
    }
    return pt;
}

OrbitalValue singular_orbital_local(const OrbitalContext& ctx) {
    ExactScalar vFE = ExactScalar::symbol("vFE");
    long q = ctx.q();
    int n = ctx.n_omega();
    Rational qn = p_pow(q, -n);
    switch (ctx.kind()) {
        case PlaceKind::Sigma1:
        case PlaceKind::Sigma2:
        case PlaceKind::Sigma3:
            return {CycScalar(vFE), OrbitalKind::Exact};
        case PlaceKind::GoodInert:
            // vol(F^x \ F^x (o + p^n o_E)^x) = vFE q^{-n} L(1, eta), n > 0
            return {CycScalar((n == 0 ? Rational(1) : qn * Rational(q, q + 1)) * vFE),
                    OrbitalKind::Exact};
        case PlaceKind::GoodRamified:
            // vol(F^x \ F^x U_E) = vFE / 2 and L(1, eta) = 1
            return {CycScalar(Rational(1, 2) * qn * vFE), OrbitalKind::Exact};
        case PlaceKind::GoodSplit:
            return {CycScalar((n == 0 ? Rational(1) : qn * Rational(q, q - 1)) *
                              ExactScalar::symbol("vU")),
                    OrbitalKind::Exact};
        default:
            throw MismatchedPlaceKind("orbital integrals are non-archimedean");
    }
}

OrbitalValue regular_orbital_closed(const OrbitalContext& ctx, const RegularOrbitPoint& pt) {
    long q = ctx.q();
    long v1 = pt.v_one_minus_xi;
    switch (ctx.kind()) {
        case PlaceKind::Sigma1:
        case PlaceKind::Sigma2:
        case PlaceKind::Sigma3: {
            bool nonzero = pt.realizable && pt.v_xi >= 1;
            return {nonzero ? CycScalar(sym_vFE2()) : CycScalar(),
                    OrbitalKind::Exact};
        }
        case PlaceKind::GoodInert:
        case PlaceKind::GoodRamified: {
            int n = ctx.n_omega();
            long d = ctx.E().disc_val();
            if (n > 0) {
                // vanishing beyond the discriminant-conductor range; the
                // conductor of Omega_v enters through its norm to F_v, so
                // its valuation here is 2 n(Omega_v)
                if (v1 > d + 2 * n) return {CycScalar(), OrbitalKind::Exact};
                throw NotClosedForm("ramified Omega_v admits only the certified bound");
            }
            if (!pt.realizable || v1 > d) return {CycScalar(), OrbitalKind::Exact};
            ExactScalar base = (ctx.kind() == PlaceKind::GoodRamified ? Rational(1, 2)
                                                                      : Rational(1)) *
                               sym_vFE2();
            Rational branch = (v1 <= 0) ? Rational(1) : Rational(1, 2);  // v1 == d == 1
            CycScalar pref(ExactScalar(1));
            if (ctx.kind() == PlaceKind::GoodRamified)
                pref = CycScalar::root(ctx.omega().eval(ctx.E().pi_E()).pow(v1));
            return {pref * CycScalar(branch * base), OrbitalKind::Exact};
        }
        case PlaceKind::GoodSplit: {
            int n = ctx.n_omega();
            if (n > 0) {
                if (v1 > 2 * n) return {CycScalar(), OrbitalKind::Exact};
                throw NotClosedForm("ramified Omega_v admits only the certified bound");
            }
            ExactScalar vU2 = ExactScalar::symbol("vU") * ExactScalar::symbol("vU");
            if (v1 > 0) return {CycScalar(), OrbitalKind::Exact};
            if (v1 == 0)
                return {CycScalar(Rational(1 + pt.v_xi) * vU2), OrbitalKind::Exact};
            const UnitChar& om = ctx.omega_split();
            const QuadExt& base = ctx.base_ring();
            CycScalar geom;
            for (long l = 0; l <= -pt.v_xi; l++)
                geom += CycScalar::root(
                    om.eval(base.from_rational(p_pow(ctx.p(), 2 * l))));
            CycScalar head = CycScalar::root(om.eval(base.from_rational(pt.xi)));
            return {head * geom * CycScalar(vU2), OrbitalKind::Exact};
        }
        default:
            throw MismatchedPlaceKind("orbital integrals are non-archimedean");
    }
}

OrbitalValue regular_orbital_oracle(const OrbitalContext& ctx, const RegularOrbitPoint& pt,
                                    int mesh) {
    if (!pt.realizable) return {CycScalar(), OrbitalKind::Exact};
    int need = minimal_mesh(ctx.kind(), ctx.n_omega());
    int m = mesh > 0 ? mesh : need;
    if (m < need)
        throw SupportNotCertified("mesh below the certified constancy depth");
    switch (ctx.kind()) {
        case PlaceKind::Sigma1:
            return {oracle_sigma1(ctx, pt, m), OrbitalKind::Exact};
        case PlaceKind::Sigma2:
            return {oracle_sigma2(ctx, pt, m), OrbitalKind::Exact};
        case PlaceKind::Sigma3:
            return {oracle_sigma3(ctx, pt, m), OrbitalKind::Exact};
        case PlaceKind::GoodInert:
        case PlaceKind::GoodRamified:
            return {oracle_good_nonsplit(ctx, pt, m), OrbitalKind::Exact};
        case PlaceKind::GoodSplit:
            return {oracle_good_split(ctx, pt, m), OrbitalKind::Exact};
        default:
            throw MismatchedPlaceKind("orbital integrals are non-archimedean");
    }
}

OrbitalValue ramified_bound(const OrbitalContext& ctx, const RegularOrbitPoint& pt,
                            const Rational& ramified_constant) {
    int n = ctx.n_omega();
    if (n <= 0) throw std::domain_error("the certified bound assumes n(Omega_v) > 0");
    long q = ctx.q();
    Rational Leta;
    switch (ctx.kind()) {
        case PlaceKind::GoodInert:
            Leta = Rational(q, q + 1);
            break;
        case PlaceKind::GoodRamified:
            Leta = 1;
            break;
        case PlaceKind::GoodSplit:
            Leta = Rational(q, q - 1);
            break;
        default:
            throw MismatchedPlaceKind("the bound applies at good places");
    }
    Rational C = ctx.kind() == PlaceKind::GoodRamified ? ramified_constant : Rational(1);
    ExactScalar pref = (p_pow(q, -n) * Leta * C) * ExactScalar::symbol("vUE") *
                       ExactScalar::symbol("vE1U");
    long v1 = pt.v_one_minus_xi;
    ExactScalar branch;
    if (v1 > 0) {
        // q^{-v1/2} L(1, eta_v), with a sqrt(q) carried for odd v1
        branch = ExactScalar(Leta * p_pow(q, -(v1 + mod2(v1)) / 2));
        if (mod2(v1)) branch *= ExactScalar::sqrt_of(q);
    } else {
        branch = ExactScalar(ctx.kind() == PlaceKind::GoodSplit
                                 ? Rational(1 + std::abs(pt.v_xi))
                                 : Rational(1));
    }
    return {CycScalar(pref * branch), OrbitalKind::UpperBound};
}

}  // namespace rtf
