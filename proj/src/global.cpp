#include "rtf/global.hpp"

#include <algorithm>
#include <cmath>

namespace rtf {

namespace {

long lpow(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; i++) r *= b;
    return r;
}

// p-part and unit part of a nonzero rational, the unit reduced mod m.
std::pair<long, long> padic_unit(const Rational& x, long p, long m) {
    long v = rational_valuation(x, p);
    Int nu = numerator(x), de = denominator(x);
    int sign = 1;
    if (nu < 0) {
        nu = -nu;
        sign = -1;
    }
    for (long i = 0; i < v; i++) nu /= p;
    for (long i = 0; i < -v; i++) de /= p;
    long num_m = (nu % m).convert_to<long>();
    long den_m = (de % m).convert_to<long>();
    long u = num_m * mod_inverse(Int(den_m), Int(m)).convert_to<long>() % m;
    u = (sign * u % m + m) % m;
    return {v, u};
}

bool contains(const std::vector<long>& v, long x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

long GlobalSetup::norm(const std::vector<long>& N) const {
    long r = 1;
    for (long q : N) r *= q;
    return r;
}

long GlobalSetup::c_omega() const {
    long c = norm(N2) * norm(N2);
    for (long q : N3) c *= q * q;
    for (auto [q, n] : omega_ramified) c *= lpow(q, 2 * n);
    return c;
}

long GlobalSetup::c_prime_omega() const {
    long n2 = norm(N2);
    return c_omega() / (n2 * n2);
}

int eta_symbol(const GlobalSetup& s, long p) {
    if (s.degree != 1) {
        auto it = s.eta_override.find(p);
        if (it == s.eta_override.end())
            throw std::invalid_argument("eta_override missing for this place");
        return it->second;
    }
    long D = -s.delta_E_abs;  // E imaginary quadratic (Sigma_infty ramifies in D)
    if (p == 2) {
        if (D % 2 == 0) return 0;
        long r = ((D % 8) + 8) % 8;
        return r == 1 ? 1 : -1;
    }
    if (D % p == 0) return 0;
    return (int)kronecker(D, p);
}

std::vector<GlobalPlace> classify_places(const GlobalSetup& s) {
    if (s.degree < 1 || s.delta_F < 1 || s.h_F < 1)
        throw std::invalid_argument("invalid base-field invariants");
    if (s.degree == 1 && (s.delta_F != 1 || s.h_F != 1))
        throw std::invalid_argument("the rational field has Delta_F = h_F = 1");
    if (s.delta_E_abs % (s.delta_F * s.delta_F) != 0 || s.d_EF() < 2)
        throw std::invalid_argument("|Delta_E| must be Delta_F^2 d_{E/F}");
    if ((int)s.k.size() != s.degree || (int)s.m.size() != s.degree)
        throw std::invalid_argument("need weight data per infinite place");
    for (int i = 0; i < s.degree; i++)
        if (s.k[i] < 1 || std::abs(s.m[i]) >= s.k[i])
            throw std::invalid_argument("weights need |m_v| < k_v");

    std::vector<long> all;
    for (const auto* N : {&s.N1, &s.N2, &s.N3})
        for (long q : *N) {
            if (q < 2 || (s.degree == 1 && !is_prime(q)))
                throw CoprimalityViolation("level factors must be primes");
            if (contains(all, q))
                throw CoprimalityViolation("N1, N2, N3 must be coprime and square-free");
            all.push_back(q);
        }
    for (long q : s.N2)
        if (q % 2 == 0) throw EvenResidueInN2N3("2 must not divide N2 N3");
    for (long q : s.N3)
        if (q % 2 == 0) throw EvenResidueInN2N3("2 must not divide N2 N3");
    if (s.N2.empty() && s.N3.empty())
        throw std::invalid_argument("Sigma2 u Sigma3 must be nonempty");
    if ((s.degree + (int)s.N1.size() + (int)s.N2.size()) % 2 != 0)
        throw ParityViolation("#(Sigma_infty u Sigma1 u Sigma2) must be even");

    std::vector<GlobalPlace> places;
    for (long q : s.N1) {
        if (eta_symbol(s, q) != -1)
            throw SplittingMismatch("Sigma1 places must be inert in E");
        places.push_back({q, PlaceKind::Sigma1, -1, 0});
    }
    for (long q : s.N2) {
        if (eta_symbol(s, q) != -1)
            throw SplittingMismatch("Sigma2 places must be inert in E");
        places.push_back({q, PlaceKind::Sigma2, -1, 1});
    }
    for (long q : s.N3) {
        if (eta_symbol(s, q) != 0)
            throw SplittingMismatch("Sigma3 places must be ramified in E");
        places.push_back({q, PlaceKind::Sigma3, 0, 1});
    }
    for (auto [q, n] : s.omega_ramified) {
        if (n < 1) throw std::invalid_argument("omega_ramified needs n(Omega_v) >= 1");
        if (contains(all, q))
            throw std::invalid_argument("omega_ramified places must avoid the level");
        int e = eta_symbol(s, q);
        PlaceKind kind = e == 1 ? PlaceKind::GoodSplit
                                : (e == -1 ? PlaceKind::GoodInert : PlaceKind::GoodRamified);
        places.push_back({q, kind, e, n});
    }
    std::sort(places.begin(), places.end(),
              [](const GlobalPlace& a, const GlobalPlace& b) { return a.q < b.q; });
    return places;
}

Rational l_seta_local(const GlobalSetup& s) {
    Rational L = 1;
    for (auto [q, n] : s.omega_ramified)
        L *= Rational(Int(q), Int(q - eta_symbol(s, q)));
    return L;
}

Rational binomial_factor(const GlobalSetup& s) {
    Rational b = 1;
    for (int i = 0; i < s.degree; i++) {
        long n = 2 * s.k[i] - 2, r = s.k[i] + s.m[i] - 1;
        Rational c = 1;
        for (long j = 1; j <= r; j++) c *= Rational(Int(n - r + j), Int(j));
        b *= c;
    }
    return b;
}

ExactScalar global_singular(const GlobalSetup& s) {
    classify_places(s);
    Rational pow2 = Rational(Int(1) << s.degree);
    ExactScalar v = (pow2 * l_seta_local(s)) *
                    ExactScalar::sqrt_of(Rational(Int(s.delta_F), Int(s.delta_E_abs)));
    v *= Rational(Int(s.norm(s.N2) * s.norm(s.N3))) *
         ExactScalar::sqrt_of(Rational(Int(1), Int(s.c_omega())));
    return v;
}

ExactScalar spectral_prefactor(const GlobalSetup& s) {
    classify_places(s);
    Rational L = l_seta_local(s);
    Rational pow4 = Rational(ipow(Int(4), (unsigned)s.degree));
    Rational head = pow4 * L * L /
                    (Rational(2) * s.delta_F * s.delta_F);
    head *= Rational(Int(1) << s.N3.size());
    head /= Rational(Int(s.norm(s.N1) * s.norm(s.N3)));
    head *= binomial_factor(s);
    return head * ExactScalar::sqrt_of(
                      Rational(Int(1), Int(s.c_omega()) * s.d_EF()));
}

ExactScalar identity_rhs_theorem(const GlobalSetup& s) {
    classify_places(s);
    long e2 = (long)s.N3.size() + s.degree - 2;
    Rational pow2 = e2 >= 0 ? Rational(Int(1), Int(1) << e2) : Rational(Int(1) << -e2);
    ExactScalar v = (Rational(Int(s.norm(s.N1) * s.norm(s.N2) * s.norm(s.N3) *
                                  s.norm(s.N3))) *
                     pow2) *
                    ExactScalar::symbol("LSeta");
    v *= ExactScalar(Rational(s.delta_F)) * ExactScalar::sqrt_of(s.delta_F);
    return v;
}

IdentityReport verify_identity(const GlobalSetup& s, const Rational& lhs_scale,
                               const Rational& rhs_scale) {
    auto [c1, c2] = emptiness_criteria(s);
    if (!c1 && !c2)
        throw CriteriaNotMet("the identity is asserted only under regular-orbit vanishing");
    IdentityReport rep;
    rep.singular = global_singular(s);
    rep.prefactor = spectral_prefactor(s);
    rep.rhs_theorem = identity_rhs_theorem(s);
    rep.binom = binomial_factor(s);
    // geometric side: vol(A_F^x E^x \ A_E^x) I(0,f') with the volume
    // 2 L(1,eta) and L(1,eta) = L_{S'} * L^{S'}
    rep.lhs = lhs_scale * ((Rational(2) * l_seta_local(s)) *
                           ExactScalar::symbol("LSeta") * rep.singular);
    rep.rhs = rhs_scale * (rep.prefactor * (rep.rhs_theorem / ExactScalar(rep.binom)));
    rep.residual = rep.lhs - rep.rhs;
    rep.equal = rep.residual.is_zero();
    return rep;
}

std::map<long, int> rankin_conductor_exponents(const GlobalSetup& s) {
    std::map<long, int> table;
    for (const GlobalPlace& pl : classify_places(s)) {
        switch (pl.kind) {
            case PlaceKind::Sigma1:
            case PlaceKind::Sigma2: table[pl.q] = 2; break;
            case PlaceKind::Sigma3: table[pl.q] = 5; break;
            default: {
                int dv = 0;
                if (s.degree == 1)
                    for (long d = s.d_EF(); d % pl.q == 0; d /= pl.q) dv++;
                table[pl.q] = 2 * (dv + 2 * pl.n_omega);
            }
        }
    }
    if (s.degree == 1)
        for (auto [p, e] : factorize(s.d_EF()))
            if (!table.count(p)) table[p] = 2 * e;
    return table;
}

std::pair<bool, bool> emptiness_criteria(const GlobalSetup& s) {
    Int n1 = s.norm(s.N1), n2 = s.norm(s.N2), n3 = s.norm(s.N3);
    Int dc = Int(s.d_EF()) * s.c_omega();
    Int lhs1 = n1 * ipow(n2, (unsigned)(1 + 2 * s.h_F)) * ipow(n3, (unsigned)(1 + 3 * s.h_F));
    bool first = lhs1 >= ipow(dc, (unsigned)s.h_F);
    Int lhs2 = n1 * ipow(n2, 3) * ipow(n3, 4);
    bool second = lhs2 * lhs2 >= dc * dc * s.delta_F;  // squared: sqrt(|Delta_F|)
    return {first, second};
}

long support_modulus(const GlobalSetup& s) {
    long n2 = s.norm(s.N2), n3 = s.norm(s.N3);
    long num = s.d_EF() * s.c_omega();
    long den = n2 * n2 * n3 * n3 * n3;
    if (num % den != 0) throw std::logic_error("support ideal is not integral");
    return num / den;
}

int hilbert_symbol(const Rational& x, const Rational& y, long p) {
    if (x == 0 || y == 0) throw std::invalid_argument("Hilbert symbol needs nonzero args");
    if (p == 2) {
        auto [a, u] = padic_unit(x, 2, 8);
        auto [b, v] = padic_unit(y, 2, 8);
        long eps_u = (u - 1) / 2 % 2, eps_v = (v - 1) / 2 % 2;
        long om_u = (u * u - 1) / 8 % 2, om_v = (v * v - 1) / 8 % 2;
        long e = eps_u * eps_v + a * om_v + b * om_u;
        return e % 2 == 0 ? 1 : -1;
    }
    auto [a, u] = padic_unit(x, p, p);
    auto [b, v] = padic_unit(y, p, p);
    long sign = 1;
    if (a % 2 != 0 && b % 2 != 0 && (p - 1) / 2 % 2 != 0) sign = -sign;
    if (b % 2 != 0 && kronecker(u, p) == -1) sign = -sign;
    if (a % 2 != 0 && kronecker(v, p) == -1) sign = -sign;
    return sign;
}

bool is_global_norm(const GlobalSetup& s, const Rational& xi) {
    if (s.degree != 1) throw UnsupportedBaseField("norm tests implemented over Q only");
    if (xi == 0 || xi == 1) return false;
    if (xi > 0) return false;  // iota(xi) < 0 at the real place
    Rational D(-s.delta_E_abs);
    std::map<long, int> primes = factorize(numerator(xi).convert_to<long>());
    for (auto [p, e] : factorize(denominator(xi).convert_to<long>())) primes[p] += e;
    for (auto [p, e] : factorize(s.delta_E_abs)) primes[p] += e;
    for (auto [p, e] : primes) {
        long v = rational_valuation(xi, p);
        if (contains(s.N1, p) || contains(s.N2, p)) {
            if (v % 2 == 0) return false;  // v(xi) odd on Sigma1 u Sigma2
            continue;
        }
        int eta = eta_symbol(s, p);
        if (eta == -1 && ((v % 2) + 2) % 2 == 1) return false;
        if (eta == 0 && hilbert_symbol(xi, D, p) != 1) return false;
    }
    return true;
}

std::vector<GlobalOrbitPoint> enumerate_regular_support(const GlobalSetup& s,
                                                        std::optional<long> a_opt) {
    if (s.degree != 1) throw UnsupportedBaseField("enumeration implemented over Q only");
    classify_places(s);
    long b = support_modulus(s);
    long a = a_opt.value_or(b);
    if (a == 0 || a % b != 0 || std::labs(a) > b)  // sqrt(|Delta_F|) = 1
        throw std::invalid_argument("a must generate the support ideal with minimal norm");
    long NN = s.norm(s.N1) * s.norm(s.N2) * s.norm(s.N3);
    std::vector<GlobalOrbitPoint> out;
    for (long y = -std::labs(a) + 1; y < std::labs(a); y++) {
        if (y == 0 || y % NN != 0 || y + a == 0) continue;
        Rational xi = Rational(Int(y)) / Int(y + a);
        if (xi == 0 || xi == 1) continue;
        if (!is_global_norm(s, xi)) continue;
        // The congruence (1 - xi)^{-1} in (c(Omega) d)^{-1} N2^2 N3^3
        // holds automatically for |a| equal to the support modulus; the
        // level-place support v(xi) >= 1 is still filtered explicitly.
        bool supported = true;
        for (const auto* N : {&s.N1, &s.N2, &s.N3})
            for (long q : *N)
                if (rational_valuation(xi, q) < 1) supported = false;
        if (!supported) continue;
        out.push_back({xi, y, a});
    }
    return out;
}

namespace {

// Number of ideals of E with norm |n|, factors at S' excluded.
long divisor_count_R(const GlobalSetup& s, long n, const std::vector<long>& sprime) {
    long count = 1;
    for (auto [p, e] : factorize(n)) {
        if (contains(sprime, p)) continue;
        int eta = eta_symbol(s, p);
        if (eta == 1)
            count *= e + 1;
        else if (eta == -1)
            count *= (e % 2 == 0) ? 1 : 0;
        // ramified: exactly one ideal above p
    }
    return count;
}

// Certified numeric bound on |I(xi, f'_v)| at an S'(Omega) place, using
// the local module with the standard volume bindings.
double sprime_place_bound(const GlobalSetup& s, long q, int n, const Rational& xi) {
    LocalFieldDesc F{q, 1, 8};
    int eta = eta_symbol(s, q);
    OrbitalContext ctx =
        eta == 1 ? OrbitalContext::split(F, n == 1 ? 1 : 0, n >= 2 ? 1 : 0, RootOfUnity(0, 1))
                 : (eta == -1 ? OrbitalContext::inert(F, n == 1 ? q - 1 : 0, n >= 2 ? 1 : 0)
                              : OrbitalContext::ramified(F, 1, 1));
    RegularOrbitPoint pt;
    pt.xi = xi;
    pt.v_xi = rational_valuation(xi, q);
    pt.v_one_minus_xi = rational_valuation(1 - xi, q);
    pt.realizable = true;
    double e = eta == 0 ? 2.0 : 1.0;
    auto bound = ramified_bound(ctx, pt, Rational(2));
    return bound.value.eval({{"vUE", 1.0}, {"vE1U", e}}).real();
}

}  // namespace

RegularBoundReport regular_bound_total(const GlobalSetup& s) {
    if (s.degree != 1) throw UnsupportedBaseField("bound pipeline implemented over Q only");
    if (!s.N3.empty())
        throw SigmaThreeNonEmpty("the regular bound pipeline assumes Sigma3 empty");
    classify_places(s);
    RegularBoundReport rep;
    rep.a = support_modulus(s);
    long N12 = s.norm(s.N1) * s.norm(s.N2);
    std::vector<long> sprime;
    for (auto [q, n] : s.omega_ramified) sprime.push_back(q);

    std::map<std::pair<std::vector<long>, std::vector<long>>, long> pattern_counts;
    for (long y = -rep.a + 1; y < rep.a; y++) {
        if (y == 0 || y % N12 != 0) continue;
        Rational xi = Rational(Int(y), Int(y + rep.a));
        if (xi == 0 || xi == 1 || !is_global_norm(s, xi)) continue;
        rep.support.push_back({xi, y, rep.a});
        double term = (double)divisor_count_R(s, std::labs(y) / N12, sprime) *
                      (double)divisor_count_R(s, std::labs(y + rep.a), sprime);
        std::vector<long> rvec, tvec;
        for (long q : sprime) {
            long r = 0, t = 0, yy = std::labs(y), ya = std::labs(y + rep.a);
            while (yy % q == 0) { r++; yy /= q; }
            while (ya % q == 0) { t++; ya /= q; }
            rvec.push_back(r);
            tvec.push_back(t);
            term *= sprime_place_bound(s, q, s.omega_ramified.at(q), xi);
        }
        pattern_counts[{rvec, tvec}]++;
        rep.terms.push_back(term);
        rep.total += term;
    }

    // Aggregate cardinality bound over the admissible (r, t) patterns.
    long m = (long)sprime.size();
    std::vector<long> va;
    for (long q : sprime) {
        long v = 0, aa = rep.a;
        while (aa % q == 0) { v++; aa /= q; }
        va.push_back(v);
    }
    double head = std::pow(2.0, s.degree + 1) * (double)rep.a / (double)N12;
    std::vector<std::vector<std::pair<long, long>>> options(m);
    for (long i = 0; i < m; i++) {
        long q = sprime[i];
        for (long r = 0; r < va[i]; r++) options[i].push_back({r, r});
        long cap = (long)(std::log(head) / std::log((double)q)) + 1;
        for (long r = va[i] + 1; r <= std::max(va[i] + 1, cap); r++)
            options[i].push_back({r, va[i]});
        for (long t = va[i]; t <= std::max(va[i], cap); t++)
            options[i].push_back({va[i], t});
    }
    std::vector<long> idx(m, 0);
    while (true) {
        SupportPattern pat;
        double denom = 1;
        for (long i = 0; i < m; i++) {
            auto [r, t] = options[i][idx[i]];
            pat.r.push_back(r);
            pat.t.push_back(t);
            denom *= std::pow((double)sprime[i], (double)std::max(r, t));
        }
        pat.cardinality_bound = head / denom;
        auto it = pattern_counts.find({pat.r, pat.t});
        pat.count = it == pattern_counts.end() ? 0 : it->second;
        // an integer count below 1 certifies emptiness
        rep.cardinality_total += pat.cardinality_bound >= 1 ? pat.cardinality_bound : 0;
        rep.patterns.push_back(std::move(pat));
        long i = 0;
        for (; i < m; i++) {
            if (++idx[i] < (long)options[i].size()) break;
            idx[i] = 0;
        }
        if (i == m) break;
        if (m == 0) break;
    }
    if (m == 0 && !rep.patterns.empty()) rep.patterns.resize(1);
    return rep;
}

SubconvexityReport subconvexity_report(const GlobalSetup& s, double t, double eps) {
    if (!s.N3.empty()) throw SigmaThreeNonEmpty("the subconvex bound assumes Sigma3 empty");
    if (t < 0 || t >= 1.0 / 6.0) throw TOutOfRange("requires 0 <= t < 1/6");
    if (eps <= 0) throw TOutOfRange("requires eps > 0");
    classify_places(s);
    SubconvexityReport rep;
    rep.t = t;
    rep.eps = eps;
    rep.c_prime = (double)s.c_prime_omega();
    rep.n1n2 = (double)(s.norm(s.N1) * s.norm(s.N2));
    rep.window_lo_exp = (2 * t + 2 * eps) / (1 - 2 * t - 2 * eps);
    rep.window_hi_exp = (1 - 2 * t - 2 * eps) / (1 + 2 * t + 2 * eps);
    rep.window_nonempty = rep.window_lo_exp <= rep.window_hi_exp;
    // The window is stated up to c'^eps factors, so the membership test
    // carries the same multiplicative slack.
    double lo = std::pow(rep.c_prime, rep.window_lo_exp - eps);
    double hi = std::pow(rep.c_prime, rep.window_hi_exp + eps);
    rep.in_window = rep.window_nonempty && lo <= rep.n1n2 && rep.n1n2 <= hi;
    rep.achieved_exponent = 0.5 - t;
    rep.convexity_exponent = 0.5;
    rep.beats_convexity = rep.in_window && rep.achieved_exponent < rep.convexity_exponent;
    return rep;
}

}  // namespace rtf
