#include "rtf/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/digamma.hpp>
#include <json.hpp>

namespace rtf {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Prime sieve utilities (local to this translation unit).

std::vector<long> primes_up_to(long n) {
    std::vector<bool> comp(std::max<long>(n + 1, 2), false);
    std::vector<long> out;
    for (long p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (long q = p * p; q <= n; q += p) comp[q] = true;
    }
    return out;
}

std::vector<long> smallest_factor_sieve(long n) {
    std::vector<long> spf(n + 1, 0);
    for (long p = 2; p <= n; ++p) {
        if (spf[p]) continue;
        for (long q = p; q <= n; q += p)
            if (!spf[q]) spf[q] = p;
    }
    return spf;
}

// ---------------------------------------------------------------------------
// Complex log-gamma (Lanczos, g = 7) and the Gamma_R building block.

cplx lanczos_lgamma(cplx z) {
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
        return std::log(kPi / std::sin(kPi * z)) - lanczos_lgamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx log_gamma_r(cplx z) { return -0.5 * z * std::log(kPi) + lanczos_lgamma(0.5 * z); }

// log of the completing factor Q(s) = N^{s/2} prod_j Gamma_R(s + mu_j).
cplx log_q_factor(const CoefficientSeries& cs, cplx s) {
    cplx lq = 0.5 * s * std::log(cs.conductor);
    for (double mu : cs.mu) lq += log_gamma_r(s + mu);
    return lq;
}

// ---------------------------------------------------------------------------
// Smoothed-AFE weight tables.
//
// W_s(n) = (1/2 pi) Int_{-T}^{T} Q(s + c + it) n^{-(c+it)} e^{(c+it)^2/w}
//          / (c + it) dt,
// so that  Lambda(s0) = sum a_n n^{-s0} W_{s0}(n)
//                     + eps sum a_n n^{-(1-s0)} W_{1-s0}(n) - pole terms.
// All data are real (real coefficients, real mu), hence the integrand at
// -t is the conjugate of the one at +t and W is real.

struct WeightTable {
    std::vector<double> w;  // w[n], index 0 unused
    double q_at_point = 0;  // Q(s) at the expansion point (real by symmetry)
};

struct WeightKey {
    std::vector<double> mu;
    double conductor, point, width, step;
    long cutoff;
    auto operator<=>(const WeightKey&) const = default;
};

// Grid of the t-independent integrand factors for one (shape, point).
std::vector<cplx> contour_grid(const CoefficientSeries& cs, double point,
                               double width, double contour, double step) {
    double tmax = std::sqrt(width * 50.0) + contour;
    long kmax = std::lround(tmax / step);
    std::vector<cplx> g(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        cplx u(contour, k * step);
        g[k] = std::exp(log_q_factor(cs, point + u) + u * u / width) / u;
    }
    return g;
}

double weight_at(const std::vector<cplx>& grid, double contour, double step,
                 double x) {
    // W(x) with the half-weight endpoint at t = 0 and conjugate symmetry.
    cplx z = std::polar(1.0, -step * std::log(x));
    cplx zp = 1.0;
    cplx acc = 0.5 * grid[0];
    for (size_t k = 1; k < grid.size(); ++k) {
        zp *= z;
        acc += grid[k] * zp;
    }
    return std::pow(x, -contour) * (step / kPi) * acc.real();
}

WeightTable build_weight_table(const CoefficientSeries& cs, double point,
                               double width, double step, long cutoff) {
    static std::map<WeightKey, WeightTable> cache;
    WeightKey key{cs.mu, cs.conductor, point, width, step, cutoff};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const double contour = 1.25;
    auto grid = contour_grid(cs, point, width, contour, step);
    WeightTable tab;
    tab.w.assign(cutoff + 1, 0.0);
    for (long n = 1; n <= cutoff; ++n)
        tab.w[n] = weight_at(grid, contour, step, double(n));
    tab.q_at_point = std::exp(log_q_factor(cs, cplx(point, 0)).real());
    cache[key] = tab;
    return tab;
}

// One of the two AFE sums plus its tail majorant over the last decade.
std::pair<double, double> afe_sum(const CoefficientSeries& cs, double point,
                                  double width, double step, long cutoff) {
    auto tab = build_weight_table(cs, point, width, step, cutoff);
    double s = 0, tail = 0;
    long tail_from = std::max<long>(1, cutoff - cutoff / 10);
    for (long n = 1; n <= cutoff; ++n) {
        double term = cs.a[n] * std::pow(double(n), -point) * tab.w[n];
        s += term;
        if (n >= tail_from) tail += std::fabs(term);
    }
    return {s, tail};
}

double pole_terms(const CoefficientSeries& cs, double point, double width) {
    if (!cs.has_pole) return 0;
    double p = 0;
    for (auto [u0, res] : {std::pair{1.0 - point, cs.residue_at_one},
                           std::pair{-point, cs.residue_at_zero}}) {
        if (std::fabs(u0) < 1e-9)
            throw std::invalid_argument("AFE point coincides with a pole");
        p += res * std::exp(u0 * u0 / width) / u0;
    }
    return p;
}

// Lambda(point) for a fixed root number eps.
std::pair<double, double> lambda_with_eps(const CoefficientSeries& cs,
                                          double point, double eps,
                                          double width, double step,
                                          long cutoff) {
    auto [s1, t1] = afe_sum(cs, point, width, step, cutoff);
    auto [s2, t2] = afe_sum(cs, 1.0 - point, width, step, cutoff);
    double lam = s1 + eps * s2 - pole_terms(cs, point, width);
    return {lam, t1 + t2};
}

// ---------------------------------------------------------------------------

long euler_phi(long n) {
    long r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Quadratic characters and L(1, eta).

bool is_fundamental_discriminant(long delta) {
    if (delta >= 0) return false;  // only the imaginary range is supported
    long r = ((delta % 4) + 4) % 4;
    if (r == 1) return is_squarefree(delta);
    if (r != 0) return false;
    long m = delta / 4;
    long rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

QuadraticCharacter::QuadraticCharacter(long d) : delta(d) {
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument("not a negative fundamental discriminant");
}

int QuadraticCharacter::operator()(long n) const { return kronecker(delta, n); }

ClassNumberEntry class_number(long delta) {
    if (!is_fundamental_discriminant(delta))
        throw std::invalid_argument("class_number needs a fundamental discriminant");
    if (-delta > 200) throw DiscriminantOutOfTable("|delta| > 200");
    ClassNumberEntry e;
    e.w = delta == -3 ? 6 : delta == -4 ? 4 : 2;
    // Count reduced forms (a, b, c): b^2 - 4ac = delta, -a < b <= a <= c,
    // with b >= 0 when a == c.
    for (long a = 1; 3 * a * a <= -delta; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - delta;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++e.h;
        }
    return e;
}

LOneEta l_one_eta(const QuadraticCharacter& chi) {
    LOneEta out;
    try {
        auto [h, w] = class_number(chi.delta);
        out.exact = Rational(2 * h, w) * (ExactScalar::pi() *
                    ExactScalar::sqrt_of(Rational(1, -chi.delta)));
        out.value = out.exact.eval();
        out.exact_available = true;
    } catch (const DiscriminantOutOfTable&) {
        out.value = l_one_eta_series(chi);
    }
    return out;
}

double l_one_eta_series(const QuadraticCharacter& chi, long terms) {
    long q = -chi.delta;
    std::vector<double> per(q);  // running character sums over one period
    double run = 0, mean = 0;
    for (long r = 0; r < q; ++r) {
        run += chi(r + 1);
        per[r] = run;
        mean += run;
    }
    mean /= double(q);
    // sum chi(n)/n = sum S(n) / (n (n+1)) with S periodic; the tail of the
    // mean part is mean / (terms + 1).
    double s = 0;
    for (long n = 1; n <= terms; ++n)
        s += per[(n - 1) % q] / (double(n) * double(n + 1));
    return s + mean / double(terms + 1);
}

double l_one_eta_series_omitting(const QuadraticCharacter& chi,
                                 const std::vector<long>& S) {
    long q = -chi.delta, period = q;
    for (long p : S)
        if (period % p) period *= p;
    // sum over n coprime to S of chi(n)/n = -(1/P) sum_a c(a) psi(a/P)
    // for the zero-mean periodic sequence c.
    double s = 0;
    for (long a = 1; a <= period; ++a) {
        bool keep = true;
        for (long p : S) keep = keep && (a % p != 0);
        if (!keep) continue;
        int c = chi(a);
        if (c) s -= c * boost::math::digamma(double(a) / period);
    }
    return s / period;
}

Rational partial_euler_exact(const QuadraticCharacter& chi,
                             const std::vector<long>& S) {
    Rational r = 1;
    for (long p : S) r /= Rational(p - chi(p), p);
    return r;
}

double partial_euler(const QuadraticCharacter& chi, double s,
                     const std::vector<long>& S) {
    double r = 1;
    for (long p : S) r /= 1.0 - chi(p) * std::pow(double(p), -s);
    return r;
}

double euler_product_omitting(const QuadraticCharacter& chi, double s,
                              const std::vector<long>& S, long cutoff) {
    double r = 1;
    for (long p : primes_up_to(cutoff)) {
        if (std::find(S.begin(), S.end(), p) != S.end()) continue;
        r /= 1.0 - chi(p) * std::pow(double(p), -s);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Basic coefficient series.

CoefficientSeries zeta_series(long cutoff) {
    CoefficientSeries cs;
    cs.a.assign(cutoff + 1, 1.0);
    cs.a[0] = 0;
    cs.degree = 1;
    cs.conductor = 1;
    cs.mu = {0.0};
    cs.root_number = 1;
    cs.has_pole = true;
    cs.residue_at_one = 1;
    cs.residue_at_zero = -1;
    cs.label = "zeta";
    return cs;
}

CoefficientSeries dirichlet_series(const QuadraticCharacter& chi, long cutoff) {
    CoefficientSeries cs;
    cs.a.assign(cutoff + 1, 0.0);
    for (long n = 1; n <= cutoff; ++n) cs.a[n] = chi(n);
    cs.degree = 1;
    cs.conductor = double(-chi.delta);
    cs.mu = {1.0};  // odd character
    cs.root_number = 0;  // let the engine determine it
    cs.label = "L(chi_" + std::to_string(chi.delta) + ")";
    return cs;
}

CoefficientSeries product_series(const CoefficientSeries& x,
                                 const CoefficientSeries& y) {
    if (x.has_pole || y.has_pole)
        throw std::invalid_argument("product_series: factors must be entire");
    long cutoff = std::min(x.a.size(), y.a.size()) - 1;
    CoefficientSeries cs;
    cs.a.assign(cutoff + 1, 0.0);
    for (long i = 1; i <= cutoff; ++i)
        for (long j = 1; i * j <= cutoff; ++j) cs.a[i * j] += x.a[i] * y.a[j];
    cs.degree = x.degree + y.degree;
    cs.conductor = x.conductor * y.conductor;
    cs.mu = x.mu;
    cs.mu.insert(cs.mu.end(), y.mu.begin(), y.mu.end());
    cs.root_number =
        (x.root_number && y.root_number) ? x.root_number * y.root_number : 0;
    cs.label = x.label + "*" + y.label;
    return cs;
}

// ---------------------------------------------------------------------------
// AFE engine.

long afe_required_cutoff(const CoefficientSeries& cs, const AfeOptions& opt) {
    const double contour = 1.25;
    long need = 1;
    for (double point : {opt.point, 1.0 - opt.point}) {
        auto grid = contour_grid(cs, point, opt.width, contour, opt.step);
        double w1 = std::fabs(weight_at(grid, contour, opt.step, 1.0));
        double x = std::max(4.0, std::sqrt(cs.conductor));
        // Walk outward until the weight, padded by one power of x for the
        // density of terms, drops below the tolerance.
        while (std::fabs(weight_at(grid, contour, opt.step, x)) *
                   std::pow(x, 1.0 - point) >
               opt.tol * std::max(w1, 1e-300))
            x *= 1.15;
        need = std::max(need, std::lround(x));
    }
    return need;
}

AfeResult afe_value(const CoefficientSeries& cs, const AfeOptions& opt) {
    AfeResult res;
    res.cutoff_used = afe_required_cutoff(cs, opt);
    if ((long)cs.a.size() - 1 < res.cutoff_used)
        throw InsufficientCoefficients(
            "AFE needs coefficients up to " + std::to_string(res.cutoff_used) +
            ", have " + std::to_string(cs.a.size() - 1) + " (" + cs.label + ")");

    double w1 = opt.width, w2 = opt.width * 0.6;
    double eps = cs.root_number;
    if (eps == 0) {
        // Determine the root number from functional-equation consistency at
        // an off-center point: Lambda(sp) = A(w) + eps B(w) - P(w) must be
        // kernel-width independent.
        double sp = opt.point == 0.5 ? 0.6 : opt.point;
        auto [a1, t1] = afe_sum(cs, sp, w1, opt.step, res.cutoff_used);
        auto [b1, u1] = afe_sum(cs, 1.0 - sp, w1, opt.step, res.cutoff_used);
        auto [a2, t2] = afe_sum(cs, sp, w2, opt.step, res.cutoff_used);
        auto [b2, u2] = afe_sum(cs, 1.0 - sp, w2, opt.step, res.cutoff_used);
        double p1 = pole_terms(cs, sp, w1), p2 = pole_terms(cs, sp, w2);
        double denom = b2 - b1;
        double scale = std::max({std::fabs(b1), std::fabs(b2), 1e-12});
        if (std::fabs(denom) < 1e-9 * scale) {
            eps = 1;  // both widths already agree; eps has no leverage
            res.root_number_residual = 0;
        } else {
            double raw = ((a1 - p1) - (a2 - p2)) / denom;
            eps = raw >= 0 ? 1 : -1;
            res.root_number_residual = std::fabs(raw - eps);
        }
    }
    res.root_number = eps;

    auto [lam, tail] = lambda_with_eps(cs, opt.point, eps, w1, opt.step,
                                       res.cutoff_used);
    auto [lam2, tail2] = lambda_with_eps(cs, opt.point, eps, w2, opt.step,
                                         res.cutoff_used);
    res.completed = lam;
    res.tail_estimate = tail;
    res.stability = std::fabs(lam - lam2);
    double q = std::exp(log_q_factor(cs, cplx(opt.point, 0)).real());
    res.value = lam / q;
    return res;
}

double afe_central_value(const CoefficientSeries& cs) {
    return afe_value(cs).value;
}

// ---------------------------------------------------------------------------
// Independent Euler-Maclaurin oracle.

double hurwitz_zeta(double s, double a) {
    if (s <= 0 || s == 1 || a <= 0)
        throw std::invalid_argument("hurwitz_zeta needs s > 0, s != 1, a > 0");
    static const double b2j[] = {1.0 / 6,      -1.0 / 30,    1.0 / 42,
                                 -1.0 / 30,    5.0 / 66,     -691.0 / 2730,
                                 7.0 / 6,      -3617.0 / 510, 43867.0 / 798,
                                 -174611.0 / 330};
    const int M = 40, J = 10;
    double sum = 0;
    for (int k = 0; k < M; ++k) sum += std::pow(a + k, -s);
    double x = a + M;
    sum += std::pow(x, 1 - s) / (s - 1) + 0.5 * std::pow(x, -s);
    double poch = s, fact = 1, xp = std::pow(x, -s - 1);
    for (int j = 1; j <= J; ++j) {
        fact *= (2 * j - 1) * (2 * j);
        sum += b2j[j - 1] / fact * poch * xp;
        poch *= (s + 2 * j - 1) * (s + 2 * j);
        xp /= x * x;
    }
    return sum;
}

double dirichlet_l_hurwitz(const QuadraticCharacter& chi, double s) {
    long q = -chi.delta;
    double sum = 0;
    for (long r = 1; r < q; ++r) {
        int c = chi(r);
        if (c) sum += c * hurwitz_zeta(s, double(r) / q);
    }
    return std::pow(double(q), -s) * sum;
}

// ---------------------------------------------------------------------------
// Fixtures.

double NewformFixture::eigenvalue(long p) const {
    auto it = ap.find(p);
    if (it == ap.end())
        throw InsufficientCoefficients(label + ": missing a_p for p = " +
                                       std::to_string(p));
    return it->second;
}

namespace {
NewformFixture fixture_from_json(const nlohmann::json& j) {
    NewformFixture f;
    f.label = j.at("label").get<std::string>();
    f.level = j.at("level").get<long>();
    f.weight = j.at("weight").get<int>();
    for (const auto& pa : j.at("ap"))
        f.ap[pa.at(0).get<long>()] = pa.at(1).get<double>();
    if (j.contains("local_types"))
        for (const auto& t : j.at("local_types"))
            f.local_types[t.at("p").get<long>()] =
                t.at("type").get<std::string>();
    if (j.contains("source")) f.source = j.at("source").get<std::string>();
    return f;
}
}  // namespace

NewformFixture parse_fixture(const std::string& json_text) {
    return fixture_from_json(nlohmann::json::parse(json_text));
}

std::vector<NewformFixture> load_fixtures(const std::string& dir) {
    std::vector<NewformFixture> out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path);
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.is_array())
            for (const auto& e : j) out.push_back(fixture_from_json(e));
        else
            out.push_back(fixture_from_json(j));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::tie(x.level, x.weight, x.label) <
               std::tie(y.level, y.weight, y.label);
    });
    return out;
}

// ---------------------------------------------------------------------------
// The Hecke character of Q(i) with conductor (3).

namespace {
// Discrete log in (Z[i]/3)^* with respect to the generator 1 + i.
int qi_mod3_dlog(long x, long y) {
    // Powers of 1+i mod 3: 1, 1+i, 2i, 1+2i, 2, 2+2i, i, 2+i.
    static const int table[3][3] = {
        // index [x mod 3][y mod 3], -1 for non-units
        {-1, 6, 2},  // x=0: i -> 6, 2i -> 2
        {0, 1, 3},   // x=1: 1 -> 0, 1+i -> 1, 1+2i -> 3
        {4, 7, 5},   // x=2: 2 -> 4, 2+i -> 7, 2+2i -> 5
    };
    int v = table[((x % 3) + 3) % 3][((y % 3) + 3) % 3];
    if (v < 0)
        throw std::invalid_argument("argument is not prime to (3) in Z[i]");
    return v;
}
}  // namespace

HeckeCharacterQi::HeckeCharacterQi(int m_) : m(m_) {
    // Well-definedness on principal ideals: the unit i must be sent to 1.
    // chi(i) = i^6 = -1 and (i / -i)^m = (-1)^m, so m must be odd.
    if (m % 2 == 0)
        throw CharacterObstruction(
            "no conductor-(3) character of the given even weight exists");
}

std::complex<double> HeckeCharacterQi::finite_part(long x, long y) const {
    static const cplx i4[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return i4[qi_mod3_dlog(x, y) % 4];
}

std::complex<double> HeckeCharacterQi::value(long x, long y) const {
    cplx z{double(x), double(y)};
    return finite_part(x, y) * std::pow(z / std::conj(z), double(m));
}

double HeckeCharacterQi::theta_coefficient(long n) const {
    if (n <= 0) return 0;
    if (n % 3 == 0) return 0;  // such ideals meet the conductor
    cplx sum = 0;
    long r = std::lround(std::sqrt((double)n));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    for (long x = -r; x <= r; ++x) {
        long y2 = n - x * x;
        long y = std::lround(std::sqrt((double)y2));
        if (y * y != y2) continue;
        sum += value(x, y);
        if (y != 0) sum += value(x, -y);
    }
    // Each ideal has four generators (units of Z[i]); value() is
    // unit-invariant, so divide the lattice sum by 4.
    double v = sum.real() / 4.0;
    if (std::fabs(sum.imag()) > 1e-9)
        throw std::logic_error("theta coefficient should be real");
    return v;
}

// ---------------------------------------------------------------------------
// Euler-product expansion into Dirichlet coefficients.

namespace {

// b_{p^e} from the inverse local factor P(X) = sum c_j X^j (c_0 = 1).
std::vector<double> prime_power_coeffs(const std::vector<double>& c, int emax) {
    std::vector<double> b(emax + 1, 0.0);
    b[0] = 1;
    for (int e = 1; e <= emax; ++e)
        for (size_t j = 1; j < c.size() && (int)j <= e; ++j)
            b[e] -= c[j] * b[e - j];
    return b;
}

CoefficientSeries expand_euler(
    const std::function<std::vector<double>(long)>& local_poly, long cutoff) {
    CoefficientSeries cs;
    cs.a.assign(cutoff + 1, 0.0);
    cs.a[1] = 1;
    auto spf = smallest_factor_sieve(cutoff);
    std::map<long, std::vector<double>> bp;
    for (long n = 2; n <= cutoff; ++n) {
        long p = spf[n], q = n, e = 0;
        while (q % p == 0) {
            q /= p;
            ++e;
        }
        auto it = bp.find(p);
        if (it == bp.end()) {
            int emax = 1;
            for (long pk = p; pk <= cutoff / p; pk *= p) ++emax;
            it = bp.emplace(p, prime_power_coeffs(local_poly(p), emax)).first;
        }
        cs.a[n] = cs.a[q] * it->second[e];
    }
    return cs;
}

bool in_list(const std::vector<long>& v, long p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

std::pair<long, long> two_squares(long p) {
    for (long x = 1; x * x * 2 <= p + 1; ++x) {
        long y2 = p - x * x;
        long y = std::lround(std::sqrt((double)y2));
        if (y * y == y2) return {std::max(x, y), std::min(x, y)};
    }
    throw std::logic_error("no two-squares decomposition");
}

std::vector<double> realify(const std::vector<cplx>& c) {
    std::vector<double> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        if (std::fabs(c[i].imag()) > 1e-8)
            throw std::logic_error("local factor should have real coefficients");
        r[i] = c[i].real();
    }
    return r;
}

void check_qi_setup(const GlobalSetup& s) {
    if (s.degree != 1 || s.delta_E_abs != 4)
        throw UnsupportedBaseField("implemented for F = Q, E = Q(i) only");
}

}  // namespace

CoefficientSeries rankin_selberg_series(const NewformFixture& f,
                                        const GlobalSetup& s,
                                        const HeckeCharacterQi& omega,
                                        long cutoff) {
    check_qi_setup(s);
    long level = s.norm(s.N1) * s.norm(s.N2) * s.norm(s.N2);
    for (long p : s.N3) level *= p * p * p;
    if (f.level != level || f.weight != 2 * s.k.at(0))
        throw std::invalid_argument("fixture level/weight does not match setup");
    double wexp = (f.weight - 1) / 2.0;

    auto local_poly = [&](long p) -> std::vector<double> {
        if (in_list(s.N2, p)) return {1, 0, 1};        // 1 + X^2
        if (in_list(s.N3, p)) return {1};              // trivial factor
        if (in_list(s.N1, p)) return {1, 0, -1.0 / p}; // Steinberg over E
        double lam = f.eigenvalue(p) / std::pow(double(p), wexp);
        if (p == 2) {
            // E/Q ramified at 2, Omega unramified there; the Satake
            // parameters of pi survive base change with Frobenius mapped
            // to Frobenius, twisted by Omega((1 + i)).
            cplx w2 = omega.value(1, 1);
            return realify({1.0, -lam * w2, w2 * w2});
        }
        if (p % 4 == 1) {
            auto [x, y] = two_squares(p);
            cplx w = omega.value(x, y), wb = std::conj(w);
            // prod over the two places above p of (1 - lam beta X + beta^2 X^2)
            std::vector<cplx> u = {1.0, -lam * w, w * w};
            std::vector<cplx> v = {1.0, -lam * wb, wb * wb};
            std::vector<cplx> c(5, 0.0);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) c[i + j] += u[i] * v[j];
            return realify(c);
        }
        // inert: (1 - nu alpha^2 X^2)(1 - nu alpha^-2 X^2) with
        // nu = Omega((p)) and alpha^2 + alpha^-2 = lam^2 - 2.
        cplx nu = omega.value(p, 0);
        return realify({1.0, 0.0, -nu * (lam * lam - 2), 0.0, nu * nu});
    };

    CoefficientSeries cs = expand_euler(local_poly, cutoff);
    cs.degree = 4;
    cs.conductor = 1;
    for (auto [p, e] : rankin_conductor_exponents(s))
        cs.conductor *= std::pow(double(p), e);
    int k1 = f.weight, k2 = 2 * std::abs(omega.m) + 1;
    double big = (k1 + k2) / 2.0 - 1, small = std::abs(k1 - k2) / 2.0;
    cs.mu = {small, small + 1, big, big + 1};
    cs.root_number = 0;  // determined numerically
    cs.label = f.label + " x theta";
    return cs;
}

CoefficientSeries adjoint_series(const NewformFixture& f, const GlobalSetup& s,
                                 long cutoff) {
    check_qi_setup(s);
    if (!s.N3.empty())
        throw UnknownLocalType("adjoint factors at Sigma3 are not implemented");
    double wexp = (f.weight - 1) / 2.0;

    auto local_poly = [&](long p) -> std::vector<double> {
        if (in_list(s.N2, p)) return {1, 1};            // 1 + X
        if (in_list(s.N1, p)) return {1, -1.0 / p};     // adjoint of Steinberg
        double lam = f.eigenvalue(p) / std::pow(double(p), wexp);
        double t = lam * lam - 1;  // alpha^2 + 1 + alpha^-2
        return {1, -t, t, -1};
    };

    CoefficientSeries cs = expand_euler(local_poly, cutoff);
    cs.degree = 3;
    double n12 = double(s.norm(s.N1)) * s.norm(s.N2);
    cs.conductor = n12 * n12;
    cs.mu = {1.0, double(f.weight - 1), double(f.weight)};
    cs.root_number = 1;
    cs.label = f.label + " Ad";
    return cs;
}

// ---------------------------------------------------------------------------
// End-to-end numeric check of the central identity.

Theorem1Report theorem1_numeric_check(const GlobalSetup& s,
                                      const std::vector<NewformFixture>& fixtures,
                                      const HeckeCharacterQi& omega) {
    check_qi_setup(s);
    auto places = classify_places(s);
    auto [c1, c2] = emptiness_criteria(s);
    if (!c1 && !c2)
        throw CriteriaNotMet("regular support is not provably empty");

    Theorem1Report rep;
    rep.binom = binomial_factor(s).convert_to<double>();

    // RHS with the removed-factor L-value bound to its numeric value:
    // L^{S'}(1, eta) = L(1, eta) * prod_{p in S'} (1 - eta(p)/p).
    QuadraticCharacter eta(-s.delta_E_abs);
    double l_sprime = l_one_eta(eta).value;
    for (const auto& pl : places)
        if (pl.n_omega > 0 && (pl.kind == PlaceKind::GoodSplit ||
                               pl.kind == PlaceKind::GoodInert ||
                               pl.kind == PlaceKind::GoodRamified))
            l_sprime *= 1.0 - double(eta(pl.q)) / pl.q;
    rep.rhs = identity_rhs_theorem(s).eval({{"LSeta", l_sprime}});

    long level = s.norm(s.N1) * s.norm(s.N2) * s.norm(s.N2);
    for (long p : s.N3) level *= p * p * p;
    std::vector<long> joint = s.N2;
    joint.insert(joint.end(), s.N3.begin(), s.N3.end());

    double sum = 0;
    for (const auto& f : fixtures) {
        if (f.level != level || f.weight != 2 * s.k.at(0)) {
            rep.excluded.emplace_back(f.label, "level/weight mismatch");
            continue;
        }
        bool eligible = true;
        for (long p : joint) {
            auto it = f.local_types.find(p);
            if (it == f.local_types.end())
                throw FixtureIncomplete(f.label + ": no local type at p = " +
                                        std::to_string(p));
            if (it->second != "supercuspidal") {
                rep.excluded.emplace_back(
                    f.label, "type at " + std::to_string(p) + ": " + it->second);
                eligible = false;
            }
        }
        if (!eligible) continue;

        CoefficientSeries shape;
        shape.conductor = 1;
        for (auto [p, e] : rankin_conductor_exponents(s))
            shape.conductor *= std::pow(double(p), e);
        int k1 = f.weight, k2 = 2 * std::abs(omega.m) + 1;
        double big = (k1 + k2) / 2.0 - 1, small = std::abs(k1 - k2) / 2.0;
        shape.mu = {small, small + 1, big, big + 1};
        long rs_cut = afe_required_cutoff(shape, {});

        CoefficientSeries ad_shape;
        double n12 = double(s.norm(s.N1)) * s.norm(s.N2);
        ad_shape.conductor = n12 * n12;
        ad_shape.mu = {1.0, double(f.weight - 1), double(f.weight)};
        long ad_cut = afe_required_cutoff(ad_shape, {.point = 1.0});

        auto rs = rankin_selberg_series(f, s, omega, rs_cut);
        auto ad = adjoint_series(f, s, ad_cut);
        double lrs = afe_value(rs).value;
        double lad = afe_value(ad, {.point = 1.0}).value;
        rep.family.push_back(f.label);
        rep.central_values.push_back(lrs);
        rep.adjoint_values.push_back(lad);
        // The identity holds for the complete L-functions (local factors
        // at every place, including the archimedean Gamma factors); the
        // stated right-hand side keeps L(1, eta) as a finite Euler
        // product, so the archimedean factor Gamma_R(2) of eta moves to
        // this side as a factor 1 / Gamma_R(2) = pi per real place.
        cplx arch = 0;
        for (double mu : rs.mu) arch += log_gamma_r(cplx(0.5 + mu, 0));
        for (double mu : ad.mu) arch -= log_gamma_r(cplx(1.0 + mu, 0));
        arch -= log_gamma_r(cplx(2.0, 0));
        sum += std::exp(arch.real()) * lrs / lad;
    }

    rep.degenerate = rep.family.empty();
    rep.lhs = rep.binom * sum;
    rep.rel_dev = std::fabs(rep.lhs - rep.rhs) / std::fabs(rep.rhs);
    return rep;
}

}  // namespace rtf
