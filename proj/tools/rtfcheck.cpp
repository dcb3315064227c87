// Command-line front end: every operation behind one binary, with
// human-readable text or a versioned JSON run report (--json).
//
// Subcommands:
//   pairs enumerate --q Q --level {0,1}     admissible-pair classes
//   arch check [--k-max K] [--quad-steps N] archimedean suite
//   orbital sweep --q Q [--precision M]     closed form vs oracle
//   global verify --config FILE             exact symbolic identity
//   lfunc check-thm1 --config FILE --fixtures DIR [--online]
//   verify-all [--fixtures DIR]             full acceptance suite
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage error,
// 3 bad config/input file, 4 fixtures or network unavailable.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rtf/arch.hpp"
#include "rtf/global.hpp"
#include "rtf/lfunc.hpp"
#include "rtf/suite.hpp"

#include "httplib.h"

using json = nlohmann::ordered_json;
using namespace rtf;

namespace {

constexpr int kSchemaVersion = 1;

constexpr int kExitVerdict = 1;
constexpr int kExitConfig = 3;
constexpr int kExitFixtures = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunReport {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    std::vector<CriterionResult> verdicts;

    void verdict(const std::string& name, bool pass, const std::string& detail,
                 bool gating = true) {
        verdicts.push_back({name, pass, gating, detail, 0});
    }
    bool all_pass() const {
        for (const auto& v : verdicts)
            if (v.gating && !v.pass) return false;
        return true;
    }
    json to_json(double seconds) const {
        json r;
        r["schema_version"] = kSchemaVersion;
        r["command"] = command;
        r["inputs"] = inputs;
        r["outputs"] = outputs;
        r["verdicts"] = json::array();
        for (const auto& v : verdicts)
            r["verdicts"].push_back({{"name", v.name},
                                     {"pass", v.pass},
                                     {"gating", v.gating},
                                     {"detail", v.detail}});
        r["timing_seconds"] = seconds;
        r["pass"] = all_pass();
        return r;
    }
    void print_text() const {
        for (auto it = outputs.begin(); it != outputs.end(); ++it)
            std::cout << it.key() << ": "
                      << (it.value().is_string()
                              ? it.value().get<std::string>()
                              : it.value().dump())
                      << "\n";
        for (const auto& v : verdicts)
            std::cout << "verdict " << v.name << ": "
                      << (v.pass ? "PASS" : "FAIL") << " — " << v.detail
                      << "\n";
    }
};

// ------------------------------------------------------------------ config

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::vector<long> longs(const json& j) {
    return j.get<std::vector<long>>();
}

std::map<long, int> long_int_map(const json& j) {
    std::map<long, int> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[std::stol(it.key())] = it.value().get<int>();
    return out;
}

GlobalSetup setup_from_json(const json& j) {
    GlobalSetup s;
    try {
        s.delta_E_abs = j.at("delta_E_abs").get<long>();
        if (j.contains("degree")) s.degree = j["degree"].get<int>();
        if (j.contains("delta_F")) s.delta_F = j["delta_F"].get<long>();
        if (j.contains("h_F")) s.h_F = j["h_F"].get<int>();
        if (j.contains("N1")) s.N1 = longs(j["N1"]);
        if (j.contains("N2")) s.N2 = longs(j["N2"]);
        if (j.contains("N3")) s.N3 = longs(j["N3"]);
        if (j.contains("omega_ramified"))
            s.omega_ramified = long_int_map(j["omega_ramified"]);
        if (j.contains("eta_override"))
            s.eta_override = long_int_map(j["eta_override"]);
        s.k = j.at("k").get<std::vector<int>>();
        s.m = j.at("m").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return s;
}

json setup_to_json(const GlobalSetup& s) {
    json j;
    j["degree"] = s.degree;
    j["delta_F"] = s.delta_F;
    j["h_F"] = s.h_F;
    j["delta_E_abs"] = s.delta_E_abs;
    j["N1"] = s.N1;
    j["N2"] = s.N2;
    j["N3"] = s.N3;
    json om = json::object();
    for (auto [p, n] : s.omega_ramified) om[std::to_string(p)] = n;
    j["omega_ramified"] = om;
    json eo = json::object();
    for (auto [p, e] : s.eta_override) eo[std::to_string(p)] = e;
    j["eta_override"] = eo;
    j["k"] = s.k;
    j["m"] = s.m;
    return j;
}

// ------------------------------------------------------------ subcommands

void run_pairs(RunReport& rep, long q, int level) {
    auto pairs =
        level == 0 ? enumerate_level0_pairs(q) : enumerate_level_half_pairs(q);
    rep.inputs = {{"q", q}, {"level", level}};
    rep.outputs["classes"] = pairs.size();
    json labels = json::array();
    for (const auto& p : pairs) labels.push_back(p.label());
    rep.outputs["labels"] = labels;

    long expected = level == 0 ? (q - 1) / 2 : q - 1;
    rep.verdict("class count",
                (long)pairs.size() == expected,
                std::to_string(pairs.size()) + " classes, expected " +
                    std::to_string(expected));
    QuadExt E(LocalFieldDesc{q, 1, 8},
              level == 0 ? ExtKind::Unramified : ExtKind::Ramified);
    bool adm = true;
    for (const auto& p : pairs) adm = adm && is_admissible(E, p);
    rep.verdict("admissibility", adm,
                adm ? "every class passes the brute-force test"
                    : "a class failed the brute-force test");
}

void run_arch(RunReport& rep, int k_max, int quad_steps) {
    rep.inputs = {{"k_max", k_max}, {"quad_steps", quad_steps}};
    const double pi = 3.14159265358979323846;
    bool schur_ok = true, orb_ok = true, beta_ok = true;
    double schur_worst = 0, orb_worst = 0;
    json table = json::array();
    for (int k = 1; k <= k_max; k++) {
        double num = arch_spectral_numeric(ArchPlace{k, 0}, quad_steps);
        double want = 4 * pi * pi / (2 * k - 1);
        double rel = std::fabs(num - want) / want;
        schur_worst = std::max(schur_worst, rel);
        if (rel > 1e-6) schur_ok = false;
        table.push_back({{"k", k}, {"schur", num}, {"expected", want}});
        for (int m = -(k - 1); m < k; m++) {
            for (double xi : {-0.1, -1.0, -10.0}) {
                double cv = arch_orbital_closed(ArchPlace{k, m},
                                                Rational(std::lround(xi * 10), 10))
                                .eval({});
                double nv = arch_orbital_numeric(ArchPlace{k, m}, xi,
                                                 std::max(quad_steps, 256));
                double r = std::fabs(cv - nv) / std::max(1.0, std::fabs(nv));
                orb_worst = std::max(orb_worst, r);
                if (r > 1e-6) orb_ok = false;
            }
            if (beta_binomial_product(k, m) != 1) beta_ok = false;
        }
    }
    rep.outputs["schur_table"] = table;
    char buf[120];
    std::snprintf(buf, sizeof buf, "worst relative error %.2e", schur_worst);
    rep.verdict("Schur orthogonality = 4pi^2/(2k-1)", schur_ok, buf);
    std::snprintf(buf, sizeof buf, "worst relative error %.2e", orb_worst);
    rep.verdict("orbital closed form = quadrature", orb_ok, buf);
    rep.verdict("(2k-1) B(k+m,k-m) C(2k-2,k+m-1) = 1", beta_ok,
                beta_ok ? "exact for all tested (k, m)" : "identity fails");
}

Rational qpow(long p, long e) {
    return e >= 0 ? Rational(ipow(Int(p), (unsigned)e))
                  : Rational(Int(1), ipow(Int(p), (unsigned)-e));
}

void run_orbital(RunReport& rep, long q, int precision) {
    rep.inputs = {{"q", q}, {"precision", precision}};
    LocalFieldDesc F{q, 1, precision};
    std::vector<OrbitalContext> ctxs;
    ctxs.push_back(OrbitalContext::sigma1(F));
    for (const auto& p : enumerate_level0_pairs(q)) {
        ctxs.push_back(OrbitalContext::sigma2(F, p));
        break;
    }
    for (const auto& p : enumerate_level_half_pairs(q)) {
        ctxs.push_back(OrbitalContext::sigma3(F, p));
        break;
    }
    ctxs.push_back(OrbitalContext::inert(F));
    ctxs.push_back(OrbitalContext::ramified(F, 1, 0));
    ctxs.push_back(OrbitalContext::split(F, 0, 0, RootOfUnity(0, 1)));
    ctxs.push_back(OrbitalContext::inert(F, q - 1, 1));
    ctxs.push_back(OrbitalContext::split(F, 1, 1, RootOfUnity(1, 3)));

    int configs = 0, bound_only = 0, skipped = 0;
    bool ok = true;
    std::string first_bad;
    for (const auto& ctx : ctxs) {
        std::vector<Rational> grid;
        for (long v = -2; v <= 3; v++) {
            if (v == 0) continue;
            grid.push_back(Rational(2) * qpow(q, v));
            grid.push_back(-qpow(q, v));
        }
        grid.push_back(Rational(2));
        grid.push_back(Rational(1 + q));
        for (const Rational& xi : grid) {
            try {
                RegularOrbitPoint pt = realize_orbit_point(ctx, xi);
                OrbitalValue oracle = regular_orbital_oracle(ctx, pt);
                try {
                    OrbitalValue closed = regular_orbital_closed(ctx, pt);
                    if (!(closed.value - oracle.value).is_zero()) {
                        ok = false;
                        if (first_bad.empty())
                            first_bad = "mismatch at xi = " + xi.str();
                    }
                } catch (const NotClosedForm&) {
                    bound_only++;
                }
                configs++;
            } catch (const SupportNotCertified&) {
                skipped++;
            }
        }
    }
    rep.outputs["configurations"] = configs;
    rep.outputs["bound_only"] = bound_only;
    rep.outputs["support_not_certified"] = skipped;
    rep.verdict("closed form = brute-force oracle", ok,
                ok ? "exact equality on " + std::to_string(configs) +
                         " configurations (" + std::to_string(bound_only) +
                         " bound-only)"
                   : first_bad);
}

void run_global(RunReport& rep, const std::string& config) {
    GlobalSetup s = setup_from_json(load_json_file(config));
    rep.inputs = {{"config", config}, {"setup", setup_to_json(s)}};
    IdentityReport r = verify_identity(s);
    rep.outputs["lhs"] = r.lhs.str();
    rep.outputs["rhs"] = r.rhs.str();
    rep.outputs["residual"] = r.residual.str();
    rep.outputs["singular"] = r.singular.str();
    rep.outputs["spectral_prefactor"] = r.prefactor.str();
    rep.outputs["binomial_factor"] = r.binom.str();
    rep.verdict("identity", r.equal,
                r.equal ? "verdict equal (exact, residual 0)"
                        : "residual " + r.residual.str());
}

// Optional online retrieval: GET {base}/newforms/{level}/{weight}.json
// from the server named by RTF_DB_BASE_URL, cached into the fixtures
// directory under the bundled schema.  Purely additive: bundled files
// are never overwritten, and nothing is fetched when the cache exists.
void fetch_online(const std::string& fixtures_dir, long level, int weight) {
    std::filesystem::path cache =
        std::filesystem::path(fixtures_dir) /
        ("online_level" + std::to_string(level) + "_weight" +
         std::to_string(weight) + ".json");
    if (std::filesystem::exists(cache)) return;
    const char* base = std::getenv("RTF_DB_BASE_URL");
    if (!base)
        throw FixtureError("--online requires RTF_DB_BASE_URL to be set");
    httplib::Client cli(base);
    cli.set_connection_timeout(10);
    cli.set_read_timeout(30);
    std::string path = "/newforms/" + std::to_string(level) + "/" +
                       std::to_string(weight) + ".json";
    auto res = cli.Get(path);
    if (!res || res->status != 200)
        throw FixtureError("fetch of " + std::string(base) + path +
                           " failed" +
                           (res ? " (status " + std::to_string(res->status) +
                                      ")"
                                : ""));
    json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.is_array())
        throw FixtureError("server response is not a JSON fixture array");
    for (const auto& e : body) parse_fixture(e.dump());  // schema check
    std::ofstream out(cache);
    out << body.dump(1) << "\n";
}

void run_lfunc(RunReport& rep, const std::string& config,
               const std::string& fixtures_dir, bool online) {
    json cfg = load_json_file(config);
    GlobalSetup s = setup_from_json(cfg);
    int omega_m = cfg.value("omega_weight", 1);
    rep.inputs = {{"config", config},
                  {"setup", setup_to_json(s)},
                  {"omega_weight", omega_m},
                  {"fixtures", fixtures_dir},
                  {"online", online}};

    long level = s.norm(s.N1) * s.norm(s.N2) * s.norm(s.N2);
    for (long p : s.N3) level *= p * p * p;
    if (online) fetch_online(fixtures_dir, level, 2 * s.k.at(0));

    std::vector<NewformFixture> fixtures;
    try {
        fixtures = load_fixtures(fixtures_dir);
    } catch (const std::exception& e) {
        throw FixtureError(e.what());
    }
    if (fixtures.empty())
        throw FixtureError("no fixtures found in " + fixtures_dir);

    HeckeCharacterQi omega(omega_m);  // CharacterObstruction propagates
    Theorem1Report r;
    try {
        r = theorem1_numeric_check(s, fixtures, omega);
    } catch (const FixtureIncomplete& e) {
        throw FixtureError(e.what());
    }

    rep.outputs["family"] = r.family;
    json excluded = json::array();
    for (const auto& [label, why] : r.excluded)
        excluded.push_back({{"label", label}, {"reason", why}});
    rep.outputs["excluded"] = excluded;
    rep.outputs["binomial_factor"] = r.binom;
    rep.outputs["lhs"] = r.lhs;
    rep.outputs["rhs"] = r.rhs;
    rep.outputs["relative_deviation"] = r.rel_dev;
    if (r.degenerate) {
        rep.outputs["degenerate"] = "LHS = 0 (no eligible forms); RHS "
                                    "printed for audit";
        rep.verdict("central identity (numeric)", false,
                    "degenerate: no eligible forms at level " +
                        std::to_string(level));
        return;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "LHS %.6f vs RHS %.6f over %zu forms, relative deviation "
                  "%.2e (tolerance 1e-2)",
                  r.lhs, r.rhs, r.family.size(), r.rel_dev);
    rep.verdict("central identity (numeric)", r.rel_dev <= 0.01, buf);
}

void run_verify_all(RunReport& rep, const std::string& fixtures_dir) {
    rep.inputs = {{"fixtures", fixtures_dir}};
    for (CriterionResult& r : run_acceptance_suite(fixtures_dir)) {
        std::cout << "criterion " << r.name << ": "
                  << (r.pass ? "PASS" : "FAIL") << " — " << r.detail << "\n";
        r.name = "criterion " + r.name;
        rep.verdicts.push_back(std::move(r));
    }
    std::cout << (rep.all_pass() ? "acceptance: all criteria satisfied"
                                 : "acceptance: criteria FAILED")
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for the relative-trace identity"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit the run report as JSON");

    // pairs enumerate
    auto* pairs = app.add_subcommand("pairs", "admissible toric pairs");
    auto* pe = pairs->add_subcommand("enumerate", "list equivalence classes");
    long pq = 5;
    int plevel = 0;
    pe->add_option("--q", pq, "residue field size (odd prime)")->required();
    pe->add_option("--level", plevel, "0 (unramified) or 1 (level one-half)")
        ->check(CLI::Range(0, 1));
    pairs->require_subcommand(1);

    // arch check
    auto* arch = app.add_subcommand("arch", "archimedean place suite");
    auto* ac = arch->add_subcommand("check", "Schur/orbital/beta identities");
    int k_max = 5, quad_steps = 64;
    ac->add_option("--k-max", k_max, "largest half-weight")->check(CLI::Range(1, 12));
    ac->add_option("--quad-steps", quad_steps, "quadrature resolution");
    arch->require_subcommand(1);

    // orbital sweep
    auto* orb = app.add_subcommand("orbital", "non-archimedean orbital integrals");
    auto* os = orb->add_subcommand("sweep", "closed form vs brute-force oracle");
    long oq = 3;
    int precision = 6;
    os->add_option("--q", oq, "residue field size (odd prime)")->required();
    os->add_option("--precision", precision, "working precision O/pi^M")
        ->check(CLI::Range(2, 10));
    orb->require_subcommand(1);

    // global verify
    auto* glob = app.add_subcommand("global", "global identity");
    auto* gv = glob->add_subcommand("verify", "exact symbolic verification");
    std::string gconfig;
    gv->add_option("--config", gconfig, "JSON setup description")
        ->required()
        ->check(CLI::ExistingFile);
    glob->require_subcommand(1);

    // lfunc check-thm1
    auto* lf = app.add_subcommand("lfunc", "L-function numerics");
    auto* lc = lf->add_subcommand("check-thm1", "end-to-end numeric identity");
    std::string lconfig, fixtures_dir = "fixtures";
    bool online = false;
    lc->add_option("--config", lconfig, "JSON setup description")
        ->required()
        ->check(CLI::ExistingFile);
    lc->add_option("--fixtures", fixtures_dir, "fixture directory");
    lc->add_flag("--online", online,
                 "fetch missing fixtures from RTF_DB_BASE_URL (cached)");
    lf->require_subcommand(1);

    // verify-all
    auto* va = app.add_subcommand("verify-all", "full acceptance suite");
    std::string va_fixtures = "fixtures";
    va->add_option("--fixtures", va_fixtures, "fixture directory");

    // let --json (and other parent flags) appear after the subcommand
    for (auto* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands(nullptr))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunReport rep;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (pe->parsed()) {
            rep.command = "pairs enumerate";
            run_pairs(rep, pq, plevel);
        } else if (ac->parsed()) {
            rep.command = "arch check";
            run_arch(rep, k_max, quad_steps);
        } else if (os->parsed()) {
            rep.command = "orbital sweep";
            run_orbital(rep, oq, precision);
        } else if (gv->parsed()) {
            rep.command = "global verify";
            run_global(rep, gconfig);
        } else if (lc->parsed()) {
            rep.command = "lfunc check-thm1";
            run_lfunc(rep, lconfig, fixtures_dir, online);
        } else if (va->parsed()) {
            rep.command = "verify-all";
            run_verify_all(rep, va_fixtures);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const FixtureError& e) {
        std::cerr << "fixture error: " << e.what() << "\n";
        return kExitFixtures;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    if (as_json)
        std::cout << rep.to_json(dt).dump(1) << "\n";
    else if (rep.command != "verify-all")
        rep.print_text();
    return rep.all_pass() ? 0 : kExitVerdict;
}
