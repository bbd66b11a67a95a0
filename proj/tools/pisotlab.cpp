// pisotlab: command-line front end for the pisot library.
//
// Every command prints one JSON report line (schema_version, command, inputs,
// results, errors). Exit codes: 0 success, 1 other failure, 2 bad input,
// 3 not Pisot, 4 rounding failure, 5 expectation failed, 6 residual gate.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pisot/catalog.hpp"
#include "pisot/report.hpp"

using namespace pisot;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failure = 1, bad_input = 2, not_pisot = 3, rounding = 4, expectation = 5, residual = 6 };

struct Globals {
    Bits bits = 192;
    std::string tol = "1e-30";
    long exact_limit = 300;
    Bits precision_cap = Bits{1} << 20;
    std::string catalog = default_catalog_path();
    bool pretty = false;
};

struct Target {
    std::string poly_text;
    std::string name;
    long alpha = 0;
    long beta = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--poly", poly_text, "ascending coefficients, e.g. \"-1,-1,1\"");
        cmd->add_option("--name", name, "catalog entry");
        cmd->add_option("--alpha", alpha, "alpha_n limit point")->check(CLI::PositiveNumber);
        cmd->add_option("--beta", beta, "beta_n limit point")->check(CLI::PositiveNumber);
    }
};

struct Resolved {
    std::string label;
    IntPolynomial poly;
    std::vector<Expectation> expectations;
};

Resolved resolve(const Target& t, const Globals& g) {
    const int given = !t.poly_text.empty() + !t.name.empty() + (t.alpha > 0) + (t.beta > 0);
    if (given != 1) throw InvalidParameters("give exactly one of --poly, --name, --alpha, --beta");
    if (!t.poly_text.empty()) return {"poly", IntPolynomial::parse(t.poly_text), {}};
    if (t.alpha > 0) return {"alpha_" + std::to_string(t.alpha), alpha_poly(t.alpha), alpha_expectations(t.alpha)};
    if (t.beta > 0) return {"beta_" + std::to_string(t.beta), beta_poly(t.beta), beta_expectations(t.beta)};
    auto cat = load_catalog(g.catalog);
    const auto& e = find_entry(cat, t.name);
    return {e.name, e.poly, e.expected_patterns};
}

json target_inputs(const Target& t) {
    json j = json::object();
    if (!t.poly_text.empty()) j["poly"] = t.poly_text;
    if (!t.name.empty()) j["name"] = t.name;
    if (t.alpha > 0) j["alpha"] = t.alpha;
    if (t.beta > 0) j["beta"] = t.beta;
    return j;
}

std::pair<long, long> parse_range(const std::string& s) {
    auto c = s.find(':');
    try {
        if (c == std::string::npos) {
            long v = std::stol(s);
            return {v, v};
        }
        return {std::stol(s.substr(0, c)), std::stol(s.substr(c + 1))};
    } catch (const std::logic_error&) {
        throw InvalidParameters("bad range '" + s + "', expected a:b");
    }
}

LogEquationSpec parse_heart(const std::string& s) {
    // heart:m,n,l
    const std::string prefix = "heart:";
    if (s.rfind(prefix, 0) != 0) throw InvalidParameters("--family expects heart:m,n,l, got '" + s + "'");
    IntPolynomial triple = IntPolynomial::parse(s.substr(prefix.size()));
    const auto& c = triple.coeffs();
    if (c.size() != 3) throw InvalidParameters("--family expects heart:m,n,l, got '" + s + "'");
    return {Family::heart, c[0].get_si(), c[1].get_si(), c[2].get_si()};
}

int exit_for(const std::string& code) {
    if (code == "InvalidParameters" || code == "NotMonic" || code == "ZeroConstantTerm" || code == "DegreeMismatch")
        return bad_input;
    if (code == "NotPisot") return not_pisot;
    if (code == "PrecisionExhausted" || code == "ExactHalfInteger") return rounding;
    if (code == "ResidualTooLarge") return residual;
    return failure;
}

void emit(const json& j, const Globals& g) { std::cout << (g.pretty ? j.dump(2) : j.dump()) << "\n"; }

TransformOptions transform_options(const Globals& g) {
    TransformOptions t;
    t.rounding.cap_bits = g.precision_cap;
    return t;
}

// ---------------------------------------------------------------------------

int cmd_certify(const Target& t, const Globals& g) {
    Resolved r = resolve(t, g);
    PisotCertificate c = certify_pisot(r.poly);
    json res{{"target", r.label}, {"poly", report::polynomial(r.poly)}, {"certificate", report::certificate(c)}};
    emit(report::envelope("certify", target_inputs(t), res), g);
    return c.verdict == Verdict::not_pisot ? not_pisot : ok;
}

int cmd_iterate(const Target& t, int kmax, const std::string& range, const Globals& g) {
    Resolved r = resolve(t, g);
    NumberField f(r.poly);
    auto [lo, hi] = parse_range(range);
    const int k = kmax >= 0 ? kmax : f.degree() - 1;
    IterateTable tab = build_table(f, k, lo, hi, transform_options(g));
    json errors = json::array();
    for (long n = lo; n <= hi; ++n)
        for (int j = 0; j <= k; ++j) {
            const auto& c = tab.at(j, n);
            if (!c.ok() && c.error_code != "UpstreamFailure")
                errors.push_back(report::error(c.error_code, c.error_message, {{"k", j}, {"n", n}}));
        }
    json inputs = target_inputs(t);
    inputs["kmax"] = k;
    inputs["n"] = {lo, hi};
    json res{{"target", r.label}, {"poly", report::polynomial(r.poly)}, {"table", report::table(tab)}};
    emit(report::envelope("iterate", inputs, res, errors), g);
    return errors.empty() ? ok : rounding;
}

int cmd_suite(const Target& t, const std::string& family, u64 pmax, bool findings, const Globals& g) {
    SuiteOptions opt;
    opt.p_hi = pmax;
    opt.exact_limit = g.exact_limit;
    opt.transform = transform_options(g);
    json inputs = target_inputs(t);
    inputs["pmax"] = pmax;
    inputs["findings"] = findings;
    json res;
    bool passed = true;
    if (!family.empty()) {
        inputs["family"] = family;
        auto spec = parse_heart(family);
        auto rep = generalized_congruence_check(spec, pmax, parse_tolerance(g.tol), g.bits, opt);
        if (findings) rep.suite.expectations.clear();
        res = {{"target", spec.to_string()},
               {"solution", report::solution(rep.solution)},
               {"suite", report::suite(rep.suite)}};
        passed = rep.suite.all_passed();
    } else {
        Resolved r = resolve(t, g);
        NumberField f(r.poly);
        auto rep = run_suite(f, findings ? std::vector<Expectation>{} : r.expectations, opt);
        res = {{"target", r.label}, {"suite", report::suite(rep)}};
        passed = rep.all_passed();
    }
    emit(report::envelope("suite", inputs, res), g);
    return passed ? ok : expectation;
}

int cmd_limits_solve(const std::string& fam, long m, long n, long l, const Globals& g) {
    auto family = parse_family(fam);
    if (!family) throw InvalidParameters("unknown family '" + fam + "'");
    LogEquationSpec spec{*family, m, n, l};
    json inputs = report::spec(spec);
    auto sol = solve_log_equation(spec, parse_tolerance(g.tol), g.bits);
    emit(report::envelope("limits solve", inputs, {{"solution", report::solution(sol)}}), g);
    return ok;
}

int cmd_limits_identities(const std::string& range, const std::vector<std::string>& kinds, const Globals& g) {
    auto [lo, hi] = parse_range(range);
    const Rational tol = parse_tolerance(g.tol);
    std::vector<std::string> ks = kinds.empty()
                                      ? std::vector<std::string>{"I", "II", "alpha2_pair", "alpha3_extra", "delta_prime"}
                                      : kinds;
    json checks = json::array();
    bool all = true;
    for (const auto& ks_name : ks) {
        const IdentityKind kind = parse_identity_kind(ks_name);
        const bool indexed = kind == IdentityKind::I || kind == IdentityKind::II;
        for (long n = indexed ? lo : 0; n <= (indexed ? hi : 0); ++n) {
            auto c = verify_identity(kind, n, g.bits);
            json j = report::identity(c);
            j["below_tol"] = c.below(tol);
            all = all && c.below(tol);
            checks.push_back(j);
        }
    }
    json inputs{{"n", {lo, hi}}, {"kinds", ks}, {"bits", g.bits}, {"tol", g.tol}};
    json errors = json::array();
    if (!all) errors.push_back(report::error("ResidualTooLarge", "some residual is not below " + g.tol));
    emit(report::envelope("limits identities", inputs, {{"checks", checks}, {"all_below_tol", all}}, errors), g);
    return all ? ok : residual;
}

int cmd_limits_ordering(int count, const Globals& g) {
    auto rep = ordering_check(count, std::max<Bits>(64, g.bits));
    emit(report::envelope("limits ordering", {{"count", count}}, report::ordering(rep)), g);
    return rep.holds() ? ok : failure;
}

int cmd_generate(long target, long degree_param, long l, long count, u64 pmax, const Globals& g) {
    LogEquationSpec spec{Family::heart, target, degree_param, l};
    auto sol = solve_log_equation(spec, parse_tolerance(g.tol), g.bits);
    NumberField f(sol.poly, sol.certificate);
    const long hi = std::max<long>(count, static_cast<long>(pmax));
    IterateTable tab = build_table(f, 0, 1, hi, transform_options(g));
    json terms = json::array();
    for (long n = 1; n <= count; ++n) terms.push_back(report::big(*tab.at(0, n).integer_part));
    json residues = json::array(), exceptions = json::array();
    for (u64 p : primes_between(2, pmax)) {
        const BigInt& u = *tab.at(0, static_cast<long>(p)).integer_part;
        BigInt diff = u - target;
        const bool holds = mpz_divisible_ui_p(diff.get_mpz_t(), p) != 0;
        residues.push_back({{"p", p}, {"u_mod_p", detail::reduce(u, p)}, {"holds", holds}});
        if (!holds) exceptions.push_back(p);
    }
    json inputs{{"target", target}, {"n", degree_param}, {"l", l}, {"count", count}, {"pmax", pmax}};
    json res{{"solution", report::solution(sol)},
             {"terms", terms},
             {"residues", residues},
             {"exceptional_primes", exceptions}};
    emit(report::envelope("generate", inputs, res), g);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact iterates of x -> theta^n (x - [x]) on powers of Pisot numbers"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--bits", g.bits, "working precision for limit points and identities")
        ->envname("PISOT_BITS")
        ->check(CLI::Range(64, 1 << 20));
    app.add_option("--tol", g.tol, "residual tolerance")->envname("PISOT_TOL");
    app.add_option("--exact-limit", g.exact_limit, "largest prime computed exactly")->envname("PISOT_EXACT_LIMIT");
    app.add_option("--precision-cap", g.precision_cap, "rounding precision cap in bits")
        ->envname("PISOT_PRECISION_CAP");
    app.add_option("--catalog", g.catalog, "catalog JSON file")->envname("PISOT_CATALOG");
    app.add_flag("--pretty", g.pretty, "indent the JSON report");

    Target target;
    auto* certify = app.add_subcommand("certify", "certify a Pisot number");
    target.add_to(certify);

    auto* iterate = app.add_subcommand("iterate", "table of I^k(theta^n) and u^k_n");
    target.add_to(iterate);
    int kmax = -1;
    std::string n_range = "1:30";
    iterate->add_option("--kmax", kmax, "highest level (default degree - 1)");
    iterate->add_option("--n", n_range, "exponent range a:b");

    auto* suite = app.add_subcommand("suite", "full audit with optional expectations");
    target.add_to(suite);
    std::string family;
    u64 pmax = 100;
    bool findings = false;
    suite->add_option("--family", family, "heart:m,n,l");
    suite->add_option("--pmax", pmax, "largest prime scanned");
    suite->add_flag("--findings", findings, "report only, no expectations");

    auto* limits = app.add_subcommand("limits", "limit points of the logarithmic equations");
    limits->require_subcommand(1);
    auto* solve = limits->add_subcommand("solve", "solve one equation");
    std::string fam = "heart";
    long m = 2, n = 1, l = 1;
    solve->add_option("--family", fam, "club, heart or spade");
    solve->add_option("--m", m);
    solve->add_option("--n", n);
    solve->add_option("--l", l, "heart only");
    auto* identities = limits->add_subcommand("identities", "certified identity residuals");
    std::string id_range = "1:10";
    std::vector<std::string> kinds;
    identities->add_option("--n", id_range, "index range a:b for I and II");
    identities->add_option("--kind", kinds, "I, II, alpha2_pair, alpha3_extra, delta_prime");
    auto* ordering = limits->add_subcommand("ordering", "certified ordering chain");
    int count = 3;
    ordering->add_option("--count", count);

    auto* generate = app.add_subcommand("generate", "sequence with u_p = target (mod p)");
    long gen_target = 2, gen_n = 2, gen_l = 1, gen_count = 30;
    u64 gen_pmax = 100;
    generate->add_option("--target", gen_target, "residue, at least 2")->required();
    generate->add_option("--n", gen_n, "equation index n");
    generate->add_option("--l", gen_l, "equation parameter l");
    generate->add_option("--count", gen_count, "number of terms printed");
    generate->add_option("--pmax", gen_pmax, "largest prime checked");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bad_input;
    }

    std::string command;
    for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        command += (command.empty() ? "" : " ") + sub->get_name();
    }
    try {
        if (*certify) return cmd_certify(target, g);
        if (*iterate) return cmd_iterate(target, kmax, n_range, g);
        if (*suite) return cmd_suite(target, family, pmax, findings, g);
        if (*solve) return cmd_limits_solve(fam, m, n, l, g);
        if (*identities) return cmd_limits_identities(id_range, kinds, g);
        if (*ordering) return cmd_limits_ordering(count, g);
        if (*generate) return cmd_generate(gen_target, gen_n, gen_l, gen_count, gen_pmax, g);
    } catch (const Error& e) {
        emit(report::envelope(command, json::object(), nullptr, json::array({report::error(e.code(), e.what())})), g);
        return exit_for(e.code());
    }
    return failure;
}
