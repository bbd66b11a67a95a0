// Acceptance run: one PASS/FAIL line per criterion, with detail lines for
// anything that did not hold. Exit status is 0 only when every criterion
// passes.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pisot/catalog.hpp"
#include "pisot/primes.hpp"
#include "pisot/report.hpp"

using namespace pisot;

namespace {

struct Tally {
    bool ok = true;
    std::vector<std::string> details;

    void fail(std::string why) {
        ok = false;
        details.push_back(std::move(why));
    }
    void note(std::string what) { details.push_back("note: " + std::move(what)); }
};

struct Criterion {
    int id;
    std::string title;
    double time_limit_s;
    std::function<void(Tally&)> body;
};

// Tolerances and bounds.
constexpr long kQuadraticMaxN = 50;
constexpr u64 kDelta2PrimeLo = 13, kDelta2PrimeHi = 199;
constexpr long kDelta2ConstLo = 11, kDelta2ConstHi = 100;
constexpr long kAtypicalLo = 43, kAtypicalHi = 120;
constexpr u64 kFamilyPrimeHi = 97, kFamilyMaxOnsetPrime = 13;
constexpr u64 kOraclePrimeHi = 293;
constexpr Bits kIdentityBits = 256;
const char* const kIdentityTol = "1e-40";
constexpr int kSyntheticTrials = 200;
constexpr int kRoundingSamples = 1000;
constexpr Bits kOracleBits = 4096;
const char* const kResidualTol = "1e-30";
constexpr long kConvergenceTableHi = 120, kConvergenceMaxOnset = 80;

std::string str(const BigInt& z) { return z.get_str(); }

IntPolynomial from_longs(const std::vector<long>& a) {
    std::vector<BigInt> c(a.begin(), a.end());
    return IntPolynomial(std::move(c));
}

std::vector<long> to_longs(const IntPolynomial& p) {
    std::vector<long> out;
    for (const auto& c : p.coeffs()) out.push_back(c.get_si());
    return out;
}

// First exponent from which (d - 1) r^n < 1/4, r a certified conjugate bound;
// from there u^0_n equals the power sum of the roots.
long power_sum_threshold(const NumberField& f) {
    const double r = mpfr_get_d(f.conjugate_bound().get(), MPFR_RNDU);
    double v = f.degree() - 1;
    long n = 0;
    while (v >= 0.25) {
        v *= r;
        ++n;
    }
    return n;
}

u64 mod_u(const BigInt& z, u64 p) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

// ---------------------------------------------------------------------------

void quadratic_law(Tally& out) {
    for (const auto& a : std::vector<std::vector<long>>{{-1, -1, 1}, {-1, -2, 1}, {1, -3, 1}}) {
        NumberField f(from_longs(a));
        auto t = build_table(f, 1, 1, kQuadraticMaxN);
        BigInt a0_pow = 1;
        for (long n = 1; n <= kQuadraticMaxN; ++n) {
            a0_pow *= a[0];
            if (n < 2) continue;
            const auto& c = t.at(1, n);
            const FieldElement want = FieldElement::constant(2, -a0_pow);
            if (!c.ok() || c.element != want)
                out.fail(f.min_poly().to_string() + ": I^1(theta^" + std::to_string(n) + ") is not " + str(-a0_pow));
        }
    }
}

void delta2(Tally& out) {
    NumberField f(IntPolynomial{1, 0, -2, -1, 1});
    auto t = build_table(f, 3, 1, static_cast<long>(kDelta2PrimeHi));
    for (u64 p : primes_between(kDelta2PrimeLo, kDelta2PrimeHi)) {
        const auto& c = t.at(2, static_cast<long>(p));
        if (!c.ok()) out.fail("u^2_" + std::to_string(p) + " not computed: " + c.error_code);
        else if (mod_u(*c.integer_part, p) != 0) out.fail("u^2_" + std::to_string(p) + " = " + str(*c.integer_part) + " is not 0 mod p");
    }
    for (long m = kDelta2ConstLo; m <= kDelta2ConstHi; ++m) {
        const auto& c = t.at(3, m);
        if (!c.ok() || *c.integer_part != -1) out.fail("u^3_" + std::to_string(m) + " != -1");
    }
    long first = kDelta2ConstLo;
    while (first > 1 && t.at(3, first - 1).ok() && *t.at(3, first - 1).integer_part == -1) --first;
    out.note("u^3_m = -1 already from m = " + std::to_string(first));
}

void atypical(Tally& out) {
    NumberField f(IntPolynomial{-1, 1, -1, 0, 1, -2, 1});
    auto t = build_table(f, 5, 1, kAtypicalHi);
    for (long l = kAtypicalLo; l <= kAtypicalHi; ++l) {
        const auto& c = t.at(5, l);
        const long want = l % 2 == 0 ? -1 : 1;
        if (!c.ok() || *c.integer_part != want)
            out.fail("level 5 at l = " + std::to_string(l) + " is " + (c.ok() ? str(*c.integer_part) : c.error_code) +
                     ", expected " + std::to_string(want));
    }
}

void family_pattern(Tally& out, bool alpha) {
    SuiteOptions opt;
    opt.p_hi = kFamilyPrimeHi;
    opt.exact_limit = static_cast<long>(kFamilyPrimeHi);
    for (long n = 2; n <= 5; ++n) {
        const IntPolynomial p = alpha ? alpha_poly(n) : beta_poly(n);
        auto ex = alpha ? alpha_expectations(n, kFamilyMaxOnsetPrime) : beta_expectations(n, kFamilyMaxOnsetPrime);
        ex.pop_back();  // the top-level constant is not part of this criterion
        auto rep = run_suite(NumberField(p), ex, opt);
        const std::string name = std::string(alpha ? "alpha_" : "beta_") + std::to_string(n);
        for (const auto& e : rep.expectations) {
            if (e.outcome == pisot::Outcome::fail) out.fail(name + " " + e.expectation.label + ": " + e.detail);
        }
        for (const auto& lv : rep.levels) {
            if (lv.level >= n) continue;
            const auto& c = lv.congruence;
            if (c.onset_prime && *c.onset_prime > kFamilyMaxOnsetPrime) {
                // name the residue that breaks the run just before the onset
                for (std::size_t i = 0; i + 1 < c.residues.size(); ++i)
                    if (c.residues[i + 1].prime == *c.onset_prime)
                        out.note(name + " level " + std::to_string(lv.level) + ": u_" + std::to_string(c.residues[i].prime) +
                                 " = " + std::to_string(*c.residues[i].symmetric()) + " (mod " +
                                 std::to_string(c.residues[i].prime) + ")");
            }
        }
    }
}

void oracle_congruences(Tally& out) {
    struct Case {
        std::string name;
        std::vector<long> poly;
        std::vector<mpz_class> seq;
        u64 residue;
    };
    const long hi = static_cast<long>(kOraclePrimeHi);
    std::vector<Case> cases{{"Lucas", {-1, -1, 1}, oracle::lucas(hi), 1}, {"Perrin", {-1, -1, 0, 1}, oracle::perrin(hi), 0}};
    for (const auto& c : cases) {
        NumberField f(from_longs(c.poly));
        const long n0 = power_sum_threshold(f);
        auto t = build_table(f, 0, 1, hi);
        std::vector<u64> below;
        for (u64 p : primes_between(2, kOraclePrimeHi)) {
            const auto& s = c.seq[static_cast<std::size_t>(p)];
            if (mod_u(s, p) != c.residue % p) out.fail(c.name + " oracle: term " + std::to_string(p) + " has the wrong residue");
            if (static_cast<long>(p) < n0) {
                below.push_back(p);
                continue;
            }
            const BigInt& u = *t.at(0, static_cast<long>(p)).integer_part;
            if (u != s) out.fail(c.name + ": transform u^0_" + std::to_string(p) + " = " + str(u) + " differs from the oracle");
            if (mod_u(u, p) != c.residue % p) out.fail(c.name + ": transform u^0_" + std::to_string(p) + " has the wrong residue");
        }
        if (!below.empty()) {
            std::string ps;
            for (u64 p : below) ps += (ps.empty() ? "" : ", ") + std::to_string(p);
            out.note(c.name + ": u^0_p equals the sequence only from n = " + std::to_string(n0) +
                     " (conjugate bound); primes " + ps + " checked on the oracle alone");
        }
    }
}

void identities(Tally& out) {
    const Rational tol = parse_tolerance(kIdentityTol);
    auto check = [&](IdentityKind k, long n) {
        auto c = verify_identity(k, n, kIdentityBits);
        for (const auto& term : c.terms)
            if (!term.residual.certainly_less(tol))
                out.fail(std::string(to_string(k)) + " n=" + std::to_string(n) + ": " + term.expression +
                         " residual up to " + term.residual.hi_decimal(6));
    };
    for (long n = 1; n <= 10; ++n) {
        check(IdentityKind::I, n);
        check(IdentityKind::II, n);
    }
    check(IdentityKind::alpha2_pair, 2);
    check(IdentityKind::delta_prime, 0);
    check(IdentityKind::alpha3_extra, 3);
}

void ordering(Tally& out) {
    auto r = ordering_check(3);
    if (!r.alpha1_equals_beta1) out.fail("alpha_1 != beta_1");
    if (!r.all_below_two) out.fail("a chain member is not certified below 2");
    for (std::size_t i = 0; i < r.separated.size(); ++i)
        if (!r.separated[i]) out.fail(r.chain[i].label + " < " + r.chain[i + 1].label + " not certified");
    std::string chain;
    for (const auto& e : r.chain) chain += (chain.empty() ? "" : " < ") + e.label;
    out.note(chain + " < 2 at " + std::to_string(r.bits) + " bits");
}

void recurrences(Tally& out, const std::vector<CatalogEntry>& cat) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> coef(-5, 5), junk(-1000000000L, 1000000000L);
    int recovered = 0;
    for (int t = 0; t < kSyntheticTrials; ++t) {
        const int order = 1 + static_cast<int>(rng() % 6);
        const long garbage = static_cast<long>(rng() % 11);
        std::vector<long> b(static_cast<std::size_t>(order));
        for (auto& c : b) c = coef(rng);
        while (b.back() == 0) b.back() = coef(rng);
        std::vector<mpz_class> init;
        for (int i = 0; i < order; ++i) init.emplace_back(junk(rng));
        auto tail = oracle::linear_sequence(b, init, 3 * order + 12);
        std::vector<BigInt> seq;
        for (long i = 0; i < garbage; ++i) seq.emplace_back(junk(rng));
        seq.insert(seq.end(), tail.begin(), tail.end());
        try {
            Recurrence r = detect_recurrence(seq);
            bool same = r.order == order && r.onset == garbage;
            for (int i = 0; same && i < order; ++i) same = r.coeffs[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(i)];
            if (same) ++recovered;
            else out.fail("trial " + std::to_string(t) + ": planted order " + std::to_string(order) + " onset " +
                          std::to_string(garbage) + ", detected order " + std::to_string(r.order) + " onset " +
                          std::to_string(r.onset));
        } catch (const Error& e) {
            out.fail("trial " + std::to_string(t) + ": " + e.what());
        }
    }
    out.note(std::to_string(recovered) + "/" + std::to_string(kSyntheticTrials) + " planted recurrences recovered");

    for (const auto& e : cat) {
        NumberField f(e.poly);
        auto t = build_table(f, 0, 1, 120);
        std::vector<BigInt> row;
        for (long n = 1; n <= 120; ++n) row.push_back(*t.at(0, n).integer_part);
        Recurrence r = detect_recurrence(row, 1);
        auto m = compare_recurrence(r, predicted_recurrence(e.poly, PredictionVariant::zero_iterate));
        if (m.outcome != MatchOutcome::equal) out.fail(e.name + ": level 0 recurrence " + to_string(m.outcome));
    }
}

void rounding(Tally& out, const std::vector<CatalogEntry>& cat) {
    std::mt19937_64 rng(7);
    for (const auto& e : cat) {
        NumberField f(e.poly);
        oracle::Mp theta(kOracleBits);
        oracle::dominant_root(theta.v, to_longs(e.poly), kOracleBits);
        int bad = 0;
        for (int s = 0; s < kRoundingSamples; ++s) {
            auto x = FieldElement::zero(f.degree());
            for (auto& c : x.coords) {
                BigInt v = 0;
                for (int w = 0; w < 3; ++w) v = (v << 32) + static_cast<unsigned long>(rng() & 0xffffffffUL);
                c = (rng() & 1) ? BigInt(-v) : v;
            }
            if (nearest_integer(f, x) != oracle::direct_round(x.coords, theta.v, kOracleBits)) ++bad;
        }
        if (bad) out.fail(e.name + ": " + std::to_string(bad) + " roundings disagree with the direct evaluation");
    }
    for (const auto& q : {Rational(1, 2), Rational(-5, 2), Rational(201, 2)}) {
        try {
            round_rational(q);
            out.fail(q.get_str() + " was rounded instead of raising ExactHalfInteger");
        } catch (const ExactHalfInteger&) {
        }
    }
}

void log_equations(Tally& out) {
    const Rational tol = parse_tolerance(kResidualTol);
    int solved = 0;
    for (long m = 2; m <= 5; ++m)
        for (long n = 1; n <= 6; ++n) {
            std::vector<LogEquationSpec> specs;
            specs.push_back({Family::club, m, n, 0});
            specs.push_back({Family::spade, m, n, 0});
            for (long l = 1; l < m; ++l) specs.push_back({Family::heart, m, n, l});
            for (const auto& s : specs) {
                try {
                    auto sol = solve_log_equation(s, tol);
                    if (sol.certificate.verdict != Verdict::pisot) out.fail(s.to_string() + ": verdict " + to_string(sol.certificate.verdict));
                    if (!sol.residual.certainly_less(tol)) out.fail(s.to_string() + ": residual above tolerance");
                    ++solved;
                } catch (const NoRootInInterval& e) {
                    // club(2, 1) reduces to (x - 1)^2: no root in ]1, 2[ and log x = 0 at x = 1
                    if (s.family == Family::club && m == 2 && n == 1) out.note(s.to_string() + " excluded: " + e.what());
                    else out.fail(s.to_string() + ": " + e.what());
                } catch (const Error& e) {
                    out.fail(s.to_string() + ": " + e.code() + " " + e.what());
                }
            }
        }
    for (long n = 1; n <= 6; ++n)
        if (solve_log_equation({Family::heart, 2, n, 1}, tol).poly != alpha_poly(n))
            out.fail("heart(2, " + std::to_string(n) + ", 1) does not reduce to alpha_" + std::to_string(n));
    out.note(std::to_string(solved) + " equations solved");
}

void convergence(Tally& out, const std::vector<CatalogEntry>& cat) {
    for (const auto& e : cat) {
        NumberField f(e.poly);
        auto t = build_table(f, f.degree() - 1, 1, kConvergenceTableHi);
        for (int lambda = 0; lambda < f.degree(); ++lambda) {
            const std::string where = e.name + " lambda=" + std::to_string(lambda);
            try {
                auto rep = convergence_check(t, lambda);
                if (!rep.onset_estimate) {
                    const auto& v = rep.violations.back();
                    out.fail(where + ": no decreasing tail; last violation " + v.kind + " at n=" + std::to_string(v.sigma) +
                             ".." + std::to_string(v.nu));
                } else if (*rep.onset_estimate > kConvergenceMaxOnset) {
                    out.fail(where + ": onset " + std::to_string(*rep.onset_estimate) + " > " +
                             std::to_string(kConvergenceMaxOnset));
                } else if (!rep.erratic.empty()) {
                    out.note(where + ": onset " + std::to_string(*rep.onset_estimate) + " after " +
                             std::to_string(rep.erratic.size()) + " erratic steps");
                }
            } catch (const Error& ex) {
                out.fail(where + ": " + ex.code() + " " + ex.what());
            }
        }
    }
}

// Findings the artifact audits rather than asserts must be reproducible.
void findings_reproducible(Tally& out) {
    auto run = [] {
        std::string s;
        s += report::suite(run_suite(NumberField(alpha_poly(3)), alpha_expectations(3))).dump();
        LogEquationSpec h{Family::heart, 5, 2, 1};
        s += report::suite(generalized_congruence_check(h, 100).suite).dump();
        s += report::suite(run_suite(NumberField(IntPolynomial{-1, 1, -1, 0, 1, -2, 1}))).dump();
        return s;
    };
    if (run() != run()) out.fail("suite reports differ between runs");
}

} // namespace

int main(int argc, char** argv) {
    std::string out_path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--out" && i + 1 < argc) out_path = argv[++i];
        else {
            std::cerr << "usage: acceptance [--out FILE]\n";
            return 2;
        }
    }
    const auto cat = load_catalog(default_catalog_path());

    std::vector<Criterion> criteria{
        {1, "quadratic law u^1_n = -a_0^n", 5, quadratic_law},
        {2, "delta'_2 level-2 congruence and level-3 constant", 120, delta2},
        {3, "atypical sextic level-5 alternation", 120, atypical},
        {4, "alpha-pattern congruences", 300, [](Tally& o) { family_pattern(o, true); }},
        {5, "beta-pattern congruences", 300, [](Tally& o) { family_pattern(o, false); }},
        {6, "Lucas and Perrin oracle congruences", 60, oracle_congruences},
        {7, "log identities at 256 bits", 30, identities},
        {8, "limit point ordering", 10, ordering},
        {9, "recurrence detection", 60, [&](Tally& o) { recurrences(o, cat); }},
        {10, "rounding certification", 60, [&](Tally& o) { rounding(o, cat); }},
        {11, "log-equation residual gate", 120, log_equations},
        {12, "convergence onsets", 300, [&](Tally& o) { convergence(o, cat); }},
    };

    std::ostringstream log;
    auto emit = [&](const std::string& line) {
        std::cout << line << '\n' << std::flush;
        log << line << '\n';
    };
    int passed = 0;
    for (const auto& c : criteria) {
        Tally o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.fail(std::string("uncaught: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.time_limit_s) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.time_limit_s) + " s");
        char head[160];
        std::snprintf(head, sizeof head, "[%s] %2d %s (%.2f s)", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
        emit(head);
        const std::size_t shown = 64;
        for (std::size_t i = 0; i < o.details.size() && i < shown; ++i) emit("       " + o.details[i]);
        if (o.details.size() > shown) emit("       ... " + std::to_string(o.details.size() - shown) + " more");
        if (o.ok) ++passed;
    }
    {
        Tally o;
        findings_reproducible(o);
        emit(std::string("[") + (o.ok ? "PASS" : "FAIL") + "]  F findings reports reproducible across runs");
        for (const auto& d : o.details) emit("       " + d);
    }
    const int total = static_cast<int>(criteria.size());
    emit("acceptance: " + std::to_string(total) + " criteria evaluated, " + std::to_string(passed) + " passed, " +
         std::to_string(total - passed) + " failed");
    if (!out_path.empty()) std::ofstream(out_path) << log.str();
    return passed == total ? 0 : 1;
}
