#ifndef PISOT_SUITE_HPP
#define PISOT_SUITE_HPP

// Orchestrates a full audit of one Pisot number: iterate table, recurrence
// per level, prime-congruence branches, tail constants, convergence onsets,
// predicted-recurrence comparisons and characteristic-polynomial symmetry.
// Optional expectations are graded pass/fail/skipped; claims are never
// asserted by the suite itself.

#include <optional>
#include <string>
#include <vector>

#include "pisot/congruence.hpp"

namespace pisot {

enum class ExpectationKind { congruence, constant, recurrence };
enum class Outcome { pass, fail, skipped };

inline const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skipped: return "skipped";
    }
    return "skipped";
}

/// One expected pattern, applied to every level in [level, level_hi]. An
/// empty range (level > level_hi) is vacuous and graded as skipped.
struct Expectation {
    ExpectationKind kind = ExpectationKind::congruence;
    int level = 0;
    int level_hi = 0;
    std::string label;
    long long residue = 0;                 // congruence: symmetric residue
    std::optional<u64> max_onset_prime;    // congruence
    ConstantKind constant = ConstantKind::none;
    std::optional<long> max_onset;         // constant
    PredictionVariant variant = PredictionVariant::zero_iterate;  // recurrence

    static Expectation congruence_at(int lo, int hi, long long residue, std::optional<u64> max_onset, std::string label) {
        Expectation e;
        e.kind = ExpectationKind::congruence;
        e.level = lo;
        e.level_hi = hi;
        e.residue = residue;
        e.max_onset_prime = max_onset;
        e.label = std::move(label);
        return e;
    }
    static Expectation constant_at(int level, ConstantKind c, std::optional<long> max_onset, std::string label) {
        Expectation e;
        e.kind = ExpectationKind::constant;
        e.level = e.level_hi = level;
        e.constant = c;
        e.max_onset = max_onset;
        e.label = std::move(label);
        return e;
    }
    static Expectation recurrence_at(PredictionVariant v, std::string label) {
        Expectation e;
        e.kind = ExpectationKind::recurrence;
        e.variant = v;
        e.label = std::move(label);
        return e;
    }
};

struct ExpectationResult {
    Expectation expectation;
    Outcome outcome = Outcome::skipped;
    std::string detail;
};

struct LevelReport {
    int level = 0;
    std::optional<Recurrence> recurrence;
    std::string recurrence_error;
    std::optional<IntPolynomial> characteristic;
    std::optional<SymmetryClass> symmetry;
    CongruenceReport congruence;
    std::string congruence_error;
    ConstantVerdict constant;
    std::optional<ConvergenceReport> convergence;
    std::string convergence_error;
};

struct PredictionCheck {
    PredictedRecurrence predicted;
    std::optional<MatchReport> match;
    std::string note;
};

struct PairAudit {
    int level_a = 0, level_b = 0;
    PairRelation relation = PairRelation::none;
};

struct SuiteOptions {
    u64 p_hi = 100;
    long exact_limit = 300;
    // Table covers n in [1, max(table_min, min(p_hi, exact_limit))].
    long table_min = 60;
    // Highest level examined; negative selects degree - 1.
    int k_max = -1;
    int min_agreeing = 5;
    TransformOptions transform;
};

struct SuiteReport {
    IntPolynomial poly;
    long n_lo = 1, n_hi = 1;
    u64 p_hi = 0;
    std::vector<LevelReport> levels;
    std::vector<PredictionCheck> predictions;
    std::vector<PairAudit> pair_audit;
    std::vector<ExpectationResult> expectations;
    std::vector<std::string> errors;  // "(k, n): code" of failed table cells

    bool all_passed() const {
        for (const auto& e : expectations)
            if (e.outcome == Outcome::fail) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Expected patterns for the named families

/// alpha_n (degree n+1): u^0_p = 2, u^k_p = 0 for 0 < k < n-1, u^{n-1}_p = -1
/// (mod p); level n constant +1 for even n, alternating +1/-1 for odd n.
inline std::vector<Expectation> alpha_expectations(long n, std::optional<u64> max_onset_prime = std::nullopt) {
    const int top = static_cast<int>(n);
    std::vector<Expectation> out;
    out.push_back(Expectation::congruence_at(0, 0, 2, max_onset_prime, "alpha: u^0_p = 2 (mod p)"));
    out.push_back(Expectation::congruence_at(1, top - 2, 0, max_onset_prime, "alpha: u^k_p = 0 (mod p), 0 < k < n-1"));
    out.push_back(Expectation::congruence_at(top - 1, top - 1, -1, max_onset_prime, "alpha: u^{n-1}_p = -1 (mod p)"));
    if (n % 2 == 0)
        out.push_back(Expectation::constant_at(top, ConstantKind::plus_one, std::nullopt, "alpha_{2m}: I^{2m} = 1"));
    else
        out.push_back(Expectation::constant_at(top, ConstantKind::alternating_odd_plus, std::nullopt,
                                               "alpha_{2m-1}: I^{2m-1} = +1 at odd, -1 at even exponents"));
    return out;
}

/// beta_n (degree n+1): u^k_p = 1 (mod p) for every k < n; level n constant
/// +1 for even n, alternating for odd n.
inline std::vector<Expectation> beta_expectations(long n, std::optional<u64> max_onset_prime = std::nullopt) {
    const int top = static_cast<int>(n);
    std::vector<Expectation> out;
    out.push_back(Expectation::congruence_at(0, top - 1, 1, max_onset_prime, "beta: u^k_p = 1 (mod p), k < n"));
    if (n % 2 == 0)
        out.push_back(Expectation::constant_at(top, ConstantKind::plus_one, std::nullopt, "beta_{2m}: I^{2m} = 1"));
    else
        out.push_back(Expectation::constant_at(top, ConstantKind::alternating_odd_plus, std::nullopt,
                                               "beta_{2m-1}: I^{2m-1} = +1 at odd, -1 at even exponents"));
    return out;
}

/// Root of the heart equation with parameter m, field degree d: u^0_p = m,
/// middle levels 0 < k < d-2 vanish, u^{d-2}_p = -1 (mod p), I^{d-1} = 1.
inline std::vector<Expectation> heart_expectations(long m, int degree, std::optional<u64> max_onset_prime = std::nullopt) {
    std::vector<Expectation> out;
    out.push_back(Expectation::congruence_at(0, 0, m, max_onset_prime, "heart: u^0_p = m (mod p)"));
    out.push_back(Expectation::congruence_at(1, degree - 3, 0, max_onset_prime, "heart: u^k_p = 0 (mod p), 0 < k < d-2"));
    out.push_back(Expectation::congruence_at(degree - 2, degree - 2, -1, max_onset_prime, "heart: u^{d-2}_p = -1 (mod p)"));
    out.push_back(Expectation::constant_at(degree - 1, ConstantKind::plus_one, std::nullopt, "heart: I^{d-1} = 1"));
    return out;
}

// ---------------------------------------------------------------------------

namespace detail {

inline ExpectationResult grade(const Expectation& e, const SuiteReport& rep, const std::vector<PredictionCheck>& preds) {
    ExpectationResult res{e, Outcome::skipped, ""};
    if (e.kind == ExpectationKind::recurrence) {
        for (const auto& pc : preds) {
            if (pc.predicted.variant != e.variant) continue;
            if (!pc.match) {
                res.outcome = Outcome::fail;
                res.detail = "no detected recurrence at level " + std::to_string(pc.predicted.level) + ": " + pc.note;
                return res;
            }
            res.outcome = pc.match->outcome == MatchOutcome::mismatch ? Outcome::fail : Outcome::pass;
            res.detail = to_string(pc.match->outcome);
            return res;
        }
        res.detail = "prediction not applicable";
        return res;
    }
    if (e.level > e.level_hi) {
        res.detail = "vacuous level range";
        return res;
    }
    res.outcome = Outcome::pass;
    for (int k = e.level; k <= e.level_hi; ++k) {
        if (k < 0 || k >= static_cast<int>(rep.levels.size())) {
            res.outcome = Outcome::skipped;
            res.detail = "level " + std::to_string(k) + " not computed";
            return res;
        }
        const LevelReport& lv = rep.levels[static_cast<std::size_t>(k)];
        std::string d;
        bool ok = true;
        if (e.kind == ExpectationKind::congruence) {
            const auto& c = lv.congruence;
            ok = c.branch != Branch::mixed && c.value == std::optional<long long>(e.residue) &&
                 (!e.max_onset_prime || (c.onset_prime && *c.onset_prime <= *e.max_onset_prime));
            d = "k=" + std::to_string(k) + ": branch " + to_string(c.branch) +
                (c.value ? " value " + std::to_string(*c.value) : "") +
                (c.onset_prime ? " onset p=" + std::to_string(*c.onset_prime) : "");
        } else {
            const auto& c = lv.constant;
            ok = c.kind == e.constant && (!e.max_onset || (c.onset && *c.onset <= *e.max_onset));
            d = "k=" + std::to_string(k) + ": " + to_string(c.kind) +
                (c.onset ? " onset n=" + std::to_string(*c.onset) : "") + (c.exact ? " exact" : "");
        }
        if (!res.detail.empty()) res.detail += "; ";
        res.detail += d;
        if (!ok) res.outcome = Outcome::fail;
    }
    return res;
}

} // namespace detail

inline SuiteReport run_suite(const NumberField& f, const std::vector<Expectation>& expectations = {},
                             const SuiteOptions& opt = {}) {
    SuiteReport rep;
    rep.poly = f.min_poly();
    rep.p_hi = opt.p_hi;
    const int d = f.degree();
    const int k_max = opt.k_max >= 0 ? opt.k_max : std::max(d - 1, 0);
    rep.n_lo = 1;
    rep.n_hi = std::max<long>(opt.table_min, std::min<long>(static_cast<long>(opt.p_hi), opt.exact_limit));
    IterateTable table = build_table(f, k_max, rep.n_lo, rep.n_hi, opt.transform);
    for (long n = rep.n_lo; n <= rep.n_hi; ++n)
        for (int k = 0; k <= k_max; ++k)
            if (!table.at(k, n).ok() && table.at(k, n).error_code != "UpstreamFailure")
                rep.errors.push_back("(k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                                     "): " + table.at(k, n).error_code);

    for (int k = 0; k <= k_max; ++k) {
        LevelReport lv;
        lv.level = k;
        // recurrence on the longest fully rounded suffix of the row
        std::vector<BigInt> row;
        long first = rep.n_hi + 1;
        while (first > rep.n_lo && table.at(k, first - 1).ok()) --first;
        for (long n = first; n <= rep.n_hi; ++n) row.push_back(*table.at(k, n).integer_part);
        try {
            lv.recurrence = detect_recurrence(row, first);
            if (lv.recurrence->integral()) {
                lv.characteristic = characteristic_of(*lv.recurrence);
                if (lv.characteristic->degree() >= 1) lv.symmetry = classify_symmetry(*lv.characteristic);
            }
        } catch (const Error& e) {
            lv.recurrence_error = e.code() + ": " + e.what();
        }

        ScanOptions so;
        so.exact_limit = opt.exact_limit;
        so.min_agreeing = opt.min_agreeing;
        so.transform = opt.transform;
        so.table = &table;
        RecurrenceSource src;
        if (lv.recurrence && lv.recurrence->integral() && lv.recurrence->onset + lv.recurrence->order <= rep.n_hi + 1) {
            src.recurrence = *lv.recurrence;
            for (long n = src.recurrence.onset; n < src.recurrence.onset + src.recurrence.order; ++n)
                src.initial_terms.push_back(*table.at(k, n).integer_part);
            so.extension = &src;
        }
        try {
            lv.congruence = congruence_scan(f, k, 2, opt.p_hi, so);
        } catch (const Error& e) {
            lv.congruence_error = e.code() + ": " + e.what();
        }
        lv.constant = constant_detect(table, k);
        try {
            lv.convergence = convergence_check(table, k, 10, opt.transform.rounding);
        } catch (const Error& e) {
            lv.convergence_error = e.code() + ": " + e.what();
        }
        rep.levels.push_back(std::move(lv));
    }

    std::vector<PredictionVariant> variants{PredictionVariant::zero_iterate, PredictionVariant::top_iterate_1deg};
    if (alpha_index(f.min_poly())) {
        variants.push_back(PredictionVariant::alpha_form);
        variants.push_back(PredictionVariant::alpha_form_alt);
    }
    if (auto b = beta_index(f.min_poly()))
        variants.push_back(*b % 2 == 1 ? PredictionVariant::beta_odd : PredictionVariant::beta_even);
    for (auto v : variants) {
        PredictionCheck pc;
        try {
            pc.predicted = predicted_recurrence(f.min_poly(), v);
        } catch (const VariantInapplicable& e) {
            if (v == PredictionVariant::top_iterate_1deg && d >= 3) {
                pc.predicted.variant = v;
                pc.note = e.what();
                rep.predictions.push_back(std::move(pc));
            }
            continue;
        }
        if (pc.predicted.level > k_max) continue;
        const LevelReport& lv = rep.levels[static_cast<std::size_t>(pc.predicted.level)];
        if (lv.recurrence) pc.match = compare_recurrence(*lv.recurrence, pc.predicted);
        else pc.note = lv.recurrence_error;
        rep.predictions.push_back(std::move(pc));
    }

    // characteristic polynomials of levels m and d - m + 2
    for (int m = 0; m <= k_max; ++m) {
        const int other = d - m + 2;
        if (other <= m || other > k_max) continue;
        const auto& a = rep.levels[static_cast<std::size_t>(m)].characteristic;
        const auto& b = rep.levels[static_cast<std::size_t>(other)].characteristic;
        if (!a || !b || a->degree() != b->degree() || a->degree() < 1) continue;
        rep.pair_audit.push_back({m, other, classify_pair(*a, *b)});
    }

    for (const auto& e : expectations) rep.expectations.push_back(detail::grade(e, rep, rep.predictions));
    return rep;
}

} // namespace pisot

#endif
