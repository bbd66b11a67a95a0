#ifndef PISOT_CONGRUENCE_HPP
#define PISOT_CONGRUENCE_HPP

// Prime-congruence scans of u^k_p, tail-constant detection and the
// monotone-convergence check on fractional-part magnitudes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pisot/primes.hpp"
#include "pisot/recurrence.hpp"
#include "pisot/transform.hpp"

namespace pisot {

enum class Branch { zero, plus_one, minus_one, other, mixed };

inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::zero: return "zero";
    case Branch::plus_one: return "plus_one";
    case Branch::minus_one: return "minus_one";
    case Branch::other: return "other";
    case Branch::mixed: return "mixed";
    }
    return "mixed";
}

enum class ResidueMethod { exact, recurrence_extended };

inline const char* to_string(ResidueMethod m) {
    return m == ResidueMethod::exact ? "exact" : "recurrence_extended";
}

struct PrimeResidue {
    u64 prime = 0;
    std::optional<u64> residue;  // u^k_p mod p in [0, p); empty when u^k_p failed
    ResidueMethod method = ResidueMethod::exact;
    std::string error;

    /// Representative in (-p/2, p/2].
    std::optional<long long> symmetric() const {
        if (!residue) return std::nullopt;
        const u64 r = *residue;
        return r <= prime / 2 ? static_cast<long long>(r) : -static_cast<long long>(prime - r);
    }
};

struct CongruenceReport {
    int k = 0;
    u64 p_lo = 0, p_hi = 0;
    std::vector<PrimeResidue> residues;  // ascending primes
    Branch branch = Branch::mixed;
    std::optional<long long> value;      // common residue for every branch but mixed
    std::optional<u64> onset_prime;
};

/// A verified recurrence for level k plus the exact terms starting at its onset.
struct RecurrenceSource {
    Recurrence recurrence;
    std::vector<BigInt> initial_terms;
};

struct ScanOptions {
    long exact_limit = 300;
    // Consecutive agreeing primes needed to declare a branch.
    int min_agreeing = 5;
    TransformOptions transform;
    // Used for primes it covers instead of recomputing.
    const IterateTable* table = nullptr;
    // Required for primes above exact_limit.
    const RecurrenceSource* extension = nullptr;
};

namespace detail {

// u^k_n computed from scratch.
inline BigInt exact_iterate(const NumberField& f, int k, long n, const RoundingOptions& opt) {
    const FieldElement theta_n = theta_power(f, static_cast<unsigned long>(n));
    FieldElement x = theta_n;
    for (int j = 0; j < k; ++j) x = iterate_once(f, theta_n, x, opt).first;
    return nearest_integer(f, x, opt);
}

} // namespace detail

/// Classifies the tail of the residue list: the longest run of trailing
/// primes sharing one symmetric residue, if it has at least `min_agreeing`
/// members.
inline void classify_branch(CongruenceReport& rep, int min_agreeing) {
    rep.branch = Branch::mixed;
    rep.value.reset();
    rep.onset_prime.reset();
    if (rep.residues.empty() || !rep.residues.back().residue) return;
    const long long v = *rep.residues.back().symmetric();
    std::size_t start = rep.residues.size() - 1;
    while (start > 0 && rep.residues[start - 1].symmetric() == std::optional<long long>(v)) --start;
    if (static_cast<int>(rep.residues.size() - start) < min_agreeing) return;
    rep.value = v;
    rep.onset_prime = rep.residues[start].prime;
    rep.branch = v == 0 ? Branch::zero : v == 1 ? Branch::plus_one : v == -1 ? Branch::minus_one : Branch::other;
}

inline CongruenceReport congruence_scan(const NumberField& f, int k, u64 p_lo, u64 p_hi, const ScanOptions& opt = {}) {
    if (k < 0 || p_lo > p_hi) throw InvalidParameters("congruence_scan needs k >= 0 and p_lo <= p_hi");
    CongruenceReport rep;
    rep.k = k;
    rep.p_lo = p_lo;
    rep.p_hi = p_hi;
    for (u64 p : primes_between(p_lo, p_hi)) {
        PrimeResidue pr;
        pr.prime = p;
        const long n = static_cast<long>(p);
        if (n <= opt.exact_limit) {
            pr.method = ResidueMethod::exact;
            try {
                BigInt u;
                if (opt.table && opt.table->covers(k, n)) {
                    const TableCell& c = opt.table->at(k, n);
                    if (!c.ok()) throw Error(c.error_code, c.error_message);
                    u = *c.integer_part;
                } else {
                    u = detail::exact_iterate(f, k, n, opt.transform.rounding);
                }
                pr.residue = detail::reduce(u, p);
            } catch (const Error& e) {
                pr.error = e.code() + ": " + e.what();
            }
        } else {
            if (!opt.extension)
                throw RecurrenceUnavailable("prime " + std::to_string(p) + " exceeds the exact limit " +
                                            std::to_string(opt.exact_limit) + " and no recurrence was supplied");
            pr.method = ResidueMethod::recurrence_extended;
            pr.residue = modular_extend(opt.extension->recurrence, opt.extension->initial_terms, p, n);
        }
        rep.residues.push_back(std::move(pr));
    }
    classify_branch(rep, opt.min_agreeing);
    return rep;
}

// ---------------------------------------------------------------------------

enum class ConstantKind { plus_one, minus_one, alternating_odd_plus, alternating_odd_minus, none };

inline const char* to_string(ConstantKind c) {
    switch (c) {
    case ConstantKind::plus_one: return "constant_plus_one";
    case ConstantKind::minus_one: return "constant_minus_one";
    case ConstantKind::alternating_odd_plus: return "alternating_odd_plus";
    case ConstantKind::alternating_odd_minus: return "alternating_odd_minus";
    case ConstantKind::none: return "none";
    }
    return "none";
}

struct ConstantVerdict {
    ConstantKind kind = ConstantKind::none;
    std::optional<long> onset;
    // Every tail element equals the integer exactly, not just after rounding.
    bool exact = false;
};

/// Classifies the tail of row k as constant +-1 or parity-alternating +-1.
/// The tail must span at least `min_tail` exponents.
inline ConstantVerdict constant_detect(const IterateTable& t, int k, int min_tail = 5) {
    if (k < 0 || k > t.k_max()) throw InvalidParameters("level " + std::to_string(k) + " not in table");
    auto expected = [](ConstantKind kind, long n) -> long {
        switch (kind) {
        case ConstantKind::plus_one: return 1;
        case ConstantKind::minus_one: return -1;
        case ConstantKind::alternating_odd_plus: return n % 2 != 0 ? 1 : -1;
        case ConstantKind::alternating_odd_minus: return n % 2 != 0 ? -1 : 1;
        case ConstantKind::none: return 0;
        }
        return 0;
    };
    ConstantVerdict best;
    for (ConstantKind kind : {ConstantKind::plus_one, ConstantKind::minus_one, ConstantKind::alternating_odd_plus,
                              ConstantKind::alternating_odd_minus}) {
        long start = t.n_hi() + 1;
        while (start > t.n_lo()) {
            const TableCell& c = t.at(k, start - 1);
            if (!c.ok() || *c.integer_part != expected(kind, start - 1)) break;
            --start;
        }
        if (t.n_hi() - start + 1 < min_tail) continue;
        if (!best.onset || start < *best.onset) {
            best.kind = kind;
            best.onset = start;
        }
    }
    if (best.onset) {
        best.exact = true;
        for (long n = *best.onset; n <= t.n_hi(); ++n)
            if (!t.at(k, n).element.is_rational()) best.exact = false;
    }
    return best;
}

// ---------------------------------------------------------------------------

struct MagnitudeViolation {
    long sigma = 0, nu = 0;   // consecutive exponents, sigma < nu
    std::string kind;         // "increase", "plateau", "unavailable"
};

struct ConvergenceReport {
    int level = 0;
    std::optional<long> onset_estimate;
    // Failures at or after the onset (all failures when no onset was found).
    std::vector<MagnitudeViolation> violations;
    // Failures before the onset.
    std::vector<MagnitudeViolation> erratic;
};

/// Smallest onset beyond which |I^lambda(theta^n) - u| strictly decreases up
/// to the end of the table; the decreasing tail must cover at least
/// `min_tail` exponents for the onset to count.
inline ConvergenceReport convergence_check(const IterateTable& t, int lambda, int min_tail = 10,
                                           const RoundingOptions& opt = {}) {
    auto mags = frac_magnitudes(t, lambda, opt);
    ConvergenceReport rep;
    rep.level = lambda;
    std::vector<MagnitudeViolation> all;
    for (std::size_t i = 0; i + 1 < mags.size(); ++i) {
        const Ordering o = mags[i].next;
        if (o == Ordering::decreasing) continue;
        if (o == Ordering::incomparable) {
            const TableCell& a = t.at(lambda, mags[i].n);
            const TableCell& b = t.at(lambda, mags[i + 1].n);
            if (a.ok() && b.ok())
                throw IncomparableMagnitudes("magnitudes at n=" + std::to_string(mags[i].n) + " and n=" +
                                             std::to_string(mags[i + 1].n) + " not separated below the cap");
            all.push_back({mags[i].n, mags[i + 1].n, "unavailable"});
            continue;
        }
        all.push_back({mags[i].n, mags[i + 1].n, o == Ordering::plateau ? "plateau" : "increase"});
    }
    const long onset = all.empty() ? t.n_lo() : all.back().nu;
    if (t.n_hi() - onset + 1 >= min_tail) {
        rep.onset_estimate = onset;
        rep.erratic = std::move(all);
    } else {
        rep.violations = std::move(all);
    }
    return rep;
}

} // namespace pisot

#endif
