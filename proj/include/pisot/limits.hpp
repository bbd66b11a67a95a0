#ifndef PISOT_LIMITS_HPP
#define PISOT_LIMITS_HPP

// Pisot limit points from the logarithmic equations
//   club:  -log(m - x) / log x = n
//   heart: (-log(m - x) + log(x - m + l)) / log x = n
//   spade: -log(x - m) / log x = n
// and the identities satisfied by alpha_n, beta_n and delta'_2.
//
// The base of the logarithm cancels in every ratio; natural logs are used.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "pisot/suite.hpp"

namespace pisot {

struct LogEquationSpec {
    Family family = Family::club;
    long m = 2;
    long n = 1;
    long l = 0;  // heart only

    std::string to_string() const {
        std::string s = std::string(pisot::to_string(family)) + "(m=" + std::to_string(m) + ", n=" + std::to_string(n);
        if (family == Family::heart) s += ", l=" + std::to_string(l);
        return s + ")";
    }
};

struct LimitPointSolution {
    LogEquationSpec spec;
    IntPolynomial poly;           // family polynomial with factors (x - 1) removed
    int removed_unit_factors = 0;
    Interval root;
    PisotCertificate certificate;
    Interval residual;            // encloses |LHS - n| at the root
    Bits bits = 0;
};

/// Exact decimal tolerance such as "1e-30" or "0.5E-12".
inline Rational parse_tolerance(const std::string& text) {
    std::string mant = text, exp;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mant = text.substr(0, e);
        exp = text.substr(e + 1);
    }
    long shift = 0;
    if (!exp.empty()) {
        try {
            std::size_t used = 0;
            shift = std::stol(exp, &used);
            if (used != exp.size()) throw InvalidParameters("bad exponent");
        } catch (const std::logic_error&) {
            throw InvalidParameters("bad tolerance '" + text + "'");
        }
    }
    std::string digits;
    bool dot = false;
    for (char c : mant) {
        if (c == '.' && !dot) dot = true;
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (dot) --shift;
        } else throw InvalidParameters("bad tolerance '" + text + "'");
    }
    if (digits.empty()) throw InvalidParameters("bad tolerance '" + text + "'");
    Rational q{BigInt(digits)};
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift < 0) q /= p10;
    else q *= p10;
    q.canonicalize();
    if (q <= 0) throw InvalidParameters("tolerance must be positive");
    return q;
}

inline Rational default_tolerance() {
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, 30);
    return Rational(BigInt(1), den);
}

namespace detail {

inline Interval constant_interval(long v, Bits bits) { return Interval(BigInt(v), bits); }

/// LHS of the logarithmic equation at an enclosure of x.
inline Interval log_lhs(const LogEquationSpec& s, const Interval& x, Bits bits) {
    const Interval lx = x.log();
    switch (s.family) {
    case Family::club: return -((constant_interval(s.m, bits) - x).log() / lx);
    case Family::heart:
        return ((x - BigInt(s.m - s.l)).log() - (constant_interval(s.m, bits) - x).log()) / lx;
    case Family::spade: return -((x - BigInt(s.m)).log() / lx);
    }
    return Interval(bits);
}

inline void validate(const LogEquationSpec& s) {
    if (s.m < 2 || s.n < 1) throw InvalidParameters("log equation needs m >= 2 and n >= 1, got " + s.to_string());
    if (s.family == Family::heart && (s.l < 1 || s.l >= s.m))
        throw InvalidParameters("heart needs 1 <= l < m, got " + s.to_string());
}

// The dominant root of a Pisot polynomial, refined to `bits`.
inline Interval pisot_root(const IntPolynomial& p, Bits bits) {
    PisotCertificate cert = certify_pisot(p);
    if (!cert.dominant_root) throw NotPisot(p.to_string() + ": " + cert.note);
    return refine_real_root(p, *cert.dominant_root, bits);
}

} // namespace detail

/// Builds the family polynomial, strips factors (x - 1), isolates the unique
/// real root in ]m-1, m[ (club, heart) or ]m, m+1[ (spade), certifies it and
/// checks the original logarithmic equation there.
inline LimitPointSolution solve_log_equation(const LogEquationSpec& spec, const Rational& tol = default_tolerance(),
                                             Bits bits = 192) {
    detail::validate(spec);
    LimitPointSolution sol;
    sol.spec = spec;
    sol.bits = bits;
    IntPolynomial q = family_poly(spec.family, spec.m, spec.n, spec.l);
    const IntPolynomial x_minus_1{-1, 1};
    while (q.degree() >= 1 && q(BigInt(1)) == 0) {
        q = poly_exact_div(q, x_minus_1);
        ++sol.removed_unit_factors;
    }
    sol.poly = q;
    if (q.degree() < 1) throw NoRootInInterval(spec.to_string() + " has only the integer root 1");

    const long lo_end = spec.family == Family::spade ? spec.m : spec.m - 1;
    const Rational lo_q(lo_end), hi_q(lo_end + 1);
    auto iso = isolate_roots(q);
    if (!iso) throw PrecisionExhausted("root isolation failed for " + q.to_string());
    std::vector<Interval> inside;
    for (const auto& disk : iso->disks) {
        if (!disk.real) continue;
        Interval e = disk.real_enclosure();
        if (e.certainly_less(lo_q) || e.certainly_greater(hi_q)) continue;
        if (!Interval(lo_q, 64).certainly_less(e) || !e.certainly_less(hi_q)) e = refine_real_root(q, e, bits);
        if (e.certainly_greater(lo_q) && e.certainly_less(hi_q)) inside.push_back(std::move(e));
        else if (!e.certainly_less(lo_q) && !e.certainly_greater(hi_q))
            throw NoRootInInterval("a root of " + q.to_string() + " touches the boundary of ]" + lo_q.get_str() +
                                   ", " + hi_q.get_str() + "[");
    }
    if (inside.size() != 1)
        throw NoRootInInterval(std::to_string(inside.size()) + " real roots of " + q.to_string() + " in ]" +
                               lo_q.get_str() + ", " + hi_q.get_str() + "[");
    sol.root = refine_real_root(q, inside.front(), bits);
    sol.certificate = certify_pisot(q);

    Interval lhs = detail::log_lhs(spec, sol.root, bits);
    sol.residual = (lhs - BigInt(spec.n)).abs();
    if (!sol.residual.certainly_less(tol))
        throw ResidualTooLarge("residual of " + spec.to_string() + " not below " + tol.get_str() +
                               ": upper bound " + sol.residual.hi_decimal(12));
    return sol;
}

// ---------------------------------------------------------------------------

enum class IdentityKind { I, II, alpha2_pair, alpha3_extra, delta_prime };

inline const char* to_string(IdentityKind k) {
    switch (k) {
    case IdentityKind::I: return "I";
    case IdentityKind::II: return "II";
    case IdentityKind::alpha2_pair: return "alpha2_pair";
    case IdentityKind::alpha3_extra: return "alpha3_extra";
    case IdentityKind::delta_prime: return "delta_prime";
    }
    return "I";
}

inline IdentityKind parse_identity_kind(const std::string& s) {
    for (auto k : {IdentityKind::I, IdentityKind::II, IdentityKind::alpha2_pair, IdentityKind::alpha3_extra,
                   IdentityKind::delta_prime})
        if (s == to_string(k)) return k;
    throw InvalidParameters("unknown identity '" + s + "'");
}

struct IdentityTerm {
    std::string expression;
    Rational claimed;
    Interval value;
    Interval residual;  // |value - claimed|
};

struct IdentityCheck {
    IdentityKind kind = IdentityKind::I;
    long n = 0;
    Bits bits = 0;
    std::vector<IdentityTerm> terms;

    bool below(const Rational& tol) const {
        for (const auto& t : terms)
            if (!t.residual.certainly_less(tol)) return false;
        return true;
    }
};

inline IntPolynomial delta_prime_poly() { return IntPolynomial{1, 0, -2, -1, 1}; }

/// Certified residuals of one identity at `bits` of working precision.
inline IdentityCheck verify_identity(IdentityKind kind, long n, Bits bits = 256) {
    if (bits < 64) throw InvalidParameters("identities need at least 64 bits");
    IdentityCheck chk;
    chk.kind = kind;
    chk.n = n;
    chk.bits = bits;
    const Interval two(BigInt(2), bits);
    auto term = [&](std::string expr, const Rational& claimed, Interval value) {
        Interval r = (value - Interval(claimed, bits)).abs();
        chk.terms.push_back({std::move(expr), claimed, std::move(value), std::move(r)});
    };
    switch (kind) {
    case IdentityKind::I: {
        if (n < 1) throw InvalidParameters("identity I needs n >= 1");
        Interval b = detail::pisot_root(beta_poly(n), bits);
        term("-log(2 - beta_n) / log(beta_n)", Rational(n + 1), -((two - b).log() / b.log()));
        break;
    }
    case IdentityKind::II: {
        if (n < 1) throw InvalidParameters("identity II needs n >= 1");
        Interval a = detail::pisot_root(alpha_poly(n), bits);
        term("(-log(2 - alpha_n) + log(alpha_n - 1)) / log(alpha_n)", Rational(n),
             ((a - BigInt(1)).log() - (two - a).log()) / a.log());
        break;
    }
    case IdentityKind::alpha2_pair: {
        Interval a = detail::pisot_root(alpha_poly(2), bits);
        term("-log(2 - alpha_2) / log(alpha_2)", Rational(5, 2), -((two - a).log() / a.log()));
        term("-log(alpha_2 - 1) / log(alpha_2)", Rational(1, 2), -((a - BigInt(1)).log() / a.log()));
        break;
    }
    case IdentityKind::alpha3_extra: {
        Interval a3 = detail::pisot_root(alpha_poly(3), bits);
        Interval a1 = detail::pisot_root(alpha_poly(1), bits);
        term("(-log(2 - alpha_3) + log(alpha_3 - alpha_1)) / log(alpha_3)", Rational(1),
             ((a3 - a1).log() - (two - a3).log()) / a3.log());
        break;
    }
    case IdentityKind::delta_prime: {
        Interval d = detail::pisot_root(delta_prime_poly(), bits);
        term("(-log(2 - delta'_2) + log(delta'_2 - 1)) / log(delta'_2)", Rational(7, 2),
             ((d - BigInt(1)).log() - (two - d).log()) / d.log());
        break;
    }
    }
    return chk;
}

// ---------------------------------------------------------------------------

struct ChainEntry {
    std::string label;
    IntPolynomial poly;
    Interval root;
};

struct OrderingReport {
    std::vector<ChainEntry> chain;  // in the claimed increasing order
    bool alpha1_equals_beta1 = false;
    // separated[i]: chain[i] < chain[i+1] certified
    std::vector<bool> separated;
    bool all_below_two = false;
    Bits bits = 0;

    bool holds() const {
        if (!alpha1_equals_beta1 || !all_below_two) return false;
        for (bool s : separated)
            if (!s) return false;
        return true;
    }
};

/// alpha_1 = beta_1 < alpha_2 < beta_2 < alpha_3 < delta'_2 < beta_3 < ... < alpha_count < beta_count < 2.
/// Precision is doubled (up to 16x) until every adjacent pair is separated.
inline OrderingReport ordering_check(int count, Bits bits = 128) {
    if (count < 2) throw InvalidParameters("ordering needs count >= 2");
    OrderingReport rep;
    rep.alpha1_equals_beta1 = alpha_poly(1) == beta_poly(1);
    for (Bits b = bits; b <= bits * 16; b *= 2) {
        rep.chain.clear();
        rep.separated.clear();
        rep.bits = b;
        rep.chain.push_back({"alpha_1 = beta_1", alpha_poly(1), detail::pisot_root(alpha_poly(1), b)});
        for (int i = 2; i <= count; ++i) {
            rep.chain.push_back({"alpha_" + std::to_string(i), alpha_poly(i), detail::pisot_root(alpha_poly(i), b)});
            if (i == 3)
                rep.chain.push_back({"delta'_2", delta_prime_poly(), detail::pisot_root(delta_prime_poly(), b)});
            rep.chain.push_back({"beta_" + std::to_string(i), beta_poly(i), detail::pisot_root(beta_poly(i), b)});
        }
        bool all = true;
        for (std::size_t i = 0; i + 1 < rep.chain.size(); ++i) {
            const bool s = rep.chain[i].root.certainly_less(rep.chain[i + 1].root);
            rep.separated.push_back(s);
            // a reversed pair is a genuine failure; only overlap warrants more precision
            if (!s && !rep.chain[i + 1].root.certainly_less(rep.chain[i].root)) all = false;
        }
        rep.all_below_two = true;
        for (const auto& e : rep.chain)
            if (!e.root.certainly_less(Rational(2))) rep.all_below_two = false;
        if (all) return rep;
    }
    throw IncomparableAdjacent("adjacent limit points not separated at " + std::to_string(bits * 16) + " bits");
}

// ---------------------------------------------------------------------------

struct GeneralizedCongruenceReport {
    LimitPointSolution solution;
    SuiteReport suite;
};

/// Runs the suite on a heart-family root against the pattern: level 0
/// residue m, middle levels 0, level d-2 residue -1, level d-1 constant +1.
inline GeneralizedCongruenceReport generalized_congruence_check(const LogEquationSpec& spec, u64 p_hi,
                                                               const Rational& tol = default_tolerance(),
                                                               Bits bits = 192, SuiteOptions opt = {}) {
    if (spec.family != Family::heart) throw InvalidParameters("the generalized pattern is stated for the heart family");
    GeneralizedCongruenceReport rep{solve_log_equation(spec, tol, bits), {}};
    NumberField f(rep.solution.poly, rep.solution.certificate);
    opt.p_hi = p_hi;
    rep.suite = run_suite(f, heart_expectations(spec.m, f.degree()), opt);
    return rep;
}

} // namespace pisot

#endif
