#ifndef PISOT_RECURRENCE_HPP
#define PISOT_RECURRENCE_HPP

// Linear recurrence detection over exact rationals, the recurrences predicted
// from a minimal polynomial, and fast modular extension of a recurrence.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pisot/bigpoly.hpp"
#include "pisot/primes.hpp"

namespace pisot {

/// u_l = sum_{i=1..order} coeffs[i-1] * u_{l-i} for every tabulated l >= onset + order.
struct Recurrence {
    int order = 0;
    std::vector<Rational> coeffs;  // b_1..b_order
    long onset = 0;                // absolute index

    bool integral() const {
        for (const auto& c : coeffs)
            if (c.get_den() != 1) return false;
        return true;
    }

    std::vector<BigInt> integer_coeffs() const {
        if (!integral()) throw InvalidParameters("recurrence has non-integer coefficients");
        std::vector<BigInt> out;
        for (const auto& c : coeffs) out.push_back(c.get_num());
        return out;
    }
};

namespace detail {

inline const std::array<u64, 2>& filter_primes() {
    static const std::array<u64, 2> primes = [] {
        std::array<u64, 2> out{};
        int found = 0;
        for (u64 n = (1ULL << 62) - 1; found < 2; n -= 2)
            if (is_prime(n)) out[static_cast<std::size_t>(found++)] = n;
        return out;
    }();
    return primes;
}

inline u64 reduce(const BigInt& x, u64 p) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
    return r.get_ui();
}

// Whether the system A b = y (rows: equations) is consistent modulo p.
inline bool consistent_mod(std::vector<std::vector<u64>> m, std::size_t unknowns, u64 p) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < unknowns && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        const u64 inv = powmod(m[row][col], p - 2, p);
        for (auto& v : m[row]) v = mulmod(v, inv, p);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const u64 f = m[r][col];
            for (std::size_t c = col; c <= unknowns; ++c) m[r][c] = (m[r][c] + p - mulmod(f, m[row][c], p)) % p;
        }
        ++row;
    }
    for (std::size_t r = row; r < m.size(); ++r)
        if (m[r][unknowns] != 0) return false;
    return true;
}

// Exact solve over Q; returns a solution (free unknowns set to 0) or nullopt.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m, std::size_t unknowns) {
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < unknowns && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        Rational inv = 1 / m[row][col];
        for (auto& v : m[row]) v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c <= unknowns; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < m.size(); ++r)
        if (m[r][unknowns] != 0) return std::nullopt;
    std::vector<Rational> x(unknowns, Rational(0));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = m[r][unknowns];
    return x;
}

inline bool holds_at(const std::vector<BigInt>& s, const std::vector<Rational>& b, std::size_t l) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= b.size(); ++i) acc += b[i - 1] * s[l - i];
    return acc == Rational(s[l]);
}

} // namespace detail

/// Minimal-order recurrence fitting the tail of `seq`. For increasing order j
/// the recurrence is fitted on the last 2j + 4 terms (a modular rank test
/// filters candidates, exact rational elimination decides); the onset is then
/// pushed back as far as the recurrence keeps holding. `base` is the absolute
/// index of seq[0].
inline Recurrence detect_recurrence(const std::vector<BigInt>& seq, long base = 0) {
    const std::size_t n = seq.size();
    if (n < 8) throw InvalidParameters("detect_recurrence needs at least 8 terms, got " + std::to_string(n));
    const std::size_t max_order = n / 2 - 2;
    const auto& primes = detail::filter_primes();
    for (std::size_t j = 0; j <= max_order; ++j) {
        const std::size_t window = 2 * j + 4;
        const std::size_t first_eq = n - window + j;  // equations for l in [first_eq, n)
        bool maybe = false;
        for (u64 p : primes) {
            std::vector<std::vector<u64>> m;
            for (std::size_t l = first_eq; l < n; ++l) {
                std::vector<u64> row(j + 1);
                for (std::size_t i = 1; i <= j; ++i) row[i - 1] = detail::reduce(seq[l - i], p);
                row[j] = detail::reduce(seq[l], p);
                m.push_back(std::move(row));
            }
            if (detail::consistent_mod(std::move(m), j, p)) {
                maybe = true;
                break;
            }
        }
        if (!maybe) continue;
        std::vector<std::vector<Rational>> m;
        for (std::size_t l = first_eq; l < n; ++l) {
            std::vector<Rational> row(j + 1);
            for (std::size_t i = 1; i <= j; ++i) row[i - 1] = seq[l - i];
            row[j] = seq[l];
            m.push_back(std::move(row));
        }
        auto b = detail::solve_exact(std::move(m), j);
        if (!b) continue;
        std::size_t l_min = first_eq;
        while (l_min > j && detail::holds_at(seq, *b, l_min - 1)) --l_min;
        Recurrence r;
        r.order = static_cast<int>(j);
        r.coeffs = std::move(*b);
        r.onset = base + static_cast<long>(l_min - j);
        return r;
    }
    throw NoRecurrenceFound("no recurrence of order <= " + std::to_string(max_order) + " fits a suffix of the " +
                            std::to_string(n) + "-term sequence");
}

/// x^j - b_1 x^{j-1} - ... - b_j.
inline IntPolynomial characteristic_of(const Recurrence& r) {
    auto b = r.integer_coeffs();
    std::vector<BigInt> v(static_cast<std::size_t>(r.order) + 1);
    v[static_cast<std::size_t>(r.order)] = 1;
    for (int i = 1; i <= r.order; ++i) v[static_cast<std::size_t>(r.order - i)] = -b[static_cast<std::size_t>(i - 1)];
    return IntPolynomial(std::move(v));
}

// ---------------------------------------------------------------------------
// Predicted recurrences

enum class PredictionVariant {
    top_iterate_1deg,  // level d-2, coefficients (-1)^{i(j)} a_j
    zero_iterate,      // level 0, coefficients -a_{d-j}
    alpha_form,        // alpha_n, level n-1, literal (-2)^{n+1} coefficient
    alpha_form_alt,    // alpha_n, level n-1, coefficient 2(-1)^{n+1} in place of (-2)^{n+1}
    beta_odd,          // beta_n, n odd, level n-1
    beta_even,         // beta_n, n even, level n-1
};

inline const char* to_string(PredictionVariant v) {
    switch (v) {
    case PredictionVariant::top_iterate_1deg: return "top_iterate_1deg";
    case PredictionVariant::zero_iterate: return "zero_iterate";
    case PredictionVariant::alpha_form: return "alpha_form";
    case PredictionVariant::alpha_form_alt: return "alpha_form_alt";
    case PredictionVariant::beta_odd: return "beta_odd";
    case PredictionVariant::beta_even: return "beta_even";
    }
    return "zero_iterate";
}

struct PredictedRecurrence {
    PredictionVariant variant = PredictionVariant::zero_iterate;
    int level = 0;                  // iterate level the prediction is about
    std::vector<BigInt> coeffs;     // b_1..b_order
    std::vector<int> sign_rule;     // i(1..d) for top_iterate_1deg, empty otherwise
};

/// i(k) for a minimal polynomial of degree d: all 0 when d is odd; for even
/// d, 0 at even k and 1 at odd k.
inline int sign_exponent(int degree, int k) { return degree % 2 == 1 ? 0 : (k % 2 == 0 ? 0 : 1); }

inline bool is_plastic_poly(const IntPolynomial& p) { return p == IntPolynomial{-1, -1, 0, 1}; }

/// Index n such that p == alpha_poly(n), if any.
inline std::optional<long> alpha_index(const IntPolynomial& p) {
    if (p.degree() < 2) return std::nullopt;
    long n = p.degree() - 1;
    if (p == alpha_poly(n)) return n;
    return std::nullopt;
}

inline std::optional<long> beta_index(const IntPolynomial& p) {
    if (p.degree() < 2) return std::nullopt;
    long n = p.degree() - 1;
    if (p == beta_poly(n)) return n;
    return std::nullopt;
}

inline PredictedRecurrence predicted_recurrence(const IntPolynomial& min_poly, PredictionVariant variant) {
    if (!min_poly.is_monic()) throw NotMonic("prediction needs a monic polynomial");
    const int d = min_poly.degree();
    PredictedRecurrence pr;
    pr.variant = variant;
    switch (variant) {
    case PredictionVariant::zero_iterate: {
        if (d < 1) throw VariantInapplicable("zero_iterate needs degree >= 1");
        pr.level = 0;
        for (int j = 1; j <= d; ++j) pr.coeffs.push_back(-min_poly.coeff(static_cast<std::size_t>(d - j)));
        break;
    }
    case PredictionVariant::top_iterate_1deg: {
        if (d < 3) throw VariantInapplicable("top_iterate_1deg needs degree >= 3, got " + std::to_string(d));
        if (is_plastic_poly(min_poly)) throw VariantInapplicable("top_iterate_1deg excludes the plastic number");
        pr.level = d - 2;
        for (int j = 1; j <= d; ++j) {
            const int i = sign_exponent(d, j);
            pr.sign_rule.push_back(i);
            BigInt a = min_poly.coeff(static_cast<std::size_t>(j));
            pr.coeffs.push_back(i ? BigInt(-a) : a);
        }
        break;
    }
    case PredictionVariant::alpha_form:
    case PredictionVariant::alpha_form_alt: {
        auto n = alpha_index(min_poly);
        if (!n || *n < 2) throw VariantInapplicable(min_poly.to_string() + " is not alpha_n with n >= 2");
        pr.level = static_cast<int>(*n - 1);
        pr.coeffs.assign(static_cast<std::size_t>(*n + 1), BigInt(0));
        BigInt two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(*n + 1));
        if ((*n + 1) % 2 == 1) two_pow = -two_pow;
        pr.coeffs[0] += (*n % 2 == 0) ? 1 : -1;  // (-1)^n u_{m-1}
        const BigInt alt = (*n + 1) % 2 == 1 ? -2 : 2;
        pr.coeffs[static_cast<std::size_t>(*n - 1)] += variant == PredictionVariant::alpha_form ? two_pow : alt;
        pr.coeffs[static_cast<std::size_t>(*n)] += 1;  // u_{m-(n+1)}
        break;
    }
    case PredictionVariant::beta_odd:
    case PredictionVariant::beta_even: {
        auto n = beta_index(min_poly);
        if (!n || *n < 2) throw VariantInapplicable(min_poly.to_string() + " is not beta_n with n >= 2");
        const bool odd = *n % 2 == 1;
        if (odd != (variant == PredictionVariant::beta_odd))
            throw VariantInapplicable(std::string(to_string(variant)) + " does not apply to beta_" + std::to_string(*n));
        pr.level = static_cast<int>(*n - 1);
        pr.coeffs.assign(static_cast<std::size_t>(*n + 1), BigInt(0));
        for (long i = 1; i <= *n; ++i) {
            // odd n: +u_{m-i} for odd i, -u_{m-i} for even i; even n: -u_{m-i}
            pr.coeffs[static_cast<std::size_t>(i - 1)] = odd ? (i % 2 == 1 ? 1 : -1) : -1;
        }
        pr.coeffs[static_cast<std::size_t>(*n)] = 1;
        break;
    }
    }
    return pr;
}

enum class MatchOutcome { equal, equal_up_to_onset, mismatch };

inline const char* to_string(MatchOutcome m) {
    switch (m) {
    case MatchOutcome::equal: return "equal";
    case MatchOutcome::equal_up_to_onset: return "equal_up_to_onset";
    case MatchOutcome::mismatch: return "mismatch";
    }
    return "mismatch";
}

struct MatchReport {
    MatchOutcome outcome = MatchOutcome::mismatch;
    std::vector<int> differing_positions;  // 1-based i of b_i, over the longer vector
};

/// `equal`: identical coefficient vectors. `equal_up_to_onset`: the
/// predicted characteristic polynomial is a multiple of the detected one, so
/// the prediction also holds on the tail, possibly from a later index.
inline MatchReport compare_recurrence(const Recurrence& detected, const PredictedRecurrence& predicted) {
    MatchReport rep;
    const std::size_t len = std::max(detected.coeffs.size(), predicted.coeffs.size());
    for (std::size_t i = 0; i < len; ++i) {
        Rational a = i < detected.coeffs.size() ? detected.coeffs[i] : Rational(0);
        Rational b = i < predicted.coeffs.size() ? Rational(predicted.coeffs[i]) : Rational(0);
        if (a != b) rep.differing_positions.push_back(static_cast<int>(i + 1));
    }
    if (rep.differing_positions.empty() && detected.coeffs.size() == predicted.coeffs.size()) {
        rep.outcome = MatchOutcome::equal;
        return rep;
    }
    if (detected.integral()) {
        Recurrence as_rec;
        as_rec.order = static_cast<int>(predicted.coeffs.size());
        for (const auto& c : predicted.coeffs) as_rec.coeffs.emplace_back(c);
        try {
            poly_exact_div(characteristic_of(as_rec), characteristic_of(detected));
            rep.outcome = MatchOutcome::equal_up_to_onset;
        } catch (const NonExactDivision&) {
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Modular extension

namespace detail {

using Mat = std::vector<std::vector<u64>>;

inline Mat mat_mul(const Mat& a, const Mat& b, u64 p) {
    const std::size_t n = a.size();
    Mat c(n, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + mulmod(a[i][k], b[k][j], p)) % p;
        }
    return c;
}

inline u64 rational_mod(const Rational& q, u64 p) {
    const u64 den = reduce(q.get_den(), p);
    if (den == 0) throw InvalidParameters("recurrence denominator vanishes modulo " + std::to_string(p));
    return mulmod(reduce(q.get_num(), p), powmod(den, p - 2, p), p);
}

} // namespace detail

/// u_target mod p from the terms u_onset .. u_{onset+order-1} by
/// companion-matrix exponentiation.
inline u64 modular_extend(const Recurrence& r, const std::vector<BigInt>& initial_terms, u64 p, long target_index) {
    if (target_index < r.onset)
        throw IndexBelowOnset("index " + std::to_string(target_index) + " precedes onset " + std::to_string(r.onset));
    if (static_cast<int>(initial_terms.size()) < r.order)
        throw InvalidParameters("modular_extend needs " + std::to_string(r.order) + " initial terms");
    if (p < 2) throw InvalidParameters("modulus must be >= 2");
    const auto j = static_cast<std::size_t>(r.order);
    if (j == 0) return 0;
    const long offset = target_index - r.onset;
    if (offset < static_cast<long>(j)) return detail::reduce(initial_terms[static_cast<std::size_t>(offset)], p);

    // state s_l = (u_l, u_{l-1}, ..., u_{l-j+1}); s_{l+1} = M s_l
    detail::Mat m(j, std::vector<u64>(j, 0));
    for (std::size_t i = 0; i < j; ++i) m[0][i] = detail::rational_mod(r.coeffs[i], p);
    for (std::size_t i = 1; i < j; ++i) m[i][i - 1] = 1;
    detail::Mat acc(j, std::vector<u64>(j, 0));
    for (std::size_t i = 0; i < j; ++i) acc[i][i] = 1 % p;
    auto steps = static_cast<u64>(offset - static_cast<long>(j) + 1);
    while (steps) {
        if (steps & 1) acc = detail::mat_mul(acc, m, p);
        m = detail::mat_mul(m, m, p);
        steps >>= 1;
    }
    std::vector<u64> s(j);
    for (std::size_t i = 0; i < j; ++i) s[i] = detail::reduce(initial_terms[j - 1 - i], p);
    u64 out = 0;
    for (std::size_t i = 0; i < j; ++i) out = (out + mulmod(acc[0][i], s[i], p)) % p;
    return out;
}

} // namespace pisot

#endif
