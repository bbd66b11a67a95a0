#ifndef PISOT_TEST_ORACLES_HPP
#define PISOT_TEST_ORACLES_HPP

// Reference computations that share no code with the library: plain integer
// recurrences, Newton power sums, and a bisection root plus direct MPFR
// evaluation at a fixed high precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdlib>
#include <vector>

namespace oracle {

/// s_n = sum c[i] s_{n-1-i} from the given initial terms, up to index n_max.
inline std::vector<mpz_class> linear_sequence(const std::vector<long>& c, std::vector<mpz_class> init, long n_max) {
    std::vector<mpz_class> s = std::move(init);
    while (static_cast<long>(s.size()) <= n_max) {
        mpz_class v = 0;
        for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * s[s.size() - 1 - i];
        s.push_back(v);
    }
    return s;
}

inline std::vector<mpz_class> lucas(long n_max) { return linear_sequence({1, 1}, {2, 1}, n_max); }
inline std::vector<mpz_class> perrin(long n_max) { return linear_sequence({0, 1, 1}, {3, 0, 2}, n_max); }

/// Power sums p_k = sum of k-th powers of the roots of the monic polynomial
/// with ascending coefficients a, via Newton's identities.
inline std::vector<mpz_class> power_sums(const std::vector<long>& a, long k_max) {
    const long d = static_cast<long>(a.size()) - 1;
    // e-style coefficients: x^d + c_1 x^{d-1} + ... + c_d, c_i = a[d-i]
    auto c = [&](long i) -> mpz_class { return i <= d ? mpz_class(a[static_cast<std::size_t>(d - i)]) : mpz_class(0); };
    std::vector<mpz_class> p(static_cast<std::size_t>(k_max) + 1);
    p[0] = d;
    for (long k = 1; k <= k_max; ++k) {
        mpz_class v = 0;
        for (long i = 1; i < k && i <= d; ++i) v -= c(i) * p[static_cast<std::size_t>(k - i)];
        if (k <= d) v -= k * c(k);
        p[static_cast<std::size_t>(k)] = v;
    }
    return p;
}

/// RAII mpfr value at a fixed precision.
struct Mp {
    mpfr_t v;
    explicit Mp(mpfr_prec_t p) { mpfr_init2(v, p); }
    ~Mp() { mpfr_clear(v); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
};

inline void horner(mpfr_t out, const std::vector<long>& a, const mpfr_t x) {
    mpfr_set_si(out, a.back(), MPFR_RNDN);
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        mpfr_mul(out, out, x, MPFR_RNDN);
        mpfr_add_si(out, out, a[i], MPFR_RNDN);
    }
}

/// The unique real root in (1, 1 + max|a_i|] of a Pisot polynomial, by
/// bisection at `bits` precision.
inline void dominant_root(mpfr_t theta, const std::vector<long>& a, mpfr_prec_t bits) {
    long bound = 1;
    for (long c : a) bound = std::max(bound, std::labs(c));
    Mp lo(bits), hi(bits), mid(bits), f(bits);
    mpfr_set_ui(lo.v, 1, MPFR_RNDN);
    mpfr_set_si(hi.v, bound + 1, MPFR_RNDN);
    horner(f.v, a, lo.v);
    const int s_lo = mpfr_sgn(f.v);
    for (mpfr_prec_t i = 0; i < bits + 8; ++i) {
        mpfr_add(mid.v, lo.v, hi.v, MPFR_RNDN);
        mpfr_div_2ui(mid.v, mid.v, 1, MPFR_RNDN);
        horner(f.v, a, mid.v);
        if (mpfr_sgn(f.v) == 0) break;
        if (mpfr_sgn(f.v) == s_lo) mpfr_set(lo.v, mid.v, MPFR_RNDN);
        else mpfr_set(hi.v, mid.v, MPFR_RNDN);
    }
    mpfr_set(theta, mid.v, MPFR_RNDN);
}

/// Nearest integer to sum coords[i] theta^i evaluated directly.
inline mpz_class direct_round(const std::vector<mpz_class>& coords, const mpfr_t theta, mpfr_prec_t bits) {
    Mp acc(bits), pw(bits), term(bits);
    mpfr_set_zero(acc.v, 1);
    mpfr_set_ui(pw.v, 1, MPFR_RNDN);
    for (const auto& c : coords) {
        mpfr_mul_z(term.v, pw.v, c.get_mpz_t(), MPFR_RNDN);
        mpfr_add(acc.v, acc.v, term.v, MPFR_RNDN);
        mpfr_mul(pw.v, pw.v, theta, MPFR_RNDN);
    }
    mpfr_round(acc.v, acc.v);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), acc.v, MPFR_RNDN);
    return z;
}

} // namespace oracle

#endif
