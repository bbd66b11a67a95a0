#ifndef PISOT_MODP_IRREDUCIBLE_HPP
#define PISOT_MODP_IRREDUCIBLE_HPP

// Rabin's irreducibility test for monic integer polynomials reduced modulo a
// small prime. Irreducibility mod p implies irreducibility over Q.

#include <optional>
#include <vector>

#include "pisot/bigpoly.hpp"
#include "pisot/primes.hpp"

namespace pisot {

namespace detail {

using ModPoly = std::vector<u64>;  // ascending, trimmed

inline void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline u64 inv_mod(u64 a, u64 p) { return powmod(a, p - 2, p); }

inline ModPoly mod_rem(ModPoly a, const ModPoly& b, u64 p) {
    trim(a);
    const u64 inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 f = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(f, b[i], p)) % p;
        trim(a);
    }
    return a;
}

inline ModPoly mod_mulrem(const ModPoly& a, const ModPoly& b, const ModPoly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return mod_rem(std::move(r), f, p);
}

inline ModPoly mod_powrem(ModPoly base, u64 e, const ModPoly& f, u64 p) {
    ModPoly r{1};
    base = mod_rem(std::move(base), f, p);
    while (e) {
        if (e & 1) r = mod_mulrem(r, base, f, p);
        base = mod_mulrem(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline ModPoly mod_gcd(ModPoly a, ModPoly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^k) mod f
inline ModPoly frobenius_power(const ModPoly& f, u64 p, int k) {
    ModPoly x{0, 1};
    for (int i = 0; i < k; ++i) x = mod_powrem(x, p, f, p);
    return x;
}

inline std::vector<int> prime_factors(int n) {
    std::vector<int> out;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace detail

/// True iff the monic polynomial `f` is irreducible over F_p.
inline bool irreducible_mod(const IntPolynomial& f, u64 p) {
    const int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    detail::ModPoly fm;
    for (const auto& c : f.coeffs()) {
        BigInt r = c % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        fm.push_back(r.get_ui());
    }
    detail::trim(fm);
    if (static_cast<int>(fm.size()) - 1 != d) return false;

    detail::ModPoly x{0, 1};
    auto xpd = detail::frobenius_power(fm, p, d);
    auto diff = xpd;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    detail::trim(diff);
    if (!diff.empty()) return false;
    for (int q : detail::prime_factors(d)) {
        auto h = detail::frobenius_power(fm, p, d / q);
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        detail::trim(h);
        auto g = detail::mod_gcd(fm, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

/// Smallest prime <= bound modulo which `f` stays irreducible.
inline std::optional<u64> irreducibility_witness(const IntPolynomial& f, u64 bound = 100) {
    for (u64 p : primes_between(2, bound))
        if (irreducible_mod(f, p)) return p;
    return std::nullopt;
}

} // namespace pisot

#endif
