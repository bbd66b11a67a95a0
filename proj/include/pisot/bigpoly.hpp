#ifndef PISOT_BIGPOLY_HPP
#define PISOT_BIGPOLY_HPP

// Dense univariate polynomials over Z, coefficient-symmetry classifiers and
// the polynomial families whose dominant roots are the Pisot limit points.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pisot/errors.hpp"

namespace pisot {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Polynomial with big-integer coefficients stored in ascending degree order
/// (coeffs()[i] multiplies x^i). Trailing zeros are always trimmed, so the
/// zero polynomial has an empty coefficient vector and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    IntPolynomial(std::initializer_list<long> coeffs) {
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    static IntPolynomial constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

    static IntPolynomial monomial(const BigInt& c, std::size_t degree) {
        std::vector<BigInt> v(degree + 1);
        v[degree] = c;
        return IntPolynomial(std::move(v));
    }

    /// Parses ascending decimal coefficients such as "1,-1,-2,0,1".
    static IntPolynomial parse(std::string_view text) {
        std::vector<BigInt> v;
        std::string token;
        auto flush = [&] {
            auto first = token.find_first_not_of(" \t\n");
            auto last = token.find_last_not_of(" \t\n");
            if (first == std::string::npos) throw InvalidParameters("empty coefficient in '" + std::string(text) + "'");
            std::string t = token.substr(first, last - first + 1);
            if (!t.empty() && t[0] == '+') t.erase(0, 1);
            BigInt c;
            if (t.empty() || c.set_str(t, 10) != 0) throw InvalidParameters("bad coefficient '" + t + "'");
            v.push_back(c);
            token.clear();
        };
        for (char ch : text) {
            if (ch == ',') flush();
            else token.push_back(ch);
        }
        flush();
        return IntPolynomial(std::move(v));
    }

    static IntPolynomial from_strings(const std::vector<std::string>& coeffs) {
        std::vector<BigInt> v;
        for (const auto& s : coeffs) {
            BigInt c;
            if (c.set_str(s, 10) != 0) throw InvalidParameters("bad coefficient '" + s + "'");
            v.push_back(c);
        }
        return IntPolynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    /// a_i, zero beyond the degree.
    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    const BigInt& leading() const { return coeffs_.back(); }
    bool is_monic() const { return !is_zero() && leading() == 1; }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(c.get_str());
        return out;
    }

    std::string to_string(char var = 'x') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            BigInt mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) os << mag.get_str();
            if (i > 0) {
                if (mag != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

    /// Coefficient-reversed polynomial x^n P(1/x), n = degree().
    IntPolynomial reversed() const {
        std::vector<BigInt> v(coeffs_.rbegin(), coeffs_.rend());
        return IntPolynomial(std::move(v));
    }

    IntPolynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<BigInt> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        return IntPolynomial(std::move(v));
    }

    BigInt operator()(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Sign of P(m / 2^e), evaluated exactly.
    int sign_at_dyadic(const BigInt& m, unsigned long e) const {
        // 2^{e n} P(m/2^e) = sum a_i m^i 2^{e(n-i)}
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= m;
            BigInt term = *it;
            mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), e * static_cast<unsigned long>(it - coeffs_.rbegin()));
            acc += term;
        }
        return sgn(acc);
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    IntPolynomial operator-() const {
        auto v = coeffs_;
        for (auto& c : v) c = -c;
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return IntPolynomial(std::move(v));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

enum class ArithOp { add, sub, mul };

inline IntPolynomial poly_arith(const IntPolynomial& a, const IntPolynomial& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    }
    return {};
}

/// Quotient of an exact division over Z; throws NonExactDivision when the
/// remainder is nonzero or a quotient coefficient is not integral.
inline IntPolynomial poly_exact_div(const IntPolynomial& num, const IntPolynomial& den) {
    if (den.is_zero()) throw InvalidParameters("division by the zero polynomial");
    if (num.is_zero()) return {};
    if (num.degree() < den.degree())
        throw NonExactDivision(num.to_string() + " is not divisible by " + den.to_string());
    std::vector<BigInt> rem = num.coeffs();
    const auto dn = static_cast<std::size_t>(den.degree());
    std::vector<BigInt> q(rem.size() - dn);
    const BigInt& lc = den.leading();
    for (std::size_t i = q.size(); i-- > 0;) {
        BigInt& top = rem[i + dn];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t()))
            throw NonExactDivision(num.to_string() + " is not divisible by " + den.to_string());
        q[i] = top / lc;
        for (std::size_t j = 0; j <= dn; ++j) rem[i + j] -= q[i] * den.coeffs()[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw NonExactDivision(num.to_string() + " is not divisible by " + den.to_string());
    return IntPolynomial(std::move(q));
}

// ---------------------------------------------------------------------------
// Coefficient symmetry

enum class SymmetryClass { palindromic, anti_palindromic, semi_palindromic, none };
enum class PairRelation { reciprocal, anti_reciprocal, semi_reciprocal, none };

inline const char* to_string(SymmetryClass s) {
    switch (s) {
    case SymmetryClass::palindromic: return "palindromic";
    case SymmetryClass::anti_palindromic: return "anti-palindromic";
    case SymmetryClass::semi_palindromic: return "semi-palindromic";
    case SymmetryClass::none: return "none";
    }
    return "none";
}

inline const char* to_string(PairRelation r) {
    switch (r) {
    case PairRelation::reciprocal: return "reciprocal";
    case PairRelation::anti_reciprocal: return "anti-reciprocal";
    case PairRelation::semi_reciprocal: return "semi-reciprocal";
    case PairRelation::none: return "none";
    }
    return "none";
}

namespace detail {

// Sign pattern of the semi-symmetric classes: -1 at even positions, +1 at odd.
inline int semi_sign(std::size_t i) { return i % 2 == 0 ? -1 : 1; }

// a_i == sign(i) * b_{n-i} for all 0 <= i <= n.
template <class SignFn>
bool mirrored(const IntPolynomial& a, const IntPolynomial& b, SignFn sign) {
    const auto n = static_cast<std::size_t>(a.degree());
    for (std::size_t i = 0; i <= n; ++i) {
        BigInt rhs = b.coeff(n - i);
        if (sign(i) < 0) rhs = -rhs;
        if (a.coeff(i) != rhs) return false;
    }
    return true;
}

} // namespace detail

/// First matching class in the order palindromic, anti-palindromic,
/// semi-palindromic. The semi-palindromic test is a_i = -a_{n-i} for even i
/// and a_i = a_{n-i} for odd i (the i = n endpoint clause is not imposed).
inline SymmetryClass classify_symmetry(const IntPolynomial& p) {
    if (p.degree() < 1) throw InvalidParameters("symmetry classification needs degree >= 1");
    if (detail::mirrored(p, p, [](std::size_t) { return 1; })) return SymmetryClass::palindromic;
    if (detail::mirrored(p, p, [](std::size_t) { return -1; })) return SymmetryClass::anti_palindromic;
    const auto n = static_cast<std::size_t>(p.degree());
    bool semi = true;
    for (std::size_t i = 0; i <= n && semi; ++i) {
        if (i % 2 == 0 && i < n) semi = p.coeff(i) == -p.coeff(n - i);
        else if (i % 2 == 1) semi = p.coeff(i) == p.coeff(n - i);
    }
    return semi ? SymmetryClass::semi_palindromic : SymmetryClass::none;
}

/// Relation between two polynomials of equal degree. Semi-reciprocity uses
/// the sign pattern a_i = -b_{n-i} (i even), a_i = b_{n-i} (i odd) over all i
/// and is accepted in either direction, which keeps the relation symmetric.
inline PairRelation classify_pair(const IntPolynomial& p, const IntPolynomial& q) {
    if (p.degree() != q.degree())
        throw DegreeMismatch("degrees " + std::to_string(p.degree()) + " and " + std::to_string(q.degree()));
    if (p.is_zero()) return PairRelation::reciprocal;
    if (detail::mirrored(p, q, [](std::size_t) { return 1; })) return PairRelation::reciprocal;
    if (detail::mirrored(p, q, [](std::size_t) { return -1; })) return PairRelation::anti_reciprocal;
    if (detail::mirrored(p, q, detail::semi_sign) || detail::mirrored(q, p, detail::semi_sign))
        return PairRelation::semi_reciprocal;
    return PairRelation::none;
}

// ---------------------------------------------------------------------------
// Polynomial families. All constructors return monic polynomials.

namespace detail {
inline void require_index(long n, const char* what) {
    if (n < 1) throw InvalidParameters(std::string(what) + ": index must be >= 1, got " + std::to_string(n));
}
} // namespace detail

/// x^{n+1} - 2x^n + x - 1, the monic form of 1 - x + x^n(2 - x).
inline IntPolynomial alpha_poly(long n) {
    detail::require_index(n, "alpha_poly");
    const auto un = static_cast<std::size_t>(n);
    std::vector<BigInt> v(un + 2);
    v[un + 1] += 1;
    v[un] -= 2;
    v[1] += 1;
    v[0] -= 1;
    return IntPolynomial(std::move(v));
}

/// (x^{n+2} - 2x^{n+1} + 1) / (x - 1), the monic form of (1 - x^{n+1}(2 - x)) / (1 - x).
inline IntPolynomial beta_poly(long n) {
    detail::require_index(n, "beta_poly");
    const auto un = static_cast<std::size_t>(n);
    std::vector<BigInt> v(un + 3);
    v[un + 2] = 1;
    v[un + 1] = -2;
    v[0] = 1;
    IntPolynomial q = poly_exact_div(IntPolynomial(std::move(v)), IntPolynomial{-1, 1});
    return q.leading() < 0 ? -q : q;
}

enum class Family { club, heart, spade };

inline const char* to_string(Family f) {
    switch (f) {
    case Family::club: return "club";
    case Family::heart: return "heart";
    case Family::spade: return "spade";
    }
    return "club";
}

inline std::optional<Family> parse_family(std::string_view s) {
    if (s == "club") return Family::club;
    if (s == "heart") return Family::heart;
    if (s == "spade") return Family::spade;
    return std::nullopt;
}

/// Polynomial obtained by exponentiating the logarithmic equation:
///   club:  -log(m-x)/log x = n                     ->  x^{n+1} - m x^n + 1
///   heart: (-log(m-x) + log(x-m+l))/log x = n      ->  x^{n+1} - m x^n + x - m + l
///   spade: -log(x-m)/log x = n                     ->  x^{n+1} - m x^n - 1
inline IntPolynomial family_poly(Family family, long m, long n, long l = 0) {
    if (m < 2) throw InvalidParameters("family_poly: m must be >= 2, got " + std::to_string(m));
    detail::require_index(n, "family_poly");
    if (family == Family::heart && (l < 1 || l >= m))
        throw InvalidParameters("family_poly: heart requires 1 <= l < m, got l=" + std::to_string(l) +
                                " m=" + std::to_string(m));
    const auto un = static_cast<std::size_t>(n);
    std::vector<BigInt> v(un + 2);
    v[un + 1] += 1;
    v[un] -= m;
    switch (family) {
    case Family::club: v[0] += 1; break;
    case Family::heart:
        v[1] += 1;
        v[0] += l - m;
        break;
    case Family::spade: v[0] -= 1; break;
    }
    return IntPolynomial(std::move(v));
}

} // namespace pisot

#endif
