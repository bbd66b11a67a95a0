#ifndef PISOT_NUMFIELD_HPP
#define PISOT_NUMFIELD_HPP

// Exact arithmetic in Z[theta] for a certified Pisot number theta, plus the
// certified real embedding used for nearest-integer rounding.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "pisot/bigpoly.hpp"
#include "pisot/interval.hpp"
#include "pisot/modp_irreducible.hpp"
#include "pisot/roots.hpp"

namespace pisot {

enum class Verdict { pisot, not_pisot, unverified_irreducibility };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pisot: return "pisot";
    case Verdict::not_pisot: return "not_pisot";
    case Verdict::unverified_irreducibility: return "unverified_irreducibility";
    }
    return "not_pisot";
}

struct CertifyOptions {
    Bits start_bits = 64;
    Bits cap_bits = 8192;
    u64 witness_bound = 100;
};

struct PisotCertificate {
    Verdict verdict = Verdict::not_pisot;
    // Enclosure of the real root > 1 when the geometry is Pisot.
    std::optional<Interval> dominant_root;
    // Enclosures of |z| for every other root.
    std::vector<Interval> conjugate_moduli;
    std::optional<u64> irreducibility_witness;
    // Every root, as certified disjoint disks (empty when isolation failed).
    std::vector<RootDisk> roots;
    Bits bits = 0;
    // False when the precision cap was hit before the unit circle test was decided.
    bool geometry_certified = false;
    std::string note;

    bool pisot_geometry() const { return verdict != Verdict::not_pisot; }

    /// Largest certified upper bound on a conjugate modulus (0 for degree 1).
    Real conjugate_bound() const {
        Real b(bits ? bits : 64);
        mpfr_set_zero(b.get(), 1);
        for (const auto& m : conjugate_moduli) mpfr_max(b.get(), b.get(), m.hi().get(), MPFR_RNDU);
        return b;
    }
};

/// Certifies whether the dominant root of `p` is a Pisot number: exactly one
/// root outside the closed unit disk, real and greater than 1, and every
/// other root strictly inside.
inline PisotCertificate certify_pisot(const IntPolynomial& p, const CertifyOptions& opt = {}) {
    if (!p.is_monic()) throw NotMonic("expected a monic polynomial, got " + p.to_string());
    if (p.degree() < 1) throw InvalidParameters("expected degree >= 1, got " + p.to_string());
    if (p.coeff(0) == 0) throw ZeroConstantTerm("constant term of " + p.to_string() + " is zero");

    PisotCertificate cert;
    if (!is_squarefree(p)) {
        cert.note = "polynomial is not squarefree";
        cert.geometry_certified = true;
        return cert;
    }

    const mpq_class one(1);
    Bits start = opt.start_bits;
    for (;;) {
        auto iso = isolate_roots(p, start, opt.cap_bits);
        if (!iso) {
            cert.note = "root isolation did not converge below the precision cap";
            return cert;
        }
        bool undecided = false;
        std::vector<std::size_t> outside;
        for (std::size_t i = 0; i < iso->disks.size(); ++i) {
            Interval m = iso->disks[i].modulus();
            if (m.certainly_greater(one)) outside.push_back(i);
            else if (!m.certainly_less(one)) undecided = true;
        }
        if (undecided && iso->bits * 2 <= opt.cap_bits) {
            start = iso->bits * 2;
            continue;
        }
        cert.bits = iso->bits;
        cert.roots = std::move(iso->disks);
        if (undecided) {
            cert.note = "a root modulus could not be separated from 1 below the precision cap";
            return cert;
        }
        cert.geometry_certified = true;
        if (outside.size() != 1) {
            cert.note = std::to_string(outside.size()) + " roots outside the unit disk";
            return cert;
        }
        const RootDisk& dom = cert.roots[outside.front()];
        if (!dom.real || mpfr_sgn(dom.re.get()) <= 0) {
            cert.note = "the root outside the unit disk is not a positive real";
            return cert;
        }
        cert.dominant_root = dom.real_enclosure();
        for (std::size_t i = 0; i < cert.roots.size(); ++i)
            if (i != outside.front()) cert.conjugate_moduli.push_back(cert.roots[i].modulus());
        break;
    }

    cert.irreducibility_witness = irreducibility_witness(p, opt.witness_bound);
    cert.verdict = cert.irreducibility_witness ? Verdict::pisot : Verdict::unverified_irreducibility;
    if (!cert.irreducibility_witness) cert.note = "no prime <= " + std::to_string(opt.witness_bound) + " keeps the polynomial irreducible";
    return cert;
}

// ---------------------------------------------------------------------------

/// Element of Z[theta] in the power basis 1, theta, ..., theta^{d-1}.
struct FieldElement {
    std::vector<BigInt> coords;

    static FieldElement zero(int d) { return {std::vector<BigInt>(static_cast<std::size_t>(d))}; }
    static FieldElement constant(int d, const BigInt& c) {
        auto e = zero(d);
        e.coords[0] = c;
        return e;
    }

    int degree() const { return static_cast<int>(coords.size()); }

    /// All coordinates beyond the constant one vanish.
    bool is_rational() const {
        for (std::size_t i = 1; i < coords.size(); ++i)
            if (coords[i] != 0) return false;
        return true;
    }
    bool is_zero() const { return is_rational() && coords[0] == 0; }

    /// Bit length of the largest coordinate.
    std::size_t max_bits() const {
        std::size_t b = 0;
        for (const auto& c : coords) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
        return b;
    }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) {
        for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += b.coords[i];
        return a;
    }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) {
        for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] -= b.coords[i];
        return a;
    }
    friend FieldElement operator-(FieldElement a, const BigInt& z) {
        a.coords[0] -= z;
        return a;
    }
};

/// Z[theta] for a Pisot number theta, with its certificate.
class NumberField {
public:
    /// Certifies `min_poly`; throws NotPisot unless the root geometry is Pisot.
    explicit NumberField(IntPolynomial min_poly, const CertifyOptions& opt = {})
        : NumberField(min_poly, certify_pisot(min_poly, opt)) {}

    NumberField(IntPolynomial min_poly, PisotCertificate cert)
        : poly_(std::move(min_poly)), cert_(std::move(cert)) {
        if (!cert_.pisot_geometry() || !cert_.dominant_root)
            throw NotPisot(poly_.to_string() + " does not have Pisot root geometry (" + cert_.note + ")");
        theta_ = *cert_.dominant_root;
    }

    const IntPolynomial& min_poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    const PisotCertificate& certificate() const { return cert_; }
    const Interval& theta_interval() const { return theta_; }
    Real conjugate_bound() const { return cert_.conjugate_bound(); }
    bool irreducibility_verified() const { return cert_.verdict == Verdict::pisot; }

    /// Enclosure of theta with about `bits` bits of relative accuracy.
    Interval theta_enclosure(Bits bits) const { return refine_real_root(poly_, theta_, bits); }

    FieldElement one() const { return FieldElement::constant(degree(), 1); }
    FieldElement theta() const {
        auto e = FieldElement::zero(degree());
        if (degree() == 1) e.coords[0] = -poly_.coeff(0);
        else e.coords[1] = 1;
        return e;
    }

private:
    IntPolynomial poly_;
    PisotCertificate cert_;
    Interval theta_;
};

/// Product reduced with theta^d = -(a_{d-1} theta^{d-1} + ... + a_0).
inline FieldElement element_mul(const NumberField& f, const FieldElement& a, const FieldElement& b) {
    const auto d = static_cast<std::size_t>(f.degree());
    std::vector<BigInt> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (a.coords[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coords[i] * b.coords[j];
    }
    const auto& mp = f.min_poly().coeffs();
    for (std::size_t k = prod.size(); k-- > d;) {
        if (prod[k] == 0) continue;
        for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= prod[k] * mp[i];
        prod[k] = 0;
    }
    prod.resize(d);
    return {std::move(prod)};
}

inline FieldElement theta_power(const NumberField& f, unsigned long n) {
    FieldElement result = f.one();
    FieldElement base = f.theta();
    while (n) {
        if (n & 1) result = element_mul(f, result, base);
        n >>= 1;
        if (n) base = element_mul(f, base, base);
    }
    return result;
}

/// Certified enclosure of the real value sum coords[i] theta^i.
inline Interval eval_interval(const NumberField& f, const FieldElement& a, Bits precision_bits) {
    if (a.is_rational()) return Interval(a.coords[0], std::max<Bits>(precision_bits, static_cast<Bits>(a.max_bits()) + 2));
    Interval t = f.theta_enclosure(precision_bits);
    Interval acc(a.coords.back(), precision_bits);
    for (std::size_t i = a.coords.size() - 1; i-- > 0;) acc = acc * t + a.coords[i];
    return acc;
}

struct RoundingOptions {
    Bits start_bits = 64;
    Bits cap_bits = Bits{1} << 20;
};

/// Nearest integer to a rational; ties are genuine and rejected.
inline BigInt round_rational(const Rational& q) {
    Rational twice = q * 2;
    twice.canonicalize();
    if (twice.get_den() == 1 && mpz_odd_p(twice.get_num_mpz_t()))
        throw ExactHalfInteger(q.get_str() + " is an exact half-integer");
    Rational shifted = q + Rational(1, 2);
    BigInt z;
    mpz_fdiv_q(z.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return z;
}

namespace detail {

// z with enclosure strictly inside (z - 1/2, z + 1/2), if any.
inline std::optional<BigInt> certified_round(const Interval& v) {
    Real lo2(v.lo().prec() + 1), hi2(v.hi().prec() + 1);
    mpfr_mul_2ui(lo2.get(), v.lo().get(), 1, MPFR_RNDN);  // exact
    mpfr_mul_2ui(hi2.get(), v.hi().get(), 1, MPFR_RNDN);
    // candidate z = floor((2 lo + 1) / 2)
    Real t(lo2.prec() + 2);
    mpfr_add_ui(t.get(), lo2.get(), 1, MPFR_RNDD);
    mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDD);
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDD);
    BigInt lower = 2 * z - 1, upper = 2 * z + 1;
    if (mpfr_cmp_z(lo2.get(), lower.get_mpz_t()) > 0 && mpfr_cmp_z(hi2.get(), upper.get_mpz_t()) < 0) return z;
    return std::nullopt;
}

} // namespace detail

/// The unique integer within distance < 1/2 of the element's real value,
/// certified by doubling the working precision until the enclosure avoids
/// both neighbouring half-integers.
inline BigInt nearest_integer(const NumberField& f, const FieldElement& a, const RoundingOptions& opt = {}) {
    if (a.is_rational()) return round_rational(Rational(a.coords[0]));
    Bits bits = opt.start_bits;
    const auto needed = static_cast<Bits>(a.max_bits()) + 32;
    while (bits < needed && bits * 2 <= opt.cap_bits) bits *= 2;
    for (; bits <= opt.cap_bits; bits *= 2) {
        if (auto z = detail::certified_round(eval_interval(f, a, bits))) return *z;
    }
    throw PrecisionExhausted("rounding not certified at " + std::to_string(opt.cap_bits) + " bits");
}

} // namespace pisot

#endif
