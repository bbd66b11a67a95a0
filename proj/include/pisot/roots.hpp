#ifndef PISOT_ROOTS_HPP
#define PISOT_ROOTS_HPP

// Certified isolation of all complex roots of a squarefree integer
// polynomial. Approximations come from Aberth-Ehrlich iterations in MPFR;
// the certificate is the inclusion theorem for Weierstrass corrections:
// with W_i = P(z_i) / prod_{j != i}(z_i - z_j), every root of a monic P of
// degree n lies in the union of the disks |z - z_i| <= n |W_i|, and a
// connected component made of k disks holds exactly k roots.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "pisot/bigpoly.hpp"
#include "pisot/interval.hpp"

namespace pisot {

// ---------------------------------------------------------------------------
// Exact helpers over Q

namespace detail {

using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_rat(const IntPolynomial& p) {
    RatPoly r;
    for (const auto& c : p.coeffs()) r.emplace_back(c);
    return r;
}

inline RatPoly rat_rem(RatPoly a, const RatPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline RatPoly rat_gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = rat_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace detail

/// gcd(P, P') is constant.
inline bool is_squarefree(const IntPolynomial& p) {
    if (p.degree() <= 1) return true;
    auto g = detail::rat_gcd(detail::to_rat(p), detail::to_rat(p.derivative()));
    return g.size() <= 1;
}

/// Exact sign of P at the MPFR value x (x is a dyadic rational).
inline int sign_at(const IntPolynomial& p, mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return sgn(p.coeff(0));
    BigInt m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    if (e >= 0) {
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return sgn(p(m));
    }
    return p.sign_at_dyadic(m, static_cast<unsigned long>(-e));
}

// ---------------------------------------------------------------------------
// Approximate complex arithmetic in MPFR (round to nearest)

namespace detail {

struct MpComplex {
    Real re, im;
    explicit MpComplex(Bits p) : re(p), im(p) {}
};

inline void set_prec_keep(Real& r, Bits p) { mpfr_prec_round(r.get(), p, MPFR_RNDN); }

// r = a * b
inline void cmul(MpComplex& r, const MpComplex& a, const MpComplex& b, Real& t1, Real& t2) {
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    Real re(r.re.prec());
    mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_set(r.re.get(), re.get(), MPFR_RNDN);
}

// r = a / b
inline void cdiv(MpComplex& r, const MpComplex& a, const MpComplex& b, Bits p) {
    Real den(p), t1(p), t2(p), re(p);
    mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), r.im.get(), den.get(), MPFR_RNDN);
    mpfr_div(r.re.get(), re.get(), den.get(), MPFR_RNDN);
}

// P(z) and P'(z) by Horner.
inline void horner2(const IntPolynomial& p, const MpComplex& z, MpComplex& val, MpComplex& der, Bits prec) {
    Real t1(prec), t2(prec);
    mpfr_set_zero(val.re.get(), 1);
    mpfr_set_zero(val.im.get(), 1);
    mpfr_set_zero(der.re.get(), 1);
    mpfr_set_zero(der.im.get(), 1);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        cmul(der, der, z, t1, t2);
        mpfr_add(der.re.get(), der.re.get(), val.re.get(), MPFR_RNDN);
        mpfr_add(der.im.get(), der.im.get(), val.im.get(), MPFR_RNDN);
        cmul(val, val, z, t1, t2);
        mpfr_add_z(val.re.get(), val.re.get(), it->get_mpz_t(), MPFR_RNDN);
    }
}

// Aberth-Ehrlich sweeps until the largest relative correction is below 2^-(prec-8).
inline void aberth(const IntPolynomial& p, std::vector<MpComplex>& z, Bits prec, int max_iter) {
    const std::size_t n = z.size();
    MpComplex val(prec), der(prec), ratio(prec), sum(prec), diff(prec), inv(prec), corr(prec), one(prec);
    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
    Real mag(prec), zmag(prec), worst(prec);
    for (int iter = 0; iter < max_iter; ++iter) {
        mpfr_set_zero(worst.get(), 1);
        for (std::size_t i = 0; i < n; ++i) {
            horner2(p, z[i], val, der, prec);
            if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) continue;
            cdiv(ratio, val, der, prec);
            mpfr_set_zero(sum.re.get(), 1);
            mpfr_set_zero(sum.im.get(), 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
                mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
                cdiv(inv, one, diff, prec);
                mpfr_add(sum.re.get(), sum.re.get(), inv.re.get(), MPFR_RNDN);
                mpfr_add(sum.im.get(), sum.im.get(), inv.im.get(), MPFR_RNDN);
            }
            // corr = ratio / (1 - ratio * sum)
            Real t1(prec), t2(prec);
            cmul(diff, ratio, sum, t1, t2);
            mpfr_ui_sub(diff.re.get(), 1, diff.re.get(), MPFR_RNDN);
            mpfr_neg(diff.im.get(), diff.im.get(), MPFR_RNDN);
            cdiv(corr, ratio, diff, prec);
            if (!mpfr_number_p(corr.re.get()) || !mpfr_number_p(corr.im.get())) continue;
            mpfr_sub(z[i].re.get(), z[i].re.get(), corr.re.get(), MPFR_RNDN);
            mpfr_sub(z[i].im.get(), z[i].im.get(), corr.im.get(), MPFR_RNDN);
            mpfr_hypot(mag.get(), corr.re.get(), corr.im.get(), MPFR_RNDN);
            mpfr_hypot(zmag.get(), z[i].re.get(), z[i].im.get(), MPFR_RNDN);
            if (mpfr_cmp_ui(zmag.get(), 1) > 0) mpfr_div(mag.get(), mag.get(), zmag.get(), MPFR_RNDN);
            mpfr_max(worst.get(), worst.get(), mag.get(), MPFR_RNDN);
        }
        if (mpfr_zero_p(worst.get()) || mpfr_get_exp(worst.get()) < -(prec - 8)) return;
    }
}

} // namespace detail

/// Certified inclusion disk |z - center| <= radius holding exactly one root.
struct RootDisk {
    Real re, im;     // center (exact dyadic values)
    Real radius;     // rounded up
    bool real = false;  // centered on the real axis, hence the enclosed root is real

    /// Certified enclosure of the modulus of the enclosed root.
    Interval modulus() const {
        const Bits p = std::max(re.prec(), radius.prec());
        Interval x = Interval::point(re), y = Interval::point(im);
        Interval c = (x.square() + y.square()).sqrt();
        Interval r(p);
        mpfr_sub(r.lo().get(), c.lo().get(), radius.get(), MPFR_RNDD);
        if (mpfr_sgn(r.lo().get()) < 0) mpfr_set_zero(r.lo().get(), 1);
        mpfr_add(r.hi().get(), c.hi().get(), radius.get(), MPFR_RNDU);
        return r;
    }

    /// For a real root: enclosure [center - radius, center + radius].
    Interval real_enclosure() const {
        Interval r(std::max(re.prec(), radius.prec()));
        mpfr_sub(r.lo().get(), re.get(), radius.get(), MPFR_RNDD);
        mpfr_add(r.hi().get(), re.get(), radius.get(), MPFR_RNDU);
        return r;
    }
};

struct RootIsolation {
    std::vector<RootDisk> disks;  // pairwise disjoint
    Bits bits = 0;                // working precision of the certificate
};

namespace detail {

// Lower bound on the distance between two exact complex points.
inline Real distance_lower(const RootDisk& a, const RootDisk& b, Bits p) {
    Interval dx = Interval::point(a.re) - Interval::point(b.re);
    Interval dy = Interval::point(a.im) - Interval::point(b.im);
    Interval d = (dx.square() + dy.square()).sqrt();
    Real out(p);
    mpfr_set(out.get(), d.lo().get(), MPFR_RNDD);
    return out;
}

inline std::optional<RootIsolation> certify_approximations(const IntPolynomial& p, const std::vector<MpComplex>& z,
                                                           Bits prec) {
    const std::size_t n = z.size();
    std::vector<RootDisk> disks;
    disks.reserve(n);
    for (const auto& zi : z) {
        RootDisk d{zi.re, zi.im, Real(prec), mpfr_zero_p(zi.im.get()) != 0};
        disks.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < n; ++i) {
        // P(z_i) with interval Horner
        Interval x = Interval::point(disks[i].re), y = Interval::point(disks[i].im);
        Interval vr(prec), vi(prec);
        const auto& c = p.coeffs();
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            Interval nr = vr * x - vi * y + *it;
            Interval ni = vr * y + vi * x;
            vr = std::move(nr);
            vi = std::move(ni);
        }
        Interval absval = (vr.square() + vi.square()).sqrt();
        Real w(prec);
        mpfr_set(w.get(), absval.hi().get(), MPFR_RNDU);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Real dl = distance_lower(disks[i], disks[j], prec);
            if (mpfr_sgn(dl.get()) <= 0) return std::nullopt;
            mpfr_div(w.get(), w.get(), dl.get(), MPFR_RNDU);
        }
        mpfr_mul_ui(disks[i].radius.get(), w.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    }
    // pairwise disjointness makes each disk its own component
    Real sum(prec);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Real dl = distance_lower(disks[i], disks[j], prec);
            mpfr_add(sum.get(), disks[i].radius.get(), disks[j].radius.get(), MPFR_RNDU);
            if (!mpfr_greater_p(dl.get(), sum.get())) return std::nullopt;
        }
    }
    return RootIsolation{std::move(disks), prec};
}

} // namespace detail

/// Isolates every complex root of a squarefree monic polynomial. Precision
/// starts at `start_bits` and doubles until the disks separate or `cap_bits`
/// is exceeded (returns nullopt in that case).
inline std::optional<RootIsolation> isolate_roots(const IntPolynomial& p, Bits start_bits = 64,
                                                  Bits cap_bits = 8192) {
    if (!p.is_monic()) throw NotMonic("root isolation expects a monic polynomial, got " + p.to_string());
    const int n = p.degree();
    if (n < 1) return RootIsolation{{}, start_bits};

    // Initial guesses on a circle of radius 1 + max|a_i| (Cauchy bound), with
    // an irrational angular offset so no guess lands on the real axis.
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::fabs(p.coeff(static_cast<std::size_t>(i)).get_d()));
    const double radius = std::min(1.0 + bound, 1e6) * 0.9;
    std::vector<detail::MpComplex> z;
    for (int k = 0; k < n; ++k) {
        detail::MpComplex c(start_bits);
        const double ang = 2.0 * M_PI * k / n + 0.4;
        mpfr_set_d(c.re.get(), radius * std::cos(ang), MPFR_RNDN);
        mpfr_set_d(c.im.get(), radius * std::sin(ang), MPFR_RNDN);
        z.push_back(std::move(c));
    }

    int iterations = 2000;
    for (Bits prec = start_bits; prec <= cap_bits; prec *= 2) {
        for (auto& c : z) {
            detail::set_prec_keep(c.re, prec);
            detail::set_prec_keep(c.im, prec);
        }
        detail::aberth(p, z, prec, iterations);
        iterations = 60;
        // snap near-real approximations onto the axis
        std::vector<detail::MpComplex> snapped;
        for (const auto& c : z) {
            detail::MpComplex s = c;
            Real mag(prec);
            mpfr_hypot(mag.get(), c.re.get(), c.im.get(), MPFR_RNDN);
            if (mpfr_zero_p(c.im.get()) ||
                mpfr_get_exp(c.im.get()) < mpfr_get_exp(mag.get()) - static_cast<mpfr_exp_t>(prec / 2))
                mpfr_set_zero(s.im.get(), 1);
            snapped.push_back(std::move(s));
        }
        if (auto iso = detail::certify_approximations(p, snapped, prec)) return iso;
    }
    return std::nullopt;
}

/// Shrinks a certified enclosure of a simple real root to roughly `bits`
/// relative precision. The input must contain exactly one root of `p`.
/// Newton steps propose the enclosure; exact sign evaluation at its dyadic
/// endpoints certifies it.
inline Interval refine_real_root(const IntPolynomial& p, const Interval& isolating, Bits bits) {
    const Bits work = bits + 32;
    const int sl = sign_at(p, isolating.lo().get());
    const int sh = sign_at(p, isolating.hi().get());
    if (sl == 0) return Interval::point(isolating.lo());
    if (sh == 0) return Interval::point(isolating.hi());
    if (sl == sh) throw NoRootInInterval("no sign change of " + p.to_string() + " on the isolating interval");

    IntPolynomial dp = p.derivative();
    Real x = isolating.midpoint();
    mpfr_prec_round(x.get(), work, MPFR_RNDN);
    Real fx(work), dfx(work), step(work);
    auto eval = [&](const IntPolynomial& q, Real& out) {
        mpfr_set_zero(out.get(), 1);
        for (auto it = q.coeffs().rbegin(); it != q.coeffs().rend(); ++it) {
            mpfr_mul(out.get(), out.get(), x.get(), MPFR_RNDN);
            mpfr_add_z(out.get(), out.get(), it->get_mpz_t(), MPFR_RNDN);
        }
    };
    for (int it = 0; it < 200; ++it) {
        eval(p, fx);
        eval(dp, dfx);
        if (mpfr_zero_p(dfx.get())) break;
        mpfr_div(step.get(), fx.get(), dfx.get(), MPFR_RNDN);
        mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
        if (mpfr_less_p(x.get(), isolating.lo().get()) || mpfr_greater_p(x.get(), isolating.hi().get())) {
            x = isolating.midpoint();
            mpfr_prec_round(x.get(), work, MPFR_RNDN);
            break;
        }
        if (mpfr_zero_p(step.get()) || mpfr_get_exp(step.get()) < mpfr_get_exp(x.get()) - static_cast<mpfr_exp_t>(bits + 8))
            break;
    }

    // try enclosures [x - d, x + d] with growing d
    Interval best = isolating;
    for (int widen = 0; widen < 12; ++widen) {
        Real d(work);
        mpfr_set_ui_2exp(d.get(), 1, mpfr_get_exp(x.get()) - static_cast<mpfr_exp_t>(bits) + 4 * widen, MPFR_RNDN);
        Interval cand(work);
        mpfr_sub(cand.lo().get(), x.get(), d.get(), MPFR_RNDD);
        mpfr_add(cand.hi().get(), x.get(), d.get(), MPFR_RNDU);
        if (!isolating.contains(cand)) break;
        const int a = sign_at(p, cand.lo().get());
        const int b = sign_at(p, cand.hi().get());
        if (a == 0) return Interval::point(cand.lo());
        if (b == 0) return Interval::point(cand.hi());
        if (a != b) return cand;
    }

    // bisection fallback
    Interval cur = best;
    int s_lo = sl;
    for (Bits it = 0; it < work + 64; ++it) {
        Real w = cur.width();
        Real mid = cur.midpoint();
        if (mpfr_zero_p(w.get()) ||
            mpfr_get_exp(w.get()) < mpfr_get_exp(mid.get()) - static_cast<mpfr_exp_t>(bits))
            break;
        const int sm = sign_at(p, mid.get());
        if (sm == 0) return Interval::point(mid);
        if (sm == s_lo) cur.lo() = mid;
        else cur.hi() = mid;
    }
    return cur;
}

} // namespace pisot

#endif
