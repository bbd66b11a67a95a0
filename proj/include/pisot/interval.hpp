#ifndef PISOT_INTERVAL_HPP
#define PISOT_INTERVAL_HPP

// Thin RAII layer over MPFR plus a closed real interval type whose
// operations round the lower endpoint down and the upper endpoint up.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "pisot/errors.hpp"

namespace pisot {

using Bits = mpfr_prec_t;

/// Owning wrapper for an mpfr_t.
class Real {
public:
    explicit Real(Bits prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        // leave `o` valid but tiny
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    Bits prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Scientific notation with `digits` significant digits rounded in `rnd`.
    std::string to_decimal(int digits, mpfr_rnd_t rnd) const {
        char* buf = nullptr;
        const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
        mpfr_asprintf(&buf, fmt, digits - 1, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

private:
    mpfr_t v_;
};

/// Closed interval [lo, hi] with MPFR endpoints.
class Interval {
public:
    explicit Interval(Bits prec = 64) : lo_(prec), hi_(prec) {}

    Interval(const mpz_class& z, Bits prec) : lo_(prec), hi_(prec) {
        mpfr_set_z(lo_.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    }

    Interval(const mpq_class& q, Bits prec) : lo_(prec), hi_(prec) {
        mpfr_set_q(lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    }

    Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

    static Interval point(const Real& x) { return Interval(x, x); }

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    Real& lo() { return lo_; }
    Real& hi() { return hi_; }
    Bits prec() const { return std::max(lo_.prec(), hi_.prec()); }

    bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
    bool positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool is_exact_zero() const { return mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get()); }

    bool contains(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_lessequal_p(o.hi_.get(), hi_.get());
    }
    bool contains(const mpq_class& q) const {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }
    /// Strictly below every point of `o`.
    bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_.get(), o.lo_.get()); }
    bool disjoint(const Interval& o) const { return certainly_less(o) || o.certainly_less(*this); }
    bool certainly_less(const mpq_class& q) const { return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0; }
    bool certainly_greater(const mpq_class& q) const { return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) > 0; }

    /// Upper bound on hi - lo.
    Real width() const {
        Real w(prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }

    Real midpoint() const {
        Real m(prec() + 1);
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }

    Interval operator-() const {
        Interval r(prec());
        mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
        return r;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& a, const Interval& b) {
        const Bits p = std::max(a.prec(), b.prec());
        Interval r(p);
        Real t(p);
        mpfr_srcptr ea[2] = {a.lo_.get(), a.hi_.get()};
        mpfr_srcptr eb[2] = {b.lo_.get(), b.hi_.get()};
        bool first = true;
        for (auto x : ea) {
            for (auto y : eb) {
                mpfr_mul(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return r;
    }

    /// Division by an interval that excludes zero.
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw PrecisionExhausted("interval division by an enclosure of zero");
        const Bits p = std::max(a.prec(), b.prec());
        Interval r(p);
        Real t(p);
        mpfr_srcptr ea[2] = {a.lo_.get(), a.hi_.get()};
        mpfr_srcptr eb[2] = {b.lo_.get(), b.hi_.get()};
        bool first = true;
        for (auto x : ea) {
            for (auto y : eb) {
                mpfr_div(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_div(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return r;
    }

    friend Interval operator*(const Interval& a, const mpz_class& z) {
        Interval r(a.prec());
        if (z >= 0) {
            mpfr_mul_z(r.lo_.get(), a.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
            mpfr_mul_z(r.hi_.get(), a.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
        } else {
            mpfr_mul_z(r.lo_.get(), a.hi_.get(), z.get_mpz_t(), MPFR_RNDD);
            mpfr_mul_z(r.hi_.get(), a.lo_.get(), z.get_mpz_t(), MPFR_RNDU);
        }
        return r;
    }

    friend Interval operator+(const Interval& a, const mpz_class& z) {
        Interval r(a.prec());
        mpfr_add_z(r.lo_.get(), a.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_add_z(r.hi_.get(), a.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const mpz_class& z) {
        Interval r(a.prec());
        mpfr_sub_z(r.lo_.get(), a.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_sub_z(r.hi_.get(), a.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    /// {|x| : x in this}.
    Interval abs() const {
        Interval r(prec());
        if (mpfr_sgn(lo_.get()) >= 0) {
            mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
            mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
        } else if (mpfr_sgn(hi_.get()) <= 0) {
            mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
            mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
        } else {
            mpfr_set_zero(r.lo_.get(), 1);
            Real nl(prec());
            mpfr_neg(nl.get(), lo_.get(), MPFR_RNDU);
            mpfr_max(r.hi_.get(), nl.get(), hi_.get(), MPFR_RNDU);
        }
        return r;
    }

    /// Natural logarithm; requires a strictly positive enclosure.
    Interval log() const {
        if (!positive()) throw PrecisionExhausted("logarithm of an enclosure that is not strictly positive");
        Interval r(prec());
        mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    Interval sqrt() const {
        Interval r(prec());
        if (mpfr_sgn(lo_.get()) <= 0) mpfr_set_zero(r.lo_.get(), 1);
        else mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
        if (mpfr_sgn(hi_.get()) <= 0) mpfr_set_zero(r.hi_.get(), 1);
        else mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    Interval square() const {
        Interval a = abs();
        Interval r(prec());
        mpfr_sqr(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_sqr(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }

    /// Convex hull.
    friend Interval hull(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }

    std::string lo_decimal(int digits) const { return lo_.to_decimal(digits, MPFR_RNDD); }
    std::string hi_decimal(int digits) const { return hi_.to_decimal(digits, MPFR_RNDU); }

private:
    Real lo_;
    Real hi_;
};

/// Enough decimal digits to represent an enclosure computed at `bits`.
inline int decimal_digits_for(Bits bits) { return std::clamp(static_cast<int>(bits * 0.30103) + 2, 6, 60); }

} // namespace pisot

#endif
