#ifndef PISOT_TRANSFORM_HPP
#define PISOT_TRANSFORM_HPP

// The iterated transform x -> theta^n (x - [x]) applied to theta^n, computed
// exactly in Z[theta]. Level k of exponent n holds I^k(theta^n) and its
// nearest integer u^k_n.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pisot/numfield.hpp"

namespace pisot {

struct TransformOptions {
    RoundingOptions rounding;
    // Relative accuracy requested for fractional-part magnitudes.
    Bits magnitude_rel_bits = 24;
};

/// (theta^n (x - [x]), [x]) with theta^n supplied.
inline std::pair<FieldElement, BigInt> iterate_once(const NumberField& f, const FieldElement& theta_n,
                                                    const FieldElement& x, const RoundingOptions& opt = {}) {
    BigInt u = nearest_integer(f, x, opt);
    return {element_mul(f, theta_n, x - u), u};
}

inline std::pair<FieldElement, BigInt> iterate_once(const NumberField& f, unsigned long n, const FieldElement& x,
                                                    const RoundingOptions& opt = {}) {
    return iterate_once(f, theta_power(f, n), x, opt);
}

/// Certified enclosure of |value(e)| with relative width at most
/// 2^-rel_bits, or exactly [0, 0] for the zero element.
inline Interval certified_magnitude(const NumberField& f, const FieldElement& e, Bits rel_bits,
                                    const RoundingOptions& opt = {}) {
    if (e.is_zero()) return Interval(BigInt(0), 64);
    Bits bits = opt.start_bits;
    const auto needed = static_cast<Bits>(e.max_bits()) + 32;
    while (bits < needed && bits * 2 <= opt.cap_bits) bits *= 2;
    for (; bits <= opt.cap_bits; bits *= 2) {
        Interval m = eval_interval(f, e, bits).abs();
        if (!m.positive()) continue;
        Real w = m.width();
        // width <= lo * 2^-rel_bits
        Real lim(bits);
        mpfr_div_2ui(lim.get(), m.lo().get(), static_cast<unsigned long>(rel_bits), MPFR_RNDD);
        if (mpfr_lessequal_p(w.get(), lim.get())) return m;
    }
    throw PrecisionExhausted("fractional magnitude not certified at " + std::to_string(opt.cap_bits) + " bits");
}

struct TableCell {
    FieldElement element;              // I^k(theta^n)
    std::optional<BigInt> integer_part;  // u^k_n
    std::optional<Interval> frac_magnitude;  // |I^k(theta^n) - u^k_n|
    std::string error_code;            // empty when the cell is complete
    std::string error_message;

    bool ok() const { return error_code.empty(); }
    /// I^k(theta^n) - u^k_n, exact.
    FieldElement fractional_part() const { return element - *integer_part; }
};

class IterateTable {
public:
    IterateTable(NumberField field, int k_max, long n_lo, long n_hi)
        : field_(std::move(field)), k_max_(k_max), n_lo_(n_lo), n_hi_(n_hi),
          cells_(static_cast<std::size_t>(n_hi - n_lo + 1) * static_cast<std::size_t>(k_max + 1)) {}

    const NumberField& field() const { return field_; }
    int k_max() const { return k_max_; }
    long n_lo() const { return n_lo_; }
    long n_hi() const { return n_hi_; }
    bool covers(int k, long n) const { return k >= 0 && k <= k_max_ && n >= n_lo_ && n <= n_hi_; }

    const TableCell& at(int k, long n) const { return cells_[index(k, n)]; }
    TableCell& at(int k, long n) { return cells_[index(k, n)]; }

    /// u^k_n for n in [n_lo, n_hi]; nullopt where rounding failed.
    std::vector<std::optional<BigInt>> row(int k) const {
        std::vector<std::optional<BigInt>> out;
        for (long n = n_lo_; n <= n_hi_; ++n) out.push_back(at(k, n).integer_part);
        return out;
    }

private:
    std::size_t index(int k, long n) const {
        if (!covers(k, n))
            throw InvalidParameters("table cell (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ") out of range");
        return static_cast<std::size_t>(n - n_lo_) * static_cast<std::size_t>(k_max_ + 1) + static_cast<std::size_t>(k);
    }

    NumberField field_;
    int k_max_;
    long n_lo_, n_hi_;
    std::vector<TableCell> cells_;
};

/// Fills levels 0..k_max for every n in [n_lo, n_hi]. A failed rounding is
/// recorded in its cell (and marks the higher levels of that n) instead of
/// aborting the table.
inline IterateTable build_table(const NumberField& f, int k_max, long n_lo, long n_hi,
                                const TransformOptions& opt = {}) {
    if (k_max < 0 || n_lo < 1 || n_hi < n_lo)
        throw InvalidParameters("build_table needs 0 <= k_max and 1 <= n_lo <= n_hi");
    IterateTable t(f, k_max, n_lo, n_hi);
    for (long n = n_lo; n <= n_hi; ++n) {
        const FieldElement theta_n = theta_power(f, static_cast<unsigned long>(n));
        FieldElement x = theta_n;
        for (int k = 0; k <= k_max; ++k) {
            TableCell& cell = t.at(k, n);
            cell.element = x;
            try {
                cell.integer_part = nearest_integer(f, x, opt.rounding);
                FieldElement frac = x - *cell.integer_part;
                cell.frac_magnitude = certified_magnitude(f, frac, opt.magnitude_rel_bits, opt.rounding);
                if (k < k_max) x = element_mul(f, theta_n, frac);
            } catch (const Error& e) {
                cell.error_code = e.code();
                cell.error_message = e.what() + std::string(" at (k=") + std::to_string(k) + ", n=" + std::to_string(n) + ")";
                for (int j = k + 1; j <= k_max; ++j) {
                    t.at(j, n).error_code = "UpstreamFailure";
                    t.at(j, n).error_message = "level " + std::to_string(k) + " failed for n=" + std::to_string(n);
                }
                break;
            }
        }
    }
    return t;
}

enum class Ordering { decreasing, not_decreasing, plateau, incomparable };

struct MagnitudeEntry {
    long n = 0;
    std::optional<Interval> magnitude;
    // Certified relation to the entry for n + 1 (the last entry holds `decreasing`).
    Ordering next = Ordering::decreasing;
};

namespace detail {

inline bool same_magnitude_exactly(const FieldElement& a, const FieldElement& b) {
    if (a == b) return true;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        if (a.coords[i] != -b.coords[i]) return false;
    return true;
}

} // namespace detail

/// |I^k(theta^n) - u^k_n| for every n of the table, with consecutive pairs
/// refined until they are certified disjoint, exactly equal, or the
/// precision cap is reached (flagged incomparable).
inline std::vector<MagnitudeEntry> frac_magnitudes(const IterateTable& t, int k, const RoundingOptions& opt = {}) {
    if (k < 0 || k > t.k_max()) throw InvalidParameters("level " + std::to_string(k) + " not in table");
    std::vector<MagnitudeEntry> out;
    for (long n = t.n_lo(); n <= t.n_hi(); ++n) out.push_back({n, t.at(k, n).frac_magnitude, Ordering::decreasing});
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        const TableCell& ca = t.at(k, out[i].n);
        const TableCell& cb = t.at(k, out[i + 1].n);
        if (!ca.ok() || !cb.ok()) {
            out[i].next = Ordering::incomparable;
            continue;
        }
        const FieldElement fa = ca.fractional_part(), fb = cb.fractional_part();
        if (detail::same_magnitude_exactly(fa, fb)) {
            out[i].next = fa.is_zero() ? Ordering::plateau : Ordering::not_decreasing;
            continue;
        }
        Bits rel = 24;
        Interval a = *out[i].magnitude, b = *out[i + 1].magnitude;
        for (;;) {
            if (b.certainly_less(a)) {
                out[i].next = Ordering::decreasing;
                break;
            }
            if (!a.certainly_less(b) && !a.is_exact_zero() && !b.is_exact_zero()) {
                // overlapping: tighten both
                if (rel > opt.cap_bits) {
                    out[i].next = Ordering::incomparable;
                    break;
                }
                rel *= 2;
                try {
                    a = certified_magnitude(t.field(), fa, rel, opt);
                    b = certified_magnitude(t.field(), fb, rel, opt);
                } catch (const PrecisionExhausted&) {
                    out[i].next = Ordering::incomparable;
                    break;
                }
                continue;
            }
            out[i].next = Ordering::not_decreasing;
            break;
        }
    }
    return out;
}

} // namespace pisot

#endif
