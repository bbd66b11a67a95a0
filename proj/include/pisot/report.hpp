#ifndef PISOT_REPORT_HPP
#define PISOT_REPORT_HPP

// JSON serialization of every result type. Exact integers are decimal
// strings and real values are intervals {lo, hi, bits}; no bare floats.

#include <nlohmann/json.hpp>

#include <string>

#include "pisot/limits.hpp"

namespace pisot::report {

using nlohmann::json;

inline constexpr int schema_version = 1;

inline json interval(const Interval& v) {
    const Bits bits = v.prec();
    const int digits = decimal_digits_for(bits);
    return {{"lo", v.lo_decimal(digits)}, {"hi", v.hi_decimal(digits)}, {"bits", bits}};
}

inline json big(const BigInt& z) { return z.get_str(); }
inline json rational(const Rational& q) { return q.get_str(); }

inline json polynomial(const IntPolynomial& p) {
    return {{"coeffs", p.to_strings()}, {"text", p.to_string()}};
}

inline json element(const FieldElement& e) {
    json out = json::array();
    for (const auto& c : e.coords) out.push_back(c.get_str());
    return out;
}

inline json certificate(const PisotCertificate& c) {
    json j{{"verdict", to_string(c.verdict)},
           {"geometry_certified", c.geometry_certified},
           {"bits", c.bits},
           {"note", c.note}};
    j["dominant_root"] = c.dominant_root ? interval(*c.dominant_root) : json(nullptr);
    json mods = json::array();
    for (const auto& m : c.conjugate_moduli) mods.push_back(interval(m));
    j["conjugate_moduli"] = mods;
    if (!c.conjugate_moduli.empty()) {
        Interval maxm = c.conjugate_moduli.front();
        for (const auto& m : c.conjugate_moduli) {
            mpfr_max(maxm.lo().get(), maxm.lo().get(), m.lo().get(), MPFR_RNDD);
            mpfr_max(maxm.hi().get(), maxm.hi().get(), m.hi().get(), MPFR_RNDU);
        }
        j["conjugate_bound"] = interval(maxm);
    } else {
        j["conjugate_bound"] = nullptr;
    }
    j["irreducibility_witness"] = c.irreducibility_witness ? json(*c.irreducibility_witness) : json(nullptr);
    return j;
}

inline json cell(const TableCell& c, int k, long n) {
    json j{{"k", k}, {"n", n}};
    if (c.ok()) {
        j["u"] = big(*c.integer_part);
        j["element"] = element(c.element);
        j["frac_magnitude"] = interval(*c.frac_magnitude);
    } else {
        j["error"] = {{"code", c.error_code}, {"message", c.error_message}};
    }
    return j;
}

inline json table(const IterateTable& t) {
    json rows = json::array();
    for (int k = 0; k <= t.k_max(); ++k) {
        json cells = json::array();
        for (long n = t.n_lo(); n <= t.n_hi(); ++n) cells.push_back(cell(t.at(k, n), k, n));
        rows.push_back({{"k", k}, {"cells", cells}});
    }
    return {{"n_lo", t.n_lo()}, {"n_hi", t.n_hi()}, {"k_max", t.k_max()}, {"rows", rows}};
}

inline json recurrence(const Recurrence& r) {
    json coeffs = json::array();
    for (const auto& c : r.coeffs) coeffs.push_back(rational(c));
    return {{"order", r.order}, {"coeffs", coeffs}, {"onset", r.onset}};
}

inline json congruence(const CongruenceReport& c) {
    json res = json::array();
    for (const auto& r : c.residues) {
        json e{{"p", r.prime}, {"method", to_string(r.method)}};
        if (auto s = r.symmetric()) e["residue"] = *s;
        else e["error"] = r.error;
        res.push_back(e);
    }
    json j{{"k", c.k}, {"p_lo", c.p_lo}, {"p_hi", c.p_hi}, {"branch", to_string(c.branch)}, {"residues", res}};
    j["value"] = c.value ? json(*c.value) : json(nullptr);
    j["onset_prime"] = c.onset_prime ? json(*c.onset_prime) : json(nullptr);
    return j;
}

inline json constant(const ConstantVerdict& v) {
    json j{{"kind", to_string(v.kind)}, {"exact", v.exact}};
    j["onset"] = v.onset ? json(*v.onset) : json(nullptr);
    return j;
}

inline json convergence(const ConvergenceReport& r) {
    auto list = [](const std::vector<MagnitudeViolation>& v) {
        json out = json::array();
        for (const auto& m : v) out.push_back({{"sigma", m.sigma}, {"nu", m.nu}, {"kind", m.kind}});
        return out;
    };
    json j{{"level", r.level}, {"violations", list(r.violations)}, {"erratic", list(r.erratic)}};
    j["onset"] = r.onset_estimate ? json(*r.onset_estimate) : json(nullptr);
    return j;
}

inline json expectation(const ExpectationResult& e) {
    const Expectation& x = e.expectation;
    json j{{"label", x.label}, {"outcome", to_string(e.outcome)}, {"detail", e.detail}};
    switch (x.kind) {
    case ExpectationKind::congruence:
        j["kind"] = "congruence";
        j["levels"] = {x.level, x.level_hi};
        j["residue"] = x.residue;
        if (x.max_onset_prime) j["max_onset_prime"] = *x.max_onset_prime;
        break;
    case ExpectationKind::constant:
        j["kind"] = "constant";
        j["level"] = x.level;
        j["constant"] = to_string(x.constant);
        if (x.max_onset) j["max_onset"] = *x.max_onset;
        break;
    case ExpectationKind::recurrence:
        j["kind"] = "recurrence";
        j["variant"] = to_string(x.variant);
        break;
    }
    return j;
}

inline json suite(const SuiteReport& r) {
    json levels = json::array();
    for (const auto& lv : r.levels) {
        json j{{"level", lv.level}};
        j["recurrence"] = lv.recurrence ? recurrence(*lv.recurrence) : json(nullptr);
        if (!lv.recurrence_error.empty()) j["recurrence_error"] = lv.recurrence_error;
        j["characteristic"] = lv.characteristic ? polynomial(*lv.characteristic) : json(nullptr);
        j["symmetry"] = lv.symmetry ? json(to_string(*lv.symmetry)) : json(nullptr);
        if (lv.congruence_error.empty()) j["congruence"] = congruence(lv.congruence);
        else j["congruence_error"] = lv.congruence_error;
        j["constant"] = constant(lv.constant);
        if (lv.convergence) j["convergence"] = convergence(*lv.convergence);
        else j["convergence_error"] = lv.convergence_error;
        levels.push_back(j);
    }
    json preds = json::array();
    for (const auto& p : r.predictions) {
        json coeffs = json::array();
        for (const auto& c : p.predicted.coeffs) coeffs.push_back(big(c));
        json j{{"variant", to_string(p.predicted.variant)}, {"level", p.predicted.level}, {"coeffs", coeffs}};
        if (!p.predicted.sign_rule.empty()) j["sign_rule"] = p.predicted.sign_rule;
        if (p.match) {
            j["match"] = to_string(p.match->outcome);
            j["differing_positions"] = p.match->differing_positions;
        } else {
            j["match"] = nullptr;
            j["note"] = p.note;
        }
        preds.push_back(j);
    }
    json pairs = json::array();
    for (const auto& p : r.pair_audit)
        pairs.push_back({{"levels", {p.level_a, p.level_b}}, {"relation", to_string(p.relation)}});
    json exps = json::array();
    for (const auto& e : r.expectations) exps.push_back(expectation(e));
    return {{"poly", polynomial(r.poly)},
            {"n_range", {r.n_lo, r.n_hi}},
            {"p_hi", r.p_hi},
            {"levels", levels},
            {"predictions", preds},
            {"pair_audit", pairs},
            {"expectations", exps},
            {"all_passed", r.all_passed()},
            {"cell_errors", r.errors}};
}

inline json spec(const LogEquationSpec& s) {
    json j{{"family", to_string(s.family)}, {"m", s.m}, {"n", s.n}};
    if (s.family == Family::heart) j["l"] = s.l;
    return j;
}

inline json solution(const LimitPointSolution& s) {
    return {{"spec", spec(s.spec)},
            {"poly", polynomial(s.poly)},
            {"removed_unit_factors", s.removed_unit_factors},
            {"root", interval(s.root)},
            {"certificate", certificate(s.certificate)},
            {"residual", interval(s.residual)}};
}

inline json identity(const IdentityCheck& c) {
    json terms = json::array();
    for (const auto& t : c.terms)
        terms.push_back({{"expression", t.expression},
                         {"claimed", rational(t.claimed)},
                         {"value", interval(t.value)},
                         {"residual", interval(t.residual)}});
    return {{"kind", to_string(c.kind)}, {"n", c.n}, {"bits", c.bits}, {"terms", terms}};
}

inline json ordering(const OrderingReport& r) {
    json chain = json::array();
    for (const auto& e : r.chain)
        chain.push_back({{"label", e.label}, {"poly", polynomial(e.poly)}, {"root", interval(e.root)}});
    json sep = json::array();
    for (bool s : r.separated) sep.push_back(s);
    return {{"chain", chain},
            {"separated", sep},
            {"alpha1_equals_beta1", r.alpha1_equals_beta1},
            {"all_below_two", r.all_below_two},
            {"holds", r.holds()},
            {"bits", r.bits}};
}

inline json error(const std::string& code, const std::string& message, json context = nullptr) {
    json j{{"code", code}, {"message", message}};
    if (!context.is_null()) j["context"] = std::move(context);
    return j;
}

/// Envelope shared by every command.
inline json envelope(const std::string& command, json inputs, json results, json errors = json::array()) {
    return {{"schema_version", schema_version},
            {"command", command},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)},
            {"errors", std::move(errors)}};
}

} // namespace pisot::report

#endif
