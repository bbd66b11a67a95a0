#ifndef PISOT_CATALOG_HPP
#define PISOT_CATALOG_HPP

// Named Pisot numbers with optional expected patterns, stored as JSON:
//
// {"schema_version": 1, "entries": [
//   {"name": "golden", "coeffs": ["-1", "-1", "1"], "provenance": "...",
//    "expected_patterns": [
//      {"level": 1, "constant": "alternating_odd_plus"},
//      {"levels": [1, 2], "congruence": 0, "max_onset_prime": 13},
//      {"recurrence": "zero_iterate"}]}]}

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "pisot/suite.hpp"

namespace pisot {

struct CatalogEntry {
    std::string name;
    IntPolynomial poly;
    std::string provenance;
    std::vector<Expectation> expected_patterns;
};

inline ConstantKind parse_constant_kind(const std::string& s) {
    for (auto k : {ConstantKind::plus_one, ConstantKind::minus_one, ConstantKind::alternating_odd_plus,
                   ConstantKind::alternating_odd_minus}) {
        std::string name = to_string(k);
        if (s == name || "constant_" + s == name) return k;
    }
    throw InvalidParameters("unknown constant pattern '" + s + "'");
}

inline PredictionVariant parse_variant(const std::string& s) {
    for (auto v : {PredictionVariant::top_iterate_1deg, PredictionVariant::zero_iterate, PredictionVariant::alpha_form,
                   PredictionVariant::alpha_form_alt, PredictionVariant::beta_odd, PredictionVariant::beta_even})
        if (s == to_string(v)) return v;
    throw InvalidParameters("unknown recurrence variant '" + s + "'");
}

inline Expectation parse_expectation(const nlohmann::json& j) {
    Expectation e;
    if (j.contains("recurrence")) {
        e = Expectation::recurrence_at(parse_variant(j.at("recurrence").get<std::string>()), "");
        e.label = "recurrence " + j.at("recurrence").get<std::string>();
    } else {
        int lo = 0, hi = 0;
        if (j.contains("levels")) {
            lo = j.at("levels").at(0).get<int>();
            hi = j.at("levels").at(1).get<int>();
        } else {
            lo = hi = j.at("level").get<int>();
        }
        if (j.contains("congruence")) {
            std::optional<u64> onset;
            if (j.contains("max_onset_prime")) onset = j.at("max_onset_prime").get<u64>();
            const auto r = j.at("congruence").get<long long>();
            e = Expectation::congruence_at(lo, hi, r, onset,
                                           "u^k_p = " + std::to_string(r) + " (mod p), k in [" + std::to_string(lo) +
                                               ", " + std::to_string(hi) + "]");
        } else if (j.contains("constant")) {
            std::optional<long> onset;
            if (j.contains("max_onset")) onset = j.at("max_onset").get<long>();
            const auto c = parse_constant_kind(j.at("constant").get<std::string>());
            e = Expectation::constant_at(lo, c, onset, "level " + std::to_string(lo) + " " + to_string(c));
        } else {
            throw InvalidParameters("expected pattern needs 'congruence', 'constant' or 'recurrence': " + j.dump());
        }
    }
    if (j.contains("label")) e.label = j.at("label").get<std::string>();
    return e;
}

inline std::vector<CatalogEntry> parse_catalog(const nlohmann::json& doc) {
    std::vector<CatalogEntry> out;
    std::set<std::string> names;
    try {
        for (const auto& j : doc.at("entries")) {
            CatalogEntry e;
            e.name = j.at("name").get<std::string>();
            if (!names.insert(e.name).second) throw InvalidParameters("duplicate catalog name '" + e.name + "'");
            e.poly = IntPolynomial::from_strings(j.at("coeffs").get<std::vector<std::string>>());
            if (!e.poly.is_monic()) throw NotMonic("catalog entry '" + e.name + "' is not monic");
            e.provenance = j.value("provenance", "");
            if (j.contains("expected_patterns"))
                for (const auto& p : j.at("expected_patterns")) e.expected_patterns.push_back(parse_expectation(p));
            out.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidParameters(std::string("malformed catalog: ") + ex.what());
    }
    return out;
}

inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameters("cannot open catalog '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidParameters("catalog '" + path + "' is not valid JSON: " + ex.what());
    }
    return parse_catalog(doc);
}

inline const CatalogEntry& find_entry(const std::vector<CatalogEntry>& cat, const std::string& name) {
    for (const auto& e : cat)
        if (e.name == name) return e;
    throw InvalidParameters("no catalog entry named '" + name + "'");
}

#ifdef PISOT_DEFAULT_CATALOG
inline std::string default_catalog_path() { return PISOT_DEFAULT_CATALOG; }
#else
inline std::string default_catalog_path() { return "data/catalog.json"; }
#endif

} // namespace pisot

#endif
