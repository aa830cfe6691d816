#ifndef SETSPECTRA_IO_HPP
#define SETSPECTRA_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "core.hpp"
#include "search.hpp"
#include "spectrum.hpp"
#include "transversal.hpp"

namespace setspectra {

using json = nlohmann::json;

// Family file format: {"n": int, "k": int, "sets": [[int,...],...]},
// 1-based elements, each set sorted ascending, family in colex order.

inline json family_to_json(const SetFamily& f) {
    json sets = json::array();
    for (const auto& s : f.sets) sets.push_back(s.elements());
    json out;
    out["n"] = f.n;
    if (f.k) out["k"] = *f.k;
    out["sets"] = std::move(sets);
    return out;
}

inline SetFamily family_from_json(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw contract_error("family json: missing integer field \"n\"");
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxGround)
        throw capacity_error("family json: n must be in 1..64");
    std::optional<int> k;
    if (j.contains("k")) k = j["k"].get<int>();
    SetFamily f(n, k);
    if (!j.contains("sets") || !j["sets"].is_array())
        throw contract_error("family json: missing array field \"sets\"");
    for (const auto& js : j["sets"]) {
        ElementSet s;
        for (const auto& je : js) {
            const int e = je.get<int>();
            if (e < 1 || e > n)
                throw contract_error("family json: element " + std::to_string(e) +
                                     " out of range 1.." + std::to_string(n));
            if (s.contains(e))
                throw contract_error("family json: repeated element in a set");
            s.add(e);
        }
        f.add(s);  // rejects duplicates and non-k-uniform sets
    }
    return f;
}

inline std::string big_str(const BigCount& v) { return v.str(); }
inline std::string rat_str(const Rational& v) {
    return boost::multiprecision::numerator(v).str() +
           (boost::multiprecision::denominator(v) == 1
                ? ""
                : "/" + boost::multiprecision::denominator(v).str());
}

inline json basis_to_json(const TransversalBasis& b) {
    json out;
    out["basis"] = family_to_json(b.basis)["sets"];
    out["t"] = b.t;
    out["tau"] = b.tau;
    return out;
}

inline json spectrum_to_json(const SpectrumReport& r) {
    json out;
    out["count"] = big_str(r.count);
    out["tilde_count"] = big_str(r.tilde_count);
    if (!r.by_level.empty()) {
        json lv = json::object();
        for (const auto& [l, c] : r.by_level) lv[std::to_string(l)] = big_str(c);
        out["by_level"] = std::move(lv);
    }
    return out;
}

inline json branching_to_json(const BranchingOutcome& o) {
    json out;
    out["total_weight"] = rat_str(o.total_weight);
    out["final_sequences"] = o.final_sequences.size();
    out["min_weight_at_level"] = rat_str(o.min_weight_at_level);
    out["weight_floor"] = rat_str(o.weight_floor);
    json checks = json::array();
    json c;
    c["level"] = o.bound_check.level;
    c["level_size"] = big_str(o.bound_check.level_size);
    c["bound"] = big_str(o.bound_check.bound);
    c["pass"] = o.bound_check.pass;
    checks.push_back(std::move(c));
    out["eq22_checks"] = std::move(checks);
    return out;
}

inline json search_to_json(const SearchResult& r) {
    json out;
    out["best"] = big_str(r.best_count);
    json w = json::array();
    for (const auto& f : r.witnesses) w.push_back(family_to_json(f));
    out["witnesses"] = std::move(w);
    out["families_enumerated"] = r.families_enumerated;
    out["iso_classes"] = r.iso_classes;
    out["exhaustive"] = r.exhaustive;
    return out;
}

inline json crossover_to_json(const CrossoverTable& t) {
    json out;
    out["k"] = t.k;
    out["p"] = t.p;
    out["q"] = t.q;
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        row["n"] = r.n;
        row["count_p"] = big_str(r.count_p);
        row["count_q"] = big_str(r.count_q);
        row["sign"] = r.sign;
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    if (t.first_flip) out["first_flip"] = *t.first_flip;
    return out;
}

inline std::string crossover_to_csv(const CrossoverTable& t) {
    std::string out = "n,count_p,count_q,sign\n";
    for (const auto& r : t.rows)
        out += std::to_string(r.n) + "," + big_str(r.count_p) + "," + big_str(r.count_q) +
               "," + std::to_string(r.sign) + "\n";
    return out;
}

}  // namespace setspectra

#endif  // SETSPECTRA_IO_HPP
