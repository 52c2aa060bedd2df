#pragma once

// Code files: a JSON description of an orbit code by its field, shift
// modulus and generator subspaces, with optional claimed parameters.
//
//   {"field": {"q": 2, "n": 10, "poly": [1,1,1,1,0,1,1,0,0,0,1]},
//    "m": 1,
//    "generators": [[0, 33, 66, ...], ...],
//    "claimed": {"n": 10, "k": 5, "size": 33, "d": 10}}

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subcodes/codes.hpp"

namespace subcodes {

struct ClaimedParams {
    std::optional<std::uint32_t> n, k, d;
    std::optional<std::uint64_t> size;
};

struct CodeFile {
    FieldRef field;
    std::uint32_t m = 1;
    std::vector<std::vector<Exponent>> generators;
    std::optional<ClaimedParams> claimed;
    std::string note;
};

inline CodeFile parse_code_file(const nlohmann::json& j) {
    CodeFile cf;
    try {
        const auto& jf = j.at("field");
        const auto q = jf.at("q").get<std::uint32_t>();
        const auto n = jf.at("n").get<std::uint32_t>();
        std::vector<std::uint32_t> poly;
        if (!jf.contains("poly") || jf["poly"].is_null()) poly = default_poly(q, n);
        else if (jf["poly"].is_string()) poly = parse_poly(jf["poly"].get<std::string>());
        else poly = jf["poly"].get<std::vector<std::uint32_t>>();
        cf.field = make_field(q, n, poly);
        if (jf.contains("hash") && jf["hash"].get<std::string>() != cf.field->hash())
            throw Error(Errc::FieldMismatch, "field hash does not match the polynomial");
        cf.m = j.value("m", 1u);
        cf.generators = j.at("generators").get<std::vector<std::vector<Exponent>>>();
        if (j.contains("claimed") && !j["claimed"].is_null()) {
            const auto& jc = j["claimed"];
            ClaimedParams c;
            if (jc.contains("n")) c.n = jc["n"].get<std::uint32_t>();
            if (jc.contains("k")) c.k = jc["k"].get<std::uint32_t>();
            if (jc.contains("size")) c.size = jc["size"].get<std::uint64_t>();
            if (jc.contains("d")) c.d = jc["d"].get<std::uint32_t>();
            cf.claimed = c;
        }
        cf.note = j.value("note", std::string());
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("code file: ") + e.what());
    }
    require_modulus(*cf.field, cf.m);
    return cf;
}

inline CodeFile read_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
    return parse_code_file(j);
}

inline nlohmann::json code_file_json(const CodeFile& cf) {
    nlohmann::json j;
    j["field"] = {{"q", cf.field->q()}, {"n", cf.field->n()}, {"poly", cf.field->poly()}};
    j["m"] = cf.m;
    j["generators"] = cf.generators;
    if (cf.claimed) {
        nlohmann::json c = nlohmann::json::object();
        if (cf.claimed->n) c["n"] = *cf.claimed->n;
        if (cf.claimed->k) c["k"] = *cf.claimed->k;
        if (cf.claimed->size) c["size"] = *cf.claimed->size;
        if (cf.claimed->d) c["d"] = *cf.claimed->d;
        j["claimed"] = c;
    }
    if (!cf.note.empty()) j["note"] = cf.note;
    return j;
}

/// Generators as subspaces; exponent lists are validated.
inline std::vector<Subspace> generator_subspaces(const CodeFile& cf) {
    std::vector<Subspace> out;
    for (std::size_t i = 0; i < cf.generators.size(); ++i) {
        try {
            out.push_back(from_exponents(cf.field, cf.generators[i]));
        } catch (const Error& e) {
            throw Error(e.code(), "generator " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

inline SubspaceCode code_of(const CodeFile& cf) { return code_from_generators(cf.field, cf.m, generator_subspaces(cf)); }

/// Code file describing a code through its orbits under m.
inline CodeFile code_file_from_orbits(const FieldRef& f, std::uint32_t m, const std::vector<Orbit>& orbits,
                                      const CodeParams& p) {
    CodeFile cf;
    cf.field = f;
    cf.m = m;
    for (const auto& o : orbits) cf.generators.push_back(o.rep.exponents());
    ClaimedParams c;
    c.n = p.n;
    c.k = p.k;
    c.size = p.size;
    c.d = p.d;
    cf.claimed = c;
    return cf;
}

// -- verification ------------------------------------------------------------

struct GeneratorInfo {
    std::vector<Exponent> exponents;
    std::uint32_t dim = 0;
    std::uint32_t orbit_length = 0;
    std::uint32_t internal_distance = 0;
    std::optional<std::size_t> repeats;  // 0-based index of the generator whose orbit it repeats
};

struct VerifyReport {
    std::uint32_t q = 2, n = 0, m = 1;
    std::vector<std::uint32_t> poly;
    std::string field_hash;
    std::vector<GeneratorInfo> generators;
    std::size_t distinct_orbits = 0;
    std::vector<std::string> warnings;
    CodeParams computed;
    std::optional<ClaimedParams> claimed;
    std::vector<std::string> mismatches;
    std::optional<BigCount> bound;
    std::string note;

    bool claims_match() const { return mismatches.empty(); }
    bool optimal() const { return bound && BigCount(computed.size) == *bound; }
};

inline VerifyReport verify_code(const CodeFile& cf, unsigned workers = 1) {
    VerifyReport r;
    const auto& f = *cf.field;
    r.q = f.q();
    r.n = f.n();
    r.m = cf.m;
    r.poly = f.poly();
    r.field_hash = f.hash();
    r.note = cf.note;
    const auto gens = generator_subspaces(cf);
    const SubspaceCode code = code_from_generators(cf.field, cf.m, gens);
    std::vector<Orbit> orbits;
    for (const auto& g : gens) orbits.push_back(orbit_of(g, cf.m));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const Orbit& o = orbits[i];
        GeneratorInfo g;
        g.exponents = cf.generators[i];
        g.dim = gens[i].dim();
        g.orbit_length = o.length;
        g.internal_distance = o.min_dist;
        for (std::size_t j = 0; j < i; ++j)
            if (orbits[j].rep == o.rep) {
                g.repeats = j;
                break;
            }
        r.generators.push_back(std::move(g));
    }
    r.distinct_orbits = code.orbits().size();
    r.warnings = code.warnings();
    r.computed = params(code, workers);
    r.claimed = cf.claimed;

    if (cf.claimed) {
        const auto& c = *cf.claimed;
        auto cmp = [&](const char* what, auto claimed, auto computed) {
            if (claimed && (!computed || *claimed != *computed))
                r.mismatches.push_back(std::string(what) + ": claimed " + std::to_string(*claimed) + ", computed " +
                                       (computed ? std::to_string(*computed) : std::string("-")));
        };
        cmp("n", c.n, std::optional<std::uint32_t>(r.computed.n));
        cmp("k", c.k, r.computed.k);
        cmp("size", c.size, std::optional<std::uint64_t>(r.computed.size));
        cmp("d", c.d, r.computed.d);
        if (c.size && *c.size != r.computed.size) {
            std::uint64_t listed = 0;
            for (const auto& g : r.generators) listed += g.orbit_length;
            std::ostringstream os;
            os << "the " << r.distinct_orbits << " distinct orbits of the listed generators give " << r.computed.size
               << " words";
            if (r.computed.size < *c.size) os << ", " << (*c.size - r.computed.size) << " short of the claim";
            else os << ", " << (r.computed.size - *c.size) << " more than the claim";
            if (listed != r.computed.size) os << " (the rows counted with repetition give " << listed << ")";
            r.warnings.push_back(os.str());
        }
    }
    if (r.computed.k && r.computed.d && *r.computed.d >= 2 && *r.computed.d % 2 == 0)
        r.bound = etzion_vardy_bound(r.n, *r.computed.d, *r.computed.k, r.q);
    return r;
}

inline VerifyReport verify_code_file(const std::string& path, unsigned workers = 1) {
    return verify_code(read_code_file(path), workers);
}

inline std::string verdict_line(const VerifyReport& r) {
    std::string s = r.computed.to_string();
    if (!r.claims_match()) return s + " MISMATCH with claimed parameters";
    s += " OK";
    if (r.optimal()) s += ", meets bound with equality (optimal)";
    else if (r.bound) s += ", bound " + r.bound->str() + ", gap " + BigCount(*r.bound - r.computed.size).str();
    return s;
}

inline std::string render_verify_text(const VerifyReport& r) {
    std::ostringstream os;
    os << "field: q=" << r.q << " n=" << r.n << " poly=" << format_poly(r.poly) << " (hash " << r.field_hash
       << ")\n";
    os << "modulus m=" << r.m << "\n";
    os << "generators: " << r.generators.size() << " listed, " << r.distinct_orbits << " distinct orbits\n";
    for (std::size_t i = 0; i < r.generators.size(); ++i) {
        const auto& g = r.generators[i];
        os << "  " << std::setw(3) << i + 1 << " dim " << g.dim << " orbit length " << std::setw(5) << g.orbit_length
           << " internal d " << g.internal_distance;
        if (g.repeats) os << "  repeats generator " << *g.repeats + 1;
        os << "  " << format_exponents(g.exponents) << "\n";
    }
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    os << "computed: " << r.computed.to_string() << "\n";
    if (r.claimed) {
        os << "claimed: " << (r.claims_match() ? "matches" : "differs") << "\n";
        for (const auto& m : r.mismatches) os << "  " << m << "\n";
    }
    if (r.bound) {
        os << "bound: A_" << r.q << "(" << r.n << "," << *r.computed.d << "," << *r.computed.k
           << ") <= " << r.bound->str() << "\n";
    }
    if (!r.note.empty()) os << "note: " << r.note << "\n";
    os << verdict_line(r) << "\n";
    return os.str();
}

inline nlohmann::json verify_json(const VerifyReport& r) {
    nlohmann::json j;
    j["field"] = {{"q", r.q}, {"n", r.n}, {"poly", r.poly}, {"hash", r.field_hash}};
    j["m"] = r.m;
    j["generators"] = nlohmann::json::array();
    for (const auto& g : r.generators) {
        nlohmann::json jg{{"exponents", g.exponents},
                          {"dim", g.dim},
                          {"orbit_length", g.orbit_length},
                          {"internal_distance", g.internal_distance}};
        if (g.repeats) jg["repeats"] = *g.repeats + 1;
        j["generators"].push_back(jg);
    }
    j["distinct_orbits"] = r.distinct_orbits;
    j["warnings"] = r.warnings;
    j["computed"] = {{"n", r.computed.n}, {"size", r.computed.size}, {"params", r.computed.to_string()}};
    if (r.computed.k) j["computed"]["k"] = *r.computed.k;
    if (r.computed.d) j["computed"]["d"] = *r.computed.d;
    j["claims_match"] = r.claims_match();
    j["mismatches"] = r.mismatches;
    if (r.bound) {
        j["bound"] = r.bound->str();
        j["optimal"] = r.optimal();
    }
    if (!r.note.empty()) j["note"] = r.note;
    j["verdict"] = verdict_line(r);
    return j;
}

} // namespace subcodes
