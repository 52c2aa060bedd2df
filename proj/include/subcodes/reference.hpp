#pragma once

// Published census tables and the cell-by-cell comparison against a computed
// CensusTable. A cell whose computed value exceeds the published one is
// attributed to an omission when dropping every orbit that descends from some
// set of degenerate cyclic orbits reproduces the published number.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "subcodes/orbits.hpp"

namespace subcodes {

struct LengthSelector {
    enum class Kind { All, Full, Degenerate, Exact };
    Kind kind = Kind::All;
    std::uint32_t value = 0;

    bool matches(std::uint32_t length, std::uint32_t full_length) const {
        switch (kind) {
            case Kind::All: return true;
            case Kind::Full: return length == full_length;
            case Kind::Degenerate: return length != full_length;
            case Kind::Exact: return length == value;
        }
        return false;
    }
    std::string to_string() const {
        switch (kind) {
            case Kind::All: return "all";
            case Kind::Full: return "full";
            case Kind::Degenerate: return "degenerate";
            case Kind::Exact: return std::to_string(value);
        }
        return "?";
    }
};

struct ReferenceCell {
    std::string table_id;
    std::optional<std::uint32_t> k, d;
    LengthSelector length;
    std::uint64_t count = 0;

    std::string name() const {
        std::string s = table_id;
        if (k || d) {
            s += "[";
            if (k) s += "k=" + std::to_string(*k);
            if (k && d) s += ",";
            if (d) s += "d=" + std::to_string(*d);
            s += "]";
        }
        return s;
    }
    bool covers(const CensusKey& key, std::uint32_t full_length) const {
        return (!k || *k == key.k) && (!d || *d == key.min_dist) && length.matches(key.length, full_length);
    }
};

struct ReferenceTable {
    std::string id;
    std::string label;
    std::uint32_t q = 2, n = 0, m = 1;
    LengthSelector length;
    std::vector<std::uint32_t> ks, ds;  // empty for single-number statements
    std::vector<ReferenceCell> cells;
};

struct ReferenceSet {
    int version = 0;
    std::vector<ReferenceTable> tables;

    std::vector<const ReferenceTable*> matching(std::uint32_t q, std::uint32_t n, std::uint32_t m) const {
        std::vector<const ReferenceTable*> out;
        for (const auto& t : tables)
            if (t.q == q && t.n == n && t.m == m) out.push_back(&t);
        return out;
    }
};

inline LengthSelector parse_length_selector(const nlohmann::json& j) {
    LengthSelector s;
    if (j.is_number_unsigned()) {
        s.kind = LengthSelector::Kind::Exact;
        s.value = j.get<std::uint32_t>();
    } else {
        const auto v = j.get<std::string>();
        if (v == "all") s.kind = LengthSelector::Kind::All;
        else if (v == "full") s.kind = LengthSelector::Kind::Full;
        else if (v == "degenerate") s.kind = LengthSelector::Kind::Degenerate;
        else throw Error(Errc::ParseError, "unknown length selector '" + v + "'");
    }
    return s;
}

inline ReferenceSet parse_reference(const nlohmann::json& doc) {
    ReferenceSet set;
    try {
        set.version = doc.at("version").get<int>();
        for (const auto& jt : doc.at("tables")) {
            ReferenceTable t;
            t.id = jt.at("id").get<std::string>();
            t.label = jt.value("label", t.id);
            t.q = jt.at("q").get<std::uint32_t>();
            t.n = jt.at("n").get<std::uint32_t>();
            t.m = jt.at("m").get<std::uint32_t>();
            t.length = parse_length_selector(jt.at("length"));
            if (jt.contains("rows")) {
                t.ds = jt.at("d").get<std::vector<std::uint32_t>>();
                for (const auto& [ks, row] : jt.at("rows").items()) {
                    const auto k = static_cast<std::uint32_t>(std::stoul(ks));
                    t.ks.push_back(k);
                    const auto counts = row.get<std::vector<std::uint64_t>>();
                    if (counts.size() != t.ds.size())
                        throw Error(Errc::ParseError, t.id + ": row " + ks + " has the wrong width");
                    for (std::size_t i = 0; i < counts.size(); ++i)
                        t.cells.push_back({t.id, k, t.ds[i], t.length, counts[i]});
                }
                std::sort(t.ks.begin(), t.ks.end());
            } else {
                ReferenceCell c{t.id, std::nullopt, std::nullopt, t.length, jt.at("count").get<std::uint64_t>()};
                if (jt.contains("k") && !jt["k"].is_null()) c.k = jt["k"].get<std::uint32_t>();
                if (jt.contains("d_value") && !jt["d_value"].is_null()) c.d = jt["d_value"].get<std::uint32_t>();
                t.cells.push_back(c);
            }
            set.tables.push_back(std::move(t));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("reference tables: ") + e.what());
    }
    return set;
}

inline ReferenceSet load_reference(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
    return parse_reference(doc);
}

#ifdef SUBCODES_DATA_DIR
inline std::string default_reference_path() { return std::string(SUBCODES_DATA_DIR) + "/reference_census.json"; }
#endif

// -- comparison --------------------------------------------------------------

using CensusRow = std::pair<CensusKey, std::uint64_t>;

struct CellDiff {
    enum class Status { Match, Omission, Mismatch };
    ReferenceCell cell;
    std::uint64_t computed = 0;
    Status status = Status::Match;
    std::vector<CensusRow> omitted;
};

struct CensusDiff {
    std::vector<CellDiff> cells;
    /// Computed rows that no published cell covers.
    std::vector<CensusRow> unreported;
    /// Rows attributed to omissions, merged with the unreported ones.
    std::vector<CensusRow> omitted;

    bool compared() const { return !cells.empty(); }
    bool consistent() const {
        for (const auto& c : cells)
            if (c.status == CellDiff::Status::Mismatch) return false;
        return true;
    }
    bool exact() const { return consistent() && omitted.empty(); }
    std::size_t count(CellDiff::Status s) const {
        return static_cast<std::size_t>(
            std::count_if(cells.begin(), cells.end(), [&](const CellDiff& c) { return c.status == s; }));
    }
};

inline CensusDiff diff_census(const CensusTable& t, const ReferenceSet& ref) {
    CensusDiff out;
    const auto tables = ref.matching(t.q, t.n, t.m);
    if (tables.empty()) return out;
    const std::uint32_t cyclic_full = static_cast<std::uint32_t>((ipow(t.q, t.n) - 1) / (t.q - 1));

    const auto have = t.dims();
    const std::set<std::uint32_t> computed_ks(have.begin(), have.end());
    std::set<std::uint32_t> published_ks;
    for (const auto* tab : tables) published_ks.insert(tab->ks.begin(), tab->ks.end());
    const bool all_published_present =
        std::includes(computed_ks.begin(), computed_ks.end(), published_ks.begin(), published_ks.end());

    auto in_scope = [&](const ReferenceCell& c, const CensusKey& key) {
        if (c.k) return *c.k == key.k;
        return published_ks.contains(key.k);
    };

    std::map<CensusKey, std::uint64_t> omitted_rows;
    for (const auto* tab : tables) {
        for (const auto& cell : tab->cells) {
            if (cell.k ? !computed_ks.contains(*cell.k) : !all_published_present) continue;
            CellDiff cd;
            cd.cell = cell;
            std::map<std::uint32_t, std::vector<CensusRow>> by_parent;
            for (const auto& [key, cnt] : t.counts) {
                if (!in_scope(cell, key) || !cell.covers(key, t.full_length)) continue;
                cd.computed += cnt;
                if (key.parent_length != cyclic_full) by_parent[key.parent_length].push_back({key, cnt});
            }
            if (cd.computed != cell.count) {
                cd.status = CellDiff::Status::Mismatch;
                std::vector<std::uint32_t> classes;
                for (const auto& [p, rows] : by_parent) classes.push_back(p);
                // smallest set of degenerate parent classes whose removal explains the gap
                std::optional<std::uint32_t> best;
                for (std::uint32_t mask = 1; mask < (1u << classes.size()); ++mask) {
                    std::uint64_t dropped = 0;
                    for (std::size_t i = 0; i < classes.size(); ++i)
                        if (mask >> i & 1)
                            for (const auto& r : by_parent[classes[i]]) dropped += r.second;
                    if (cd.computed >= dropped && cd.computed - dropped == cell.count &&
                        (!best || std::popcount(mask) < std::popcount(*best)))
                        best = mask;
                }
                if (best) {
                    cd.status = CellDiff::Status::Omission;
                    for (std::size_t i = 0; i < classes.size(); ++i)
                        if (*best >> i & 1)
                            for (const auto& r : by_parent[classes[i]]) {
                                cd.omitted.push_back(r);
                                omitted_rows[r.first] = r.second;
                            }
                }
            }
            out.cells.push_back(std::move(cd));
        }
    }

    for (const auto& [key, cnt] : t.counts) {
        if (!published_ks.contains(key.k)) continue;
        bool covered = false;
        for (const auto* tab : tables)
            for (const auto& cell : tab->cells)
                if (cell.covers(key, t.full_length)) covered = true;
        if (!covered) {
            out.unreported.push_back({key, cnt});
            omitted_rows[key] = cnt;
        }
    }
    out.omitted.assign(omitted_rows.begin(), omitted_rows.end());
    return out;
}

inline std::string describe_row(const CensusRow& r) {
    const auto& k = r.first;
    return std::to_string(r.second) + " orbit(s) k=" + std::to_string(k.k) + " d=" + std::to_string(k.min_dist) +
           " length " + std::to_string(k.length) + " (inside cyclic orbits of length " +
           std::to_string(k.parent_length) + ")";
}

} // namespace subcodes
