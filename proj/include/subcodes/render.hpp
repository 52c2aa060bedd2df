#pragma once

// Text, JSON and CSV output for censuses and their comparison with published
// tables. The text form puts dimensions in rows and distances in columns.

#include <iomanip>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "subcodes/orbits.hpp"
#include "subcodes/reference.hpp"

namespace subcodes {

namespace detail {

inline std::string census_grid(const CensusTable& t, const std::vector<std::uint32_t>& ds,
                               const std::function<bool(const CensusKey&)>& pick) {
    std::ostringstream os;
    os << "  k\\d";
    for (auto d : ds) os << std::setw(8) << d;
    os << "\n";
    for (auto k : t.dims()) {
        os << std::setw(5) << k;
        for (auto d : ds) {
            std::uint64_t c = 0;
            for (const auto& [key, cnt] : t.counts)
                if (key.k == k && key.min_dist == d && pick(key)) c += cnt;
            os << std::setw(8) << c;
        }
        os << "\n";
    }
    return os.str();
}

} // namespace detail

inline std::string render_census_text(const CensusTable& t) {
    std::set<std::uint32_t> dset;
    std::set<std::uint32_t> degenerate;
    std::uint32_t dmax = 2;
    for (const auto& [key, c] : t.counts) {
        if (key.min_dist == 0) dset.insert(0);
        dmax = std::max(dmax, key.min_dist);
        if (key.length != t.full_length) degenerate.insert(key.length);
    }
    for (std::uint32_t d = 2; d <= dmax; d += 2) dset.insert(d);
    const std::vector<std::uint32_t> ds(dset.begin(), dset.end());

    std::ostringstream os;
    os << "field q=" << t.q << " n=" << t.n << " poly=" << format_poly(t.poly) << "  m=" << t.m
       << "  full length " << t.full_length << "\n\n";
    os << "orbits\n" << detail::census_grid(t, ds, [](const CensusKey&) { return true; }) << "\n";
    os << "full-length orbits (" << t.full_length << " subspaces)\n"
       << detail::census_grid(t, ds, [&](const CensusKey& k) { return k.length == t.full_length; }) << "\n";
    for (auto it = degenerate.rbegin(); it != degenerate.rend(); ++it) {
        const auto len = *it;
        os << "orbits of " << len << " subspace" << (len == 1 ? "" : "s") << "\n"
           << detail::census_grid(t, ds, [&](const CensusKey& k) { return k.length == len; }) << "\n";
    }
    os << "mass check\n";
    for (auto k : t.dims()) {
        os << "  k=" << k << ": ";
        bool first = true;
        std::map<std::uint32_t, std::uint64_t> by_len;
        for (const auto& [key, c] : t.counts)
            if (key.k == k) by_len[key.length] += c;
        for (auto it = by_len.rbegin(); it != by_len.rend(); ++it) {
            os << (first ? "" : " + ") << it->second << "*" << it->first;
            first = false;
        }
        const auto g = gaussian_coefficient(t.n, k, t.q);
        os << " = " << t.mass(k) << (t.mass_ok(k) ? " = " : " != ") << "[" << t.n << " " << k << "]_" << t.q
           << (t.mass_ok(k) ? "  ok" : "  FAILED (expected " + g.str() + ")") << "\n";
    }
    return os.str();
}

inline std::string length_class(const CensusKey& key, std::uint32_t full_length) {
    return key.length == full_length ? "full" : "degenerate";
}

inline nlohmann::json census_json(const CensusTable& t) {
    nlohmann::json j;
    j["field"] = {{"q", t.q}, {"n", t.n}, {"poly", t.poly}};
    j["m"] = t.m;
    j["full_length"] = t.full_length;
    j["rows"] = nlohmann::json::array();
    for (const auto& [key, c] : t.counts)
        j["rows"].push_back({{"k", key.k},
                             {"d", key.min_dist},
                             {"length_class", length_class(key, t.full_length)},
                             {"length", key.length},
                             {"parent_length", key.parent_length},
                             {"count", c}});
    j["mass"] = nlohmann::json::array();
    for (auto k : t.dims())
        j["mass"].push_back({{"k", k},
                             {"total", t.mass(k).str()},
                             {"gaussian", gaussian_coefficient(t.n, k, t.q).str()},
                             {"ok", t.mass_ok(k)}});
    return j;
}

inline std::string render_census_csv(const CensusTable& t) {
    std::ostringstream os;
    os << "k,d,length_class,length,parent_length,count\n";
    for (const auto& [key, c] : t.counts)
        os << key.k << "," << key.min_dist << "," << length_class(key, t.full_length) << "," << key.length << ","
           << key.parent_length << "," << c << "\n";
    return os.str();
}

inline const char* status_name(CellDiff::Status s) {
    switch (s) {
        case CellDiff::Status::Match: return "match";
        case CellDiff::Status::Omission: return "omission";
        case CellDiff::Status::Mismatch: return "mismatch";
    }
    return "?";
}

inline std::string render_diff_text(const CensusDiff& d) {
    std::ostringstream os;
    if (!d.compared()) return "no published table for these parameters\n";
    os << "published cells: " << d.cells.size() << " compared, " << d.count(CellDiff::Status::Match)
       << " match, " << d.count(CellDiff::Status::Omission) << " explained by omitted orbits, "
       << d.count(CellDiff::Status::Mismatch) << " unexplained\n";
    for (const auto& c : d.cells) {
        if (c.status == CellDiff::Status::Match) continue;
        os << "  " << c.cell.name() << " (length " << c.cell.length.to_string() << "): published " << c.cell.count
           << ", computed " << c.computed << ", " << status_name(c.status) << "\n";
        for (const auto& r : c.omitted) os << "      missing " << describe_row(r) << "\n";
    }
    for (const auto& r : d.unreported) os << "  not in any published cell: " << describe_row(r) << "\n";
    if (d.exact()) os << "diff: none\n";
    else if (d.consistent()) os << "diff: the published tables omit " << d.omitted.size() << " census row(s)\n";
    else os << "diff: unexplained differences\n";
    return os.str();
}

inline nlohmann::json diff_json(const CensusDiff& d) {
    auto row = [](const CensusRow& r) {
        return nlohmann::json{{"k", r.first.k},
                              {"d", r.first.min_dist},
                              {"length", r.first.length},
                              {"parent_length", r.first.parent_length},
                              {"count", r.second}};
    };
    nlohmann::json j;
    j["compared"] = d.compared();
    j["consistent"] = d.consistent();
    j["exact"] = d.exact();
    j["cells"] = nlohmann::json::array();
    for (const auto& c : d.cells) {
        nlohmann::json jc{{"cell", c.cell.name()},
                          {"length", c.cell.length.to_string()},
                          {"published", c.cell.count},
                          {"computed", c.computed},
                          {"status", status_name(c.status)}};
        if (!c.omitted.empty()) {
            jc["omitted"] = nlohmann::json::array();
            for (const auto& r : c.omitted) jc["omitted"].push_back(row(r));
        }
        j["cells"].push_back(jc);
    }
    j["unreported"] = nlohmann::json::array();
    for (const auto& r : d.unreported) j["unreported"].push_back(row(r));
    j["omitted"] = nlohmann::json::array();
    for (const auto& r : d.omitted) j["omitted"].push_back(row(r));
    return j;
}

} // namespace subcodes
