#pragma once

// Line-delimited JSON orbit store. A file holds one or more sections, each
// started by a header line for one (field, k, m). Orbit lines of a work unit
// are followed by a checkpoint line for that unit, and a finished section
// ends with a "complete" line. Orbit lines whose unit never reached its
// checkpoint are ignored on load, so an interrupted run can be resumed.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "subcodes/orbits.hpp"

namespace subcodes {

inline constexpr const char* kOrbitDbFormat = "subcodes-orbit-db";

struct OrbitDbSection {
    std::uint32_t q = 2, n = 0;
    std::vector<std::uint32_t> poly;
    std::string field_hash;
    std::uint32_t k = 0, m = 1;
    std::size_t units = 0;
    std::map<std::size_t, std::vector<Orbit>> by_unit;  // checkpointed units only
    bool complete = false;

    std::vector<Orbit> orbits() const {
        std::vector<Orbit> out;
        for (const auto& [u, os] : by_unit) out.insert(out.end(), os.begin(), os.end());
        std::sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) { return a.rep < b.rep; });
        return out;
    }
};

struct OrbitDb {
    FieldRef field;
    std::vector<OrbitDbSection> sections;

    std::vector<Orbit> orbits(bool complete_only = true) const {
        std::vector<Orbit> out;
        for (const auto& s : sections) {
            if (complete_only && !s.complete) continue;
            auto os = s.orbits();
            out.insert(out.end(), os.begin(), os.end());
        }
        return out;
    }
};

namespace detail {

inline nlohmann::json orbit_db_header(const FieldSpec& f, std::uint32_t k, std::uint32_t m, std::size_t units) {
    return {{"type", "header"},
            {"format", kOrbitDbFormat},
            {"version", 1},
            {"field", {{"q", f.q()}, {"n", f.n()}, {"poly", f.poly()}, {"hash", f.hash()}}},
            {"k", k},
            {"m", m},
            {"units", units}};
}

inline nlohmann::json orbit_record(const Orbit& o, std::size_t unit) {
    return {{"type", "orbit"},
            {"field", o.field->hash()},
            {"unit", unit},
            {"m", o.m},
            {"k", o.k},
            {"length", o.length},
            {"min_dist", o.min_dist},
            {"stab_degree", o.stab_degree},
            {"parent_length", o.parent_length},
            {"rep", o.rep.exponents()}};
}

inline void write_section(std::ostream& os, const FieldSpec& f, const OrbitDbSection& s) {
    os << orbit_db_header(f, s.k, s.m, s.units).dump() << "\n";
    for (const auto& [u, orbits] : s.by_unit) {
        for (const auto& o : orbits) os << orbit_record(o, u).dump() << "\n";
        os << nlohmann::json{{"type", "checkpoint"}, {"unit", u}, {"orbits", orbits.size()}}.dump() << "\n";
    }
    if (s.complete) {
        std::size_t total = 0;
        for (const auto& [u, orbits] : s.by_unit) total += orbits.size();
        os << nlohmann::json{{"type", "complete"}, {"orbits", total}}.dump() << "\n";
    }
}

} // namespace detail

inline OrbitDb load_orbit_db(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open orbit database " + path);
    OrbitDb db;
    std::map<std::size_t, std::vector<Orbit>> pending;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        try {
            const auto j = nlohmann::json::parse(line);
            const auto type = j.at("type").get<std::string>();
            if (type == "header") {
                if (j.at("format").get<std::string>() != kOrbitDbFormat)
                    throw Error(Errc::ParseError, where + ": not an orbit database");
                const auto& jf = j.at("field");
                OrbitDbSection s;
                s.q = jf.at("q").get<std::uint32_t>();
                s.n = jf.at("n").get<std::uint32_t>();
                s.poly = jf.at("poly").get<std::vector<std::uint32_t>>();
                s.field_hash = jf.at("hash").get<std::string>();
                s.k = j.at("k").get<std::uint32_t>();
                s.m = j.at("m").get<std::uint32_t>();
                s.units = j.at("units").get<std::size_t>();
                if (!db.field) {
                    db.field = make_field(s.q, s.n, s.poly);
                } else if (db.field->hash() != s.field_hash) {
                    throw Error(Errc::FieldMismatch, where + ": sections over different fields");
                }
                pending.clear();
                db.sections.push_back(std::move(s));
                continue;
            }
            if (db.sections.empty()) throw Error(Errc::ParseError, where + ": record before header");
            auto& s = db.sections.back();
            if (type == "orbit") {
                if (j.at("field").get<std::string>() != s.field_hash)
                    throw Error(Errc::FieldMismatch, where + ": orbit from another field");
                Orbit o;
                o.field = db.field;
                o.m = j.at("m").get<std::uint32_t>();
                o.k = j.at("k").get<std::uint32_t>();
                o.length = j.at("length").get<std::uint32_t>();
                o.min_dist = j.at("min_dist").get<std::uint32_t>();
                o.stab_degree = j.at("stab_degree").get<std::uint32_t>();
                o.parent_length = j.at("parent_length").get<std::uint32_t>();
                o.rep = from_exponents(db.field, j.at("rep").get<std::vector<Exponent>>());
                if (o.rep.dim() != o.k) throw Error(Errc::ParseError, where + ": dimension does not match rep");
                pending[j.at("unit").get<std::size_t>()].push_back(std::move(o));
            } else if (type == "checkpoint") {
                const auto u = j.at("unit").get<std::size_t>();
                auto& got = pending[u];
                if (got.size() != j.at("orbits").get<std::size_t>())
                    throw Error(Errc::ParseError, where + ": checkpoint count does not match its orbit lines");
                s.by_unit[u] = std::move(got);
                pending.erase(u);
            } else if (type == "complete") {
                s.complete = true;
            } else {
                throw Error(Errc::ParseError, where + ": unknown record type " + type);
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::ParseError, where + ": " + e.what());
        }
    }
    return db;
}

/// enumerate_orbits backed by a database file: finished units found in the
/// file are reused, new units are appended as they complete.
inline std::vector<Orbit> enumerate_orbits_with_db(const FieldRef& f, std::uint32_t k, std::uint32_t m,
                                                   const std::string& path, EnumOptions opt = {}) {
    namespace fs = std::filesystem;
    OrbitDb db;
    if (fs::exists(path) && fs::file_size(path) > 0) db = load_orbit_db(path);
    if (db.field && !db.field->same_as(*f))
        throw Error(Errc::FieldMismatch, path + " was written for a different field");

    OrbitDbSection* mine = nullptr;
    for (auto& s : db.sections)
        if (s.k == k && s.m == m) mine = &s;
    if (mine && mine->complete) return mine->orbits();

    const std::size_t units = (k == 0 || k == f->n()) ? 1 : RrefEnumerator(f->q(), f->n() - 1, k - 1).units().size();
    if (!mine) {
        OrbitDbSection s;
        s.q = f->q();
        s.n = f->n();
        s.poly = f->poly();
        s.field_hash = f->hash();
        s.k = k;
        s.m = m;
        s.units = units;
        db.sections.push_back(std::move(s));
        mine = &db.sections.back();
    }
    if (mine->units != units) throw Error(Errc::ParseError, path + ": unit layout differs from this build");

    // Rewrite the file without stray lines of interrupted units, then append.
    {
        const std::string tmp = path + ".tmp";
        std::ofstream os(tmp, std::ios::trunc);
        for (const auto& s : db.sections)
            if (&s != mine) detail::write_section(os, *f, s);
        detail::write_section(os, *f, *mine);
        os.close();
        if (!os) throw Error(Errc::ResourceLimit, "cannot write " + tmp);
        fs::rename(tmp, path);
    }

    if (k == 0 || k == f->n()) {
        auto all = enumerate_orbits(f, k, m, opt);
        std::ofstream os(path, std::ios::app);
        for (const auto& o : all) os << detail::orbit_record(o, 0).dump() << "\n";
        os << nlohmann::json{{"type", "checkpoint"}, {"unit", 0}, {"orbits", all.size()}}.dump() << "\n";
        os << nlohmann::json{{"type", "complete"}, {"orbits", all.size()}}.dump() << "\n";
        return all;
    }

    for (const auto& [u, orbits] : mine->by_unit) {
        opt.completed_units.insert(u);
        opt.preloaded.insert(opt.preloaded.end(), orbits.begin(), orbits.end());
    }
    std::ofstream os(path, std::ios::app);
    auto user_cb = opt.on_unit_done;
    opt.on_unit_done = [&](std::size_t u, const std::vector<Orbit>& found) {
        for (const auto& o : found) os << detail::orbit_record(o, u).dump() << "\n";
        os << nlohmann::json{{"type", "checkpoint"}, {"unit", u}, {"orbits", found.size()}}.dump() << "\n";
        os.flush();
        if (user_cb) user_cb(u, found);
    };
    auto all = enumerate_orbits(f, k, m, opt);
    os << nlohmann::json{{"type", "complete"}, {"orbits", all.size()}}.dump() << "\n";
    return all;
}

} // namespace subcodes
