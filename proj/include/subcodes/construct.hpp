#pragma once

// Codes as cliques. Orbits are the vertices of a compatibility graph with an
// edge whenever every pair of members across the two orbits is at distance at
// least d; the union of the orbits of a clique is then a code of minimum
// distance at least d. Also the search for self-dual quasi-cyclic codes by
// closing orbits under the orthogonal complement.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "subcodes/codes.hpp"
#include "subcodes/enumerate.hpp"
#include "subcodes/orbits.hpp"

namespace subcodes {

// -- compatibility graph -----------------------------------------------------

struct CompatGraph {
    FieldRef field;
    std::uint32_t d = 2;
    std::vector<Orbit> vertices;
    /// Orbits left out because two of their own members are closer than d.
    std::vector<Orbit> excluded;
    std::vector<std::vector<Word>> adj;

    std::size_t size() const noexcept { return adj.size(); }
    bool edge(std::size_t i, std::size_t j) const { return adj[i][j / 64] >> (j % 64) & 1; }
    std::uint32_t degree(std::size_t i) const { return bits::popcount(adj[i]); }
    std::uint64_t edge_count() const {
        std::uint64_t e = 0;
        for (std::size_t i = 0; i < size(); ++i) e += degree(i);
        return e / 2;
    }
    void add_edge(std::size_t i, std::size_t j) {
        adj[i][j / 64] |= Word{1} << (j % 64);
        adj[j][i / 64] |= Word{1} << (i % 64);
    }
    std::uint64_t weight(std::size_t i) const { return vertices.empty() ? 1 : vertices[i].length; }
};

/// Bare graph with n vertices and no orbit data.
inline CompatGraph empty_graph(std::size_t n, std::uint32_t d = 2) {
    CompatGraph g;
    g.d = d;
    g.adj.assign(n, std::vector<Word>(bits::word_count(static_cast<std::uint32_t>(n)), 0));
    return g;
}

namespace detail {

inline bool compatible(const std::vector<Exponent>& ea, const Orbit& a, const std::vector<Exponent>& eb, const Orbit& b,
                       std::uint32_t d) {
    if (a.k + b.k < d) return false;
    const std::uint32_t max_dim = (a.k + b.k - d) / 2;
    const auto stop = static_cast<std::uint32_t>(ipow(a.field->q(), max_dim + 1) - 1);
    return max_shift_overlap(ea, eb, a.field->group_order(), std::gcd(a.m, b.m), false, stop) < stop;
}

} // namespace detail

/// True when every member pair across the two orbits is at distance >= d.
inline bool orbits_compatible(const Orbit& a, const Orbit& b, std::uint32_t d) {
    require_same_field(a.rep, b.rep);
    return detail::compatible(a.rep.exponents(), a, b.rep.exponents(), b, d);
}

inline CompatGraph build_graph(const std::vector<Orbit>& orbits, std::uint32_t d, unsigned workers = 1) {
    if (d < 2 || d % 2 != 0) throw Error(Errc::OddDistance, "threshold d must be even and at least 2");
    CompatGraph g;
    g.d = d;
    for (const auto& o : orbits) {
        if (!g.field) g.field = o.field;
        else if (g.field != o.field && !g.field->same_as(*o.field))
            throw Error(Errc::FieldMismatch, "orbits over different fields");
        // a single-member orbit has no internal pair
        if (o.length > 1 && o.min_dist < d) g.excluded.push_back(o);
        else g.vertices.push_back(o);
    }
    const std::size_t n = g.vertices.size();
    g.adj.assign(n, std::vector<Word>(bits::word_count(static_cast<std::uint32_t>(n)), 0));
    std::vector<std::vector<std::uint32_t>> exps(n);
    for (std::size_t i = 0; i < n; ++i) exps[i] = g.vertices[i].rep.exponents();

    // row i holds j > i; mirrored afterwards
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            for (std::size_t j = i + 1; j < n; ++j)
                if (detail::compatible(exps[i], g.vertices[i], exps[j], g.vertices[j], d))
                    g.adj[i][j / 64] |= Word{1} << (j % 64);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.edge(i, j)) g.adj[j][i / 64] |= Word{1} << (i % 64);
    return g;
}

/// Index of the vertex whose orbit contains v, if any.
inline std::optional<std::size_t> find_vertex(const CompatGraph& g, const Subspace& v) {
    const Orbit o = orbit_of(v, g.vertices.empty() ? 1 : g.vertices.front().m);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.vertices[i].rep == o.rep && g.vertices[i].m == o.m) return i;
    return std::nullopt;
}

inline CompatGraph induced_subgraph(const CompatGraph& g, const std::vector<std::size_t>& keep) {
    CompatGraph h = empty_graph(keep.size(), g.d);
    h.field = g.field;
    for (auto i : keep)
        if (!g.vertices.empty()) h.vertices.push_back(g.vertices[i]);
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b)
            if (g.edge(keep[a], keep[b])) h.add_edge(a, b);
    return h;
}

// -- cliques -----------------------------------------------------------------

enum class CliqueMode { Greedy, Exact };

struct CliqueOptions {
    CliqueMode mode = CliqueMode::Exact;
    std::uint64_t seed = 1;
    unsigned starts = 64;
    /// 0 = unlimited
    double max_seconds = 0;
    std::uint64_t max_nodes = 0;
    /// Maximize the number of words instead of the number of orbits.
    bool weighted = false;
};

struct CliqueResult {
    std::vector<std::size_t> vertices;
    std::uint64_t code_size = 0;
    bool certified = false;
    bool heuristic = false;
    std::uint64_t nodes = 0;

    std::size_t size() const noexcept { return vertices.size(); }
};

inline bool is_clique(const CompatGraph& g, const std::vector<std::size_t>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a) {
        if (vs[a] >= g.size()) return false;
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (vs[a] == vs[b] || !g.edge(vs[a], vs[b])) return false;
    }
    return true;
}

namespace detail {

class CliqueSearch {
public:
    CliqueSearch(const CompatGraph& g, const CliqueOptions& opt) : g_(g), opt_(opt) {
        const auto n = g.size();
        w_.resize(n);
        for (std::size_t i = 0; i < n; ++i) w_[i] = opt.weighted ? g.weight(i) : 1;
        words_ = bits::word_count(static_cast<std::uint32_t>(n));
        start_ = std::chrono::steady_clock::now();
    }

    std::vector<std::size_t> greedy() {
        const auto n = g_.size();
        std::vector<std::size_t> best;
        std::uint64_t best_w = 0;
        for (unsigned s = 0; s < std::max(1u, opt_.starts); ++s) {
            std::mt19937_64 rng(opt_.seed + s);
            std::vector<Word> cand(words_, 0);
            for (std::size_t i = 0; i < n; ++i) cand[i / 64] |= Word{1} << (i % 64);
            std::vector<std::size_t> cl;
            std::uint64_t cw = 0;
            bool first = s > 0;
            while (true) {
                std::vector<std::size_t> pool;
                std::uint32_t top = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(cand[i / 64] >> (i % 64) & 1)) continue;
                    if (first) {
                        pool.push_back(i);
                        continue;
                    }
                    const auto deg = bits::and_popcount(g_.adj[i], cand);
                    if (pool.empty() || deg > top) {
                        pool.assign(1, i);
                        top = deg;
                    } else if (deg == top) {
                        pool.push_back(i);
                    }
                }
                if (pool.empty()) break;
                const std::size_t v = (s == 0) ? pool.front() : pool[rng() % pool.size()];
                first = false;
                cl.push_back(v);
                cw += w_[v];
                for (std::size_t k = 0; k < words_; ++k) cand[k] &= g_.adj[v][k];
            }
            if (cw > best_w) {
                best_w = cw;
                best = cl;
            }
        }
        std::sort(best.begin(), best.end());
        return best;
    }

    /// Returns true when the search ran to completion.
    bool exact(std::vector<std::size_t> seed_clique) {
        best_ = std::move(seed_clique);
        best_w_ = 0;
        for (auto v : best_) best_w_ += w_[v];
        std::vector<Word> p(words_, 0);
        for (std::size_t i = 0; i < g_.size(); ++i) p[i / 64] |= Word{1} << (i % 64);
        std::vector<std::size_t> r;
        expand(r, 0, p);
        std::sort(best_.begin(), best_.end());
        return !stopped_;
    }

    const std::vector<std::size_t>& best() const { return best_; }
    std::uint64_t nodes() const { return nodes_; }

    /// Coloring bound over the whole graph.
    std::uint64_t upper_bound() const {
        std::vector<Word> p(words_, 0);
        for (std::size_t i = 0; i < g_.size(); ++i) p[i / 64] |= Word{1} << (i % 64);
        std::vector<std::size_t> order;
        std::vector<std::uint64_t> bound;
        color(p, order, bound);
        return bound.empty() ? 0 : bound.back();
    }

private:
    // Greedy coloring of p. order lists the vertices class by class, bound[i]
    // is the sum of the heaviest weight of every class up to that of order[i].
    void color(const std::vector<Word>& p, std::vector<std::size_t>& order, std::vector<std::uint64_t>& bound) const {
        std::vector<Word> left = p;
        std::uint64_t acc = 0;
        while (true) {
            bool any = false;
            for (auto x : left) any |= x != 0;
            if (!any) break;
            std::vector<Word> q = left;
            const std::size_t from = order.size();
            std::uint64_t heaviest = 0;
            for (std::size_t k = 0; k < words_; ++k) {
                while (q[k]) {
                    const std::size_t v = k * 64 + static_cast<std::size_t>(std::countr_zero(q[k]));
                    order.push_back(v);
                    heaviest = std::max(heaviest, w_[v]);
                    left[k] &= ~(Word{1} << (v % 64));
                    q[k] &= ~(Word{1} << (v % 64));
                    for (std::size_t t = k; t < words_; ++t) q[t] &= ~g_.adj[v][t];
                }
            }
            acc += heaviest;
            bound.resize(order.size(), acc);
            for (std::size_t i = from; i < order.size(); ++i) bound[i] = acc;
        }
    }

    bool out_of_budget() {
        if (stopped_) return true;
        if (opt_.max_nodes && nodes_ >= opt_.max_nodes) stopped_ = true;
        if (opt_.max_seconds > 0 && (nodes_ & 1023) == 0) {
            const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
            if (el.count() > opt_.max_seconds) stopped_ = true;
        }
        return stopped_;
    }

    void expand(std::vector<std::size_t>& r, std::uint64_t rw, std::vector<Word> p) {
        ++nodes_;
        if (out_of_budget()) return;
        std::vector<std::size_t> order;
        std::vector<std::uint64_t> bound;
        color(p, order, bound);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (rw + bound[i] <= best_w_) return;
            if (stopped_) return;
            const std::size_t v = order[i];
            r.push_back(v);
            std::vector<Word> np(words_);
            bool any = false;
            for (std::size_t k = 0; k < words_; ++k) {
                np[k] = p[k] & g_.adj[v][k];
                any |= np[k] != 0;
            }
            if (!any) {
                if (rw + w_[v] > best_w_) {
                    best_w_ = rw + w_[v];
                    best_ = r;
                }
            } else {
                expand(r, rw + w_[v], std::move(np));
            }
            r.pop_back();
            p[v / 64] &= ~(Word{1} << (v % 64));
        }
    }

    const CompatGraph& g_;
    CliqueOptions opt_;
    std::vector<std::uint64_t> w_;
    std::size_t words_ = 0;
    std::vector<std::size_t> best_;
    std::uint64_t best_w_ = 0;
    std::uint64_t nodes_ = 0;
    bool stopped_ = false;
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

/// Best clique found. Greedy results are certified only when they meet the
/// coloring bound of the whole graph.
inline std::vector<CliqueResult> find_cliques(const CompatGraph& g, const CliqueOptions& opt = {}) {
    if (g.size() == 0) return {};
    detail::CliqueSearch s(g, opt);
    CliqueResult r;
    auto start = s.greedy();
    if (opt.mode == CliqueMode::Greedy) {
        r.vertices = start;
        r.heuristic = true;
        std::uint64_t w = 0;
        for (auto v : start) w += opt.weighted ? g.weight(v) : 1;
        r.certified = w == s.upper_bound();
    } else {
        r.certified = s.exact(start);
        r.vertices = s.best();
        r.nodes = s.nodes();
    }
    if (!is_clique(g, r.vertices)) throw Error(Errc::VerificationFailed, "search returned a non-clique");
    for (auto v : r.vertices) r.code_size += g.weight(v);
    return {r};
}

/// Union of the clique's orbits, with the minimum distance recomputed by
/// rotation and compared with the threshold.
inline SubspaceCode assemble_code(const CompatGraph& g, const CliqueResult& c) {
    if (g.vertices.empty()) throw Error(Errc::InvalidArgument, "graph carries no orbit data");
    if (!is_clique(g, c.vertices)) throw Error(Errc::InvalidArgument, "vertex set is not a clique");
    std::vector<Orbit> orbits;
    for (auto v : c.vertices) orbits.push_back(g.vertices[v]);
    SubspaceCode code = SubspaceCode::from_orbits(g.field, std::move(orbits));
    if (code.size() >= 2) {
        const auto d = min_distance_by_rotation(code);
        if (d < g.d)
            throw Error(Errc::VerificationFailed,
                        "assembled code has distance " + std::to_string(d) + " below " + std::to_string(g.d));
    }
    return code;
}

// -- graph files -------------------------------------------------------------

/// DIMACS edge format. Comment lines carry the field and one line per orbit so
/// that the file can be read back with its orbits.
inline void write_dimacs(std::ostream& os, const CompatGraph& g) {
    os << "c subcodes compatibility graph, threshold d=" << g.d << "\n";
    if (g.field)
        os << "c field q=" << g.field->q() << " n=" << g.field->n() << " poly=" << format_poly(g.field->poly())
           << " coeffs=" << nlohmann::json(g.field->poly()).dump() << "\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& o = g.vertices[i];
        os << "c orbit " << i + 1 << " m=" << o.m << " k=" << o.k << " length=" << o.length << " d=" << o.min_dist
           << " parent=" << o.parent_length << " rep=" << format_exponents(o.rep.exponents()) << "\n";
    }
    os << "p edge " << g.size() << " " << g.edge_count() << "\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (g.edge(i, j)) os << "e " << i + 1 << " " << j + 1 << "\n";
}

inline CompatGraph read_dimacs(std::istream& in) {
    CompatGraph g;
    std::string line;
    std::size_t lineno = 0;
    bool have_p = false;
    std::map<std::size_t, Orbit> orbits;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t nv = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(Errc::ParseError, "graph line " + std::to_string(lineno) + ": " + msg);
    };
    auto field_value = [](const std::string& text, const std::string& key) -> std::optional<std::string> {
        const auto pos = text.find(" " + key + "=");
        if (pos == std::string::npos) return std::nullopt;
        const auto start = pos + key.size() + 2;
        const auto end = text.find(' ', start);
        return text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "c") {
            std::string what;
            ls >> what;
            if (what == "subcodes") {
                if (auto d = field_value(line, "d")) g.d = static_cast<std::uint32_t>(std::stoul(*d));
            } else if (what == "field") {
                const auto q = field_value(line, "q");
                const auto n = field_value(line, "n");
                const auto c = field_value(line, "coeffs");
                if (!q || !n || !c) fail("incomplete field line");
                try {
                    g.field = make_field(static_cast<std::uint32_t>(std::stoul(*q)),
                                         static_cast<std::uint32_t>(std::stoul(*n)),
                                         nlohmann::json::parse(*c).get<std::vector<std::uint32_t>>());
                } catch (const nlohmann::json::exception& e) {
                    fail(e.what());
                }
            } else if (what == "orbit") {
                if (!g.field) fail("orbit before field");
                std::size_t id = 0;
                ls >> id;
                const auto m = field_value(line, "m");
                const auto rep = field_value(line, "rep");
                if (!id || !m || !rep) fail("incomplete orbit line");
                orbits[id] = orbit_of(from_exponents(g.field, parse_exponent_list(*rep)),
                                      static_cast<std::uint32_t>(std::stoul(*m)));
            }
        } else if (tag == "p") {
            std::string kind;
            std::size_t ne = 0;
            ls >> kind >> nv >> ne;
            if (kind != "edge" && kind != "col") fail("expected 'p edge V E'");
            have_p = true;
        } else if (tag == "e") {
            if (!have_p) fail("edge before problem line");
            std::size_t a = 0, b = 0;
            if (!(ls >> a >> b) || a == 0 || b == 0 || a > nv || b > nv) fail("bad edge");
            if (a == b) fail("self-loop");
            edges.emplace_back(a - 1, b - 1);
        } else {
            fail("unknown line type '" + tag + "'");
        }
    }
    if (!have_p) throw Error(Errc::ParseError, "graph has no problem line");
    const auto d = g.d;
    const auto field = g.field;
    g = empty_graph(nv, d);
    g.field = field;
    if (!orbits.empty()) {
        if (orbits.size() != nv) throw Error(Errc::ParseError, "orbit comments do not cover every vertex");
        for (auto& [id, o] : orbits) g.vertices.push_back(std::move(o));
    }
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

inline nlohmann::json clique_json(const CompatGraph& g, const CliqueResult& c) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (auto v : c.vertices) j["vertices"].push_back(v + 1);
    j["orbits"] = c.vertices.size();
    j["code_size"] = c.code_size;
    j["certified"] = c.certified;
    j["heuristic"] = c.heuristic;
    j["nodes"] = c.nodes;
    if (!g.vertices.empty()) {
        j["m"] = g.vertices.front().m;
        j["generators"] = nlohmann::json::array();
        for (auto v : c.vertices) j["generators"].push_back(g.vertices[v].rep.exponents());
    }
    return j;
}

// -- self-dual codes ---------------------------------------------------------

struct SelfDualCode {
    std::uint32_t m = 1;
    SubspaceCode code;
    std::vector<std::uint32_t> dims;
    /// One orbit mapped to itself by the complement, or an orbit together
    /// with the orbit of its complements.
    bool orbit_level = false;
    /// m = q^n - 1: every word is its own orbit.
    bool trivial_modulus = false;

    bool constant_dimension() const { return dims.size() == 1; }
};

struct SelfDualModulus {
    std::uint32_t m = 1;
    std::uint64_t orbits = 0;
    std::uint64_t fixpoints = 0;
    std::uint64_t orbit_level = 0;
    std::uint64_t orbit_level_constant = 0;
};

struct SelfDualReport {
    FieldRef field;
    std::uint64_t subspaces = 0;
    std::vector<SelfDualModulus> moduli;
    /// Minimal fixpoints made of at most two orbits, for every m.
    std::vector<SelfDualCode> codes;

    /// Constant-dimension orbit-level codes under a proper modulus.
    std::vector<const SelfDualCode*> primary() const {
        std::vector<const SelfDualCode*> out;
        for (const auto& c : codes)
            if (c.orbit_level && !c.trivial_modulus && c.constant_dimension()) out.push_back(&c);
        return out;
    }
    std::vector<const SelfDualCode*> mixed() const {
        std::vector<const SelfDualCode*> out;
        for (const auto& c : codes)
            if (c.orbit_level && !c.trivial_modulus && !c.constant_dimension()) out.push_back(&c);
        return out;
    }
    /// Proper moduli with no orbit-level code (of constant dimension, when asked).
    std::vector<std::uint32_t> moduli_without_codes(bool constant_only) const {
        std::vector<std::uint32_t> out;
        for (const auto& md : moduli) {
            if (field && md.m == field->group_order()) continue;
            bool any = false;
            for (const auto& c : codes)
                if (c.m == md.m && c.orbit_level && (!constant_only || c.constant_dimension())) any = true;
            if (!any) out.push_back(md.m);
        }
        return out;
    }
};

namespace detail {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace detail

/// Every subspace of F_{q^n} with its complement. Under a modulus m the
/// complement relation links m-quasi orbits; each connected class of orbits is
/// closed under both the shift and the complement, hence a minimal self-dual
/// m-quasi-cyclic code, and every self-dual m-quasi-cyclic code is a union of
/// such classes.
inline SelfDualReport self_dual_search(const FieldRef& f, std::uint64_t max_subspaces = 2'000'000) {
    const std::uint32_t q = f->q(), n = f->n(), order = f->group_order();
    BigCount total = 0;
    for (std::uint32_t k = 0; k <= n; ++k) total += gaussian_coefficient(n, k, q);
    if (total > max_subspaces)
        throw Error(Errc::ResourceLimit, "P_q(n) has " + total.str() + " subspaces, above the limit of " +
                                             std::to_string(max_subspaces));

    SelfDualReport rep;
    rep.field = f;
    std::vector<Bitvec> subs;
    std::vector<std::uint32_t> dim;
    std::vector<Bitvec> perp_bits;
    const auto nvec = static_cast<VecIndex>(f->order());
    for (std::uint32_t k = 0; k <= n; ++k) {
        if (k == 0 || k == n) {
            Bitvec z(order), a(order);
            a.fill();
            subs.push_back(k == 0 ? z : a);
            perp_bits.push_back(k == 0 ? a : z);
            dim.push_back(k);
            continue;
        }
        RrefEnumerator en(q, n, k);
        en.run_all([&](std::span<const VecIndex> rows) {
            Bitvec b(order);
            for (VecIndex v : span_elements(*f, {rows.begin(), rows.end()}))
                if (v) b.set(f->log(v));
            Bitvec p(order);
            if (q == 2) {
                for (VecIndex x = 1; x < nvec; ++x) {
                    bool ok = true;
                    for (VecIndex r : rows)
                        if (std::popcount(static_cast<std::uint64_t>(x & r)) & 1) {
                            ok = false;
                            break;
                        }
                    if (ok) p.set(f->log(x));
                }
            } else {
                p = orthogonal_complement(Subspace::from_trusted(f, b, k)).bits();
            }
            subs.push_back(std::move(b));
            perp_bits.push_back(std::move(p));
            dim.push_back(k);
        });
    }
    rep.subspaces = subs.size();
    std::unordered_map<Bitvec, std::uint32_t, BitvecHash> index;
    index.reserve(subs.size() * 2);
    for (std::uint32_t i = 0; i < subs.size(); ++i) index.emplace(subs[i], i);
    std::vector<std::uint32_t> perp(subs.size());
    for (std::uint32_t i = 0; i < subs.size(); ++i) {
        auto it = index.find(perp_bits[i]);
        if (it == index.end() || dim[it->second] != n - dim[i])
            throw Error(Errc::VerificationFailed, "complement of a subspace was not found");
        perp[i] = it->second;
    }
    perp_bits.clear();

    for (std::uint32_t m = 1; m <= order; ++m) {
        if (order % m != 0) continue;
        SelfDualModulus md;
        md.m = m;
        std::vector<std::uint32_t> orbit_id(subs.size(), UINT32_MAX);
        std::vector<std::uint32_t> orbit_first;
        Bitvec cur(order);
        for (std::uint32_t s = 0; s < subs.size(); ++s) {
            if (orbit_id[s] != UINT32_MAX) continue;
            const auto id = static_cast<std::uint32_t>(orbit_first.size());
            orbit_first.push_back(s);
            orbit_id[s] = id;
            cur = subs[s];
            while (true) {
                cur = cur.rotated(m);
                const auto t = index.at(cur);
                if (t == s) break;
                orbit_id[t] = id;
            }
        }
        md.orbits = orbit_first.size();
        detail::UnionFind uf(orbit_first.size());
        for (std::uint32_t s = 0; s < subs.size(); ++s) uf.unite(orbit_id[s], orbit_id[perp[s]]);
        std::map<std::uint32_t, std::vector<std::uint32_t>> comps;
        for (std::uint32_t o = 0; o < orbit_first.size(); ++o) comps[uf.find(o)].push_back(o);
        md.fixpoints = comps.size();
        for (const auto& [root, members] : comps) {
            if (members.size() > 2) continue;
            ++md.orbit_level;
            SelfDualCode c;
            c.m = m;
            c.orbit_level = true;
            c.trivial_modulus = m == order;
            std::set<std::uint32_t> ds;
            for (auto o : members) ds.insert(dim[orbit_first[o]]);
            c.dims.assign(ds.begin(), ds.end());
            if (c.constant_dimension()) ++md.orbit_level_constant;
            if (c.trivial_modulus) continue;
            std::vector<Orbit> orbits;
            for (auto o : members) {
                const auto s = orbit_first[o];
                orbits.push_back(orbit_of(Subspace::from_trusted(f, subs[s], dim[s]), m));
            }
            std::sort(orbits.begin(), orbits.end(), [](const Orbit& a, const Orbit& b) { return a.rep < b.rep; });
            c.code = SubspaceCode::from_orbits(f, std::move(orbits));
            if (!is_self_dual(c.code) || !is_quasi_cyclic(c.code, m))
                throw Error(Errc::VerificationFailed, "closure class is not a self-dual quasi-cyclic code");
            rep.codes.push_back(std::move(c));
        }
        rep.moduli.push_back(md);
    }
    return rep;
}

} // namespace subcodes
