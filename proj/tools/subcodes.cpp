// subcodes: command-line front end.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "subcodes/codefile.hpp"
#include "subcodes/construct.hpp"
#include "subcodes/orbit_db.hpp"
#include "subcodes/reference.hpp"
#include "subcodes/render.hpp"

using namespace subcodes;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Usage = 2, Invalid = 3, Resource = 4, Mismatch = 5 };

constexpr std::uint64_t kExtendedThreshold = 500'000;

int exit_code(Errc e) {
    switch (e) {
        case Errc::ParseError:
        case Errc::InvalidArgument: return Usage;
        case Errc::ResourceLimit: return Resource;
        case Errc::VerificationFailed: return Mismatch;
        default: return Invalid;
    }
}

struct Common {
    std::uint32_t q = 2;
    std::string poly;
    unsigned workers = 1;
    double budget_sec = 0;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string db;
    bool extended = false;
    std::string out;
};

FieldRef field_from(const Common& c, std::uint32_t n) {
    if (c.poly.empty()) return make_default_field(c.q, n);
    return make_field(c.q, n, parse_poly(c.poly));
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(c.out);
    if (!os) throw Error(Errc::ParseError, "cannot write " + c.out);
    os << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
    for (auto a : allowed)
        if (c.format == a) return;
    throw Error(Errc::InvalidArgument, "format " + c.format + " is not available for this command");
}

// -- classify ----------------------------------------------------------------

int cmd_classify(const Common& c, std::uint32_t n, std::optional<std::uint32_t> k, std::uint32_t m,
                 const std::string& reference) {
    require_format(c, {"text", "json", "csv"});
    const auto f = field_from(c, n);
    require_modulus(*f, m);
    std::vector<std::uint32_t> ks;
    if (k) {
        if (*k > n) throw Error(Errc::InvalidArgument, "k exceeds n");
        ks.push_back(*k);
    } else {
        for (std::uint32_t i = 1; i < n; ++i) ks.push_back(i);
    }
    EnumOptions opt;
    opt.workers = c.workers;
    opt.max_seconds = c.budget_sec;
    opt.max_candidates = 0;
    for (auto kk : ks) {
        if (kk == 0 || kk == n) continue;
        const auto cand = gaussian_coefficient(n - 1, kk - 1, c.q);
        if (cand > kExtendedThreshold && !c.extended)
            throw Error(Errc::ResourceLimit, "k=" + std::to_string(kk) + " needs " + cand.str() +
                                                 " candidate subspaces; rerun with --extended");
    }

    CensusTable t = make_census(f, m);
    for (auto kk : ks) {
        const auto orbits = c.db.empty() ? enumerate_orbits(f, kk, m, opt) : enumerate_orbits_with_db(f, kk, m, c.db, opt);
        for (const auto& o : orbits) t.add(o);
        if (!t.mass_ok(kk))
            throw Error(Errc::VerificationFailed, "mass check failed for k=" + std::to_string(kk));
    }

    std::optional<CensusDiff> diff;
    std::string ref_path = reference;
#ifdef SUBCODES_DATA_DIR
    if (ref_path.empty()) ref_path = default_reference_path();
#endif
    if (!ref_path.empty() && ref_path != "none") diff = diff_census(t, load_reference(ref_path));

    if (c.format == "json") {
        json j = census_json(t);
        if (diff) j["diff"] = diff_json(*diff);
        emit(c, dump(j));
    } else if (c.format == "csv") {
        emit(c, render_census_csv(t));
    } else {
        std::string s = render_census_text(t);
        if (diff) s += "\ncomparison with published tables\n" + render_diff_text(*diff);
        emit(c, s);
    }
    return (diff && !diff->consistent()) ? Mismatch : Ok;
}

// -- verify / dualize --------------------------------------------------------

int cmd_verify(const Common& c, const std::string& path) {
    require_format(c, {"text", "json"});
    const auto r = verify_code_file(path, c.workers);
    emit(c, c.format == "json" ? dump(verify_json(r)) : render_verify_text(r));
    return r.claims_match() ? Ok : Mismatch;
}

CodeFile describe(const SubspaceCode& code, unsigned workers) {
    const std::uint32_t m = smallest_quasi_modulus(code);
    const auto orbits = *orbit_decomposition(code, m);
    return code_file_from_orbits(code.field(), m, orbits, params(code, workers));
}

int cmd_dualize(const Common& c, const std::string& path) {
    const auto dual = dualize(code_of(read_code_file(path)));
    CodeFile cf = describe(dual, c.workers);
    cf.note = "complements of the words of " + path + "; generators are orbit representatives under m=" +
              std::to_string(cf.m);
    emit(c, dump(code_file_json(cf)));
    return Ok;
}

// -- bound / spread ----------------------------------------------------------

int cmd_bound(const Common& c, std::uint32_t n, std::uint32_t d, std::uint32_t k) {
    const auto b = etzion_vardy_bound(n, d, k, c.q);
    if (c.format == "json") emit(c, dump(json{{"n", n}, {"d", d}, {"k", k}, {"q", c.q}, {"bound", b.str()}}));
    else emit(c, b.str() + "\n");
    return Ok;
}

int cmd_spread(const Common& c, std::uint32_t n, std::uint32_t t) {
    const auto f = field_from(c, n);
    const auto code = spread_code(f, t);
    CodeFile cf = code_file_from_orbits(f, 1, code.orbits(), params(code));
    cf.note = "spread of " + std::to_string(t) + "-subspaces: the orbit of the subfield of order " +
              std::to_string(ipow(c.q, t));
    emit(c, dump(code_file_json(cf)));
    return Ok;
}

// -- graph / clique ----------------------------------------------------------

int cmd_graph(const Common& c, std::uint32_t d, std::optional<std::uint32_t> n, std::optional<std::uint32_t> k,
              std::uint32_t m) {
    std::vector<Orbit> orbits;
    if (!c.db.empty() && std::filesystem::exists(c.db) && !n) {
        const auto db = load_orbit_db(c.db);
        for (const auto& s : db.sections) {
            if (!s.complete || (k && s.k != *k) || s.m != m) continue;
            auto os = s.orbits();
            orbits.insert(orbits.end(), os.begin(), os.end());
        }
    } else {
        if (!n || !k) throw Error(Errc::InvalidArgument, "graph needs --db with finished orbits, or --n and --k");
        const auto f = field_from(c, *n);
        EnumOptions opt;
        opt.workers = c.workers;
        opt.max_candidates = c.extended ? 0 : kExtendedThreshold;
        opt.max_seconds = c.budget_sec;
        orbits = c.db.empty() ? enumerate_orbits(f, *k, m, opt) : enumerate_orbits_with_db(f, *k, m, c.db, opt);
    }
    if (orbits.empty()) throw Error(Errc::InvalidArgument, "no orbits to build a graph from");
    const auto g = build_graph(orbits, d, c.workers);
    std::ostringstream os;
    write_dimacs(os, g);
    emit(c, os.str());
    std::cerr << "graph: " << g.size() << " vertices, " << g.edge_count() << " edges, " << g.excluded.size()
              << " orbits excluded (internal distance below " << d << ")\n";
    return Ok;
}

int cmd_clique(const Common& c, const std::string& path, const std::string& mode, unsigned starts,
               std::uint64_t max_nodes, bool weighted, const std::string& code_out) {
    require_format(c, {"text", "json"});
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    const auto g = read_dimacs(in);
    CliqueOptions opt;
    if (mode == "greedy") opt.mode = CliqueMode::Greedy;
    else if (mode == "exact") opt.mode = CliqueMode::Exact;
    else throw Error(Errc::InvalidArgument, "mode must be greedy or exact");
    opt.seed = c.seed;
    opt.starts = starts;
    opt.max_seconds = c.budget_sec;
    opt.max_nodes = max_nodes;
    opt.weighted = weighted;
    const auto results = find_cliques(g, opt);
    if (results.empty()) throw Error(Errc::TooSmall, "graph has no vertices");
    const auto& r = results.front();

    std::optional<SubspaceCode> code;
    if (!g.vertices.empty()) code = assemble_code(g, r);
    if (code && !code_out.empty()) {
        CodeFile cf = code_file_from_orbits(g.field, g.vertices.front().m, code->orbits(), params(*code, c.workers));
        std::ofstream os(code_out);
        if (!os) throw Error(Errc::ParseError, "cannot write " + code_out);
        os << dump(code_file_json(cf));
    }

    if (c.format == "json") {
        json j = clique_json(g, r);
        if (code) j["params"] = params(*code, c.workers).to_string();
        emit(c, dump(j));
    } else {
        std::ostringstream os;
        os << "clique: " << r.size() << " orbits, " << r.code_size << " words, "
           << (r.certified ? "certified maximum" : (r.heuristic ? "heuristic" : "budget exhausted, best so far"))
           << "\n";
        if (!r.heuristic) os << "search nodes: " << r.nodes << "\n";
        os << "vertices:";
        for (auto v : r.vertices) os << " " << v + 1;
        os << "\n";
        if (code) {
            for (auto v : r.vertices)
                os << "  " << format_exponents(g.vertices[v].rep.exponents()) << "  length " << g.vertices[v].length
                   << "\n";
            os << "code: " << params(*code, c.workers).to_string() << "\n";
        }
        emit(c, os.str());
    }
    return Ok;
}

// -- self-dual / conjecture --------------------------------------------------

json self_dual_code_json(const SelfDualCode& s) {
    json j{{"m", s.m}, {"params", params(s.code).to_string()}, {"dims", s.dims}, {"orbits", s.code.orbits().size()}};
    j["generators"] = json::array();
    for (const auto& o : s.code.orbits()) j["generators"].push_back(o.rep.exponents());
    return j;
}

int cmd_selfdual(const Common& c, std::uint32_t n) {
    require_format(c, {"text", "json"});
    const auto f = field_from(c, n);
    const auto r = self_dual_search(f);
    const auto primary = r.primary();
    const auto mixed = r.mixed();
    if (c.format == "json") {
        json j;
        j["field"] = {{"q", f->q()}, {"n", n}, {"poly", f->poly()}};
        j["subspaces"] = r.subspaces;
        j["moduli"] = json::array();
        for (const auto& md : r.moduli)
            j["moduli"].push_back({{"m", md.m},
                                   {"orbits", md.orbits},
                                   {"closed_classes", md.fixpoints},
                                   {"orbit_level", md.orbit_level},
                                   {"orbit_level_constant_dimension", md.orbit_level_constant}});
        j["codes"] = json::array();
        for (auto* s : primary) j["codes"].push_back(self_dual_code_json(*s));
        j["mixed_dimension"] = json::array();
        for (auto* s : mixed) j["mixed_dimension"].push_back(self_dual_code_json(*s));
        j["moduli_without_orbit_codes"] = r.moduli_without_codes(false);
        j["moduli_without_constant_dimension_codes"] = r.moduli_without_codes(true);
        emit(c, dump(j));
        return Ok;
    }
    std::ostringstream os;
    os << "field q=" << f->q() << " n=" << n << " poly=" << format_poly(f->poly()) << ", " << r.subspaces
       << " subspaces\n\n";
    os << "      m   orbits   closed classes   of 1-2 orbits   constant dim\n";
    for (const auto& md : r.moduli)
        os << std::setw(7) << md.m << std::setw(9) << md.orbits << std::setw(17) << md.fixpoints << std::setw(16)
           << md.orbit_level << std::setw(15) << md.orbit_level_constant
           << (md.m == f->group_order() ? "   (every word is its own orbit)" : "") << "\n";
    os << "\nself-dual quasi-cyclic orbit codes of constant dimension: " << primary.size() << "\n";
    for (auto* s : primary) {
        os << "  m=" << s->m << "  " << params(s->code).to_string() << "  generators";
        for (const auto& o : s->code.orbits()) os << " " << format_exponents(o.rep.exponents());
        os << "\n";
    }
    os << "mixed-dimension ones: " << mixed.size() << "\n";
    for (auto* s : mixed) {
        os << "  m=" << s->m << "  " << params(s->code).to_string() << "  dims";
        for (auto d : s->dims) os << " " << d;
        os << "\n";
    }
    auto list = [&](const char* what, const std::vector<std::uint32_t>& ms) {
        os << what;
        for (auto m : ms) os << " " << m;
        os << (ms.empty() ? " -" : "") << "\n";
    };
    list("moduli without any:", r.moduli_without_codes(false));
    list("moduli without constant-dimension ones:", r.moduli_without_codes(true));
    emit(c, os.str());
    return Ok;
}

int cmd_conjecture(const Common& c, std::uint32_t n, std::uint32_t k) {
    require_format(c, {"text", "json"});
    const auto f = field_from(c, n);
    if (k > 0 && k < n) {
        const auto cand = gaussian_coefficient(n - 1, k - 1, c.q);
        if (cand > kExtendedThreshold && !c.extended)
            throw Error(Errc::ResourceLimit, "needs " + cand.str() + " candidate subspaces; rerun with --extended");
    }
    EnumOptions opt;
    opt.workers = c.workers;
    opt.max_candidates = 0;
    opt.max_seconds = c.budget_sec;
    const auto v = conjecture_check(f, k, opt);
    if (c.format == "json") {
        json j{{"n", n},
               {"k", k},
               {"applicable", v.applicable},
               {"required_distance", v.required_distance},
               {"full_length_orbits", v.full_length_orbits},
               {"witnesses", v.witnesses},
               {"satisfied", v.satisfied()}};
        if (v.full_length_orbits) j["best_full_length_distance"] = v.best_full_length_distance;
        if (v.witness) j["witness"] = v.witness->exponents();
        emit(c, dump(j));
    } else {
        std::ostringstream os;
        if (!v.applicable) os << "note: outside the statement's range 2k < n\n";
        os << "full-length orbits of " << k << "-subspaces in F_" << c.q << "^" << n << ": " << v.full_length_orbits
           << "\n";
        os << "with distance >= " << v.required_distance << ": " << v.witnesses << "\n";
        if (v.full_length_orbits) os << "best distance among them: " << v.best_full_length_distance << "\n";
        if (v.witness) os << "witness: " << format_exponents(v.witness->exponents()) << "\n";
        os << (v.satisfied() ? "holds" : "fails") << " for n=" << n << ", k=" << k << "\n";
        emit(c, os.str());
    }
    return Ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclic and quasi-cyclic subspace codes over finite fields"};
    app.require_subcommand(1);
    Common c;
    c.workers = std::max(1u, std::thread::hardware_concurrency());
    auto common = [&](CLI::App* sub) {
        sub->add_option("--q", c.q, "field characteristic")->capture_default_str();
        sub->add_option("--poly", c.poly, "primitive polynomial, e.g. x^8+x^4+x^3+x^2+1 or 1,0,1,1,1,0,0,0,1");
        sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--budget-sec", c.budget_sec, "wall-clock budget in seconds")->check(CLI::PositiveNumber);
        sub->add_option("--format", c.format, "text, json or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
        sub->add_option("-o,--out", c.out, "write the result to a file");
    };

    std::uint32_t n = 0, k = 0, m = 1, d = 0, t = 0;
    std::string file, reference, mode = "exact", code_out;
    unsigned starts = 64;
    std::uint64_t max_nodes = 0;
    bool weighted = false;

    auto* classify = app.add_subcommand("classify", "census of cyclic or m-quasi orbits");
    common(classify);
    classify->add_option("n,--n", n, "field degree")->required();
    auto* classify_k = classify->add_option("k,--k", k, "subspace dimension (default: every 1..n-1)");
    classify->add_option("m,--m", m, "shift modulus, a divisor of q^n-1")->capture_default_str();
    classify->add_option("--db", c.db, "orbit database for checkpoint and resume");
    classify->add_flag("--extended", c.extended, "allow runs over 500000 candidate subspaces");
    classify->add_option("--reference", reference, "published tables to compare with, or 'none'");

    auto* verify = app.add_subcommand("verify", "recompute the parameters of a code file");
    common(verify);
    verify->add_option("file", file, "code file")->required()->check(CLI::ExistingFile);

    auto* dual = app.add_subcommand("dualize", "code file of the complements");
    common(dual);
    dual->add_option("file", file, "code file")->required()->check(CLI::ExistingFile);

    auto* bound = app.add_subcommand("bound", "upper bound on A_q(n,d,k)");
    common(bound);
    bound->add_option("n,--n", n)->required();
    bound->add_option("d,--d", d)->required();
    bound->add_option("k,--k", k)->required();
    bound->add_option("field_size", c.q, "field size q (same as --q)");

    auto* spread = app.add_subcommand("spread", "spread code of t-subspaces");
    common(spread);
    spread->add_option("n,--n", n)->required();
    spread->add_option("t,--t", t)->required();
    spread->add_option("field_size", c.q, "field size q (same as --q)");

    auto* graph = app.add_subcommand("graph", "orbit compatibility graph in DIMACS form");
    common(graph);
    std::optional<std::uint32_t> gn, gk;
    graph->add_option("--d", d, "distance threshold")->required();
    graph->add_option("--db", c.db, "orbit database to read (or to fill when --n and --k are given)");
    graph->add_option("--n", gn);
    graph->add_option("--k", gk);
    graph->add_option("--m", m)->capture_default_str();
    graph->add_flag("--extended", c.extended, "allow runs over 500000 candidate subspaces");

    auto* clique = app.add_subcommand("clique", "largest clique of a graph file");
    common(clique);
    clique->add_option("graph", file, "DIMACS graph")->required()->check(CLI::ExistingFile);
    clique->add_option("--mode", mode, "greedy or exact")->check(CLI::IsMember({"greedy", "exact"}))->capture_default_str();
    clique->add_option("--seed", c.seed)->capture_default_str();
    clique->add_option("--starts", starts, "greedy restarts")->check(CLI::PositiveNumber)->capture_default_str();
    clique->add_option("--max-nodes", max_nodes, "node budget for exact search");
    clique->add_flag("--weighted", weighted, "maximize words rather than orbits");
    clique->add_option("--code-out", code_out, "write the assembled code file");

    auto* selfdual = app.add_subcommand("selfdual", "self-dual quasi-cyclic codes in P_q(n)");
    common(selfdual);
    selfdual->add_option("n,--n", n)->required();
    selfdual->add_option("field_size", c.q, "field size q (same as --q)");

    auto* conj = app.add_subcommand("conjecture-check", "is there a full-length orbit with distance 2k-2");
    common(conj);
    conj->add_option("n,--n", n)->required();
    conj->add_option("k,--k", k)->required();
    conj->add_flag("--extended", c.extended, "allow runs over 500000 candidate subspaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        if (*classify) return cmd_classify(c, n, *classify_k ? std::optional(k) : std::nullopt, m, reference);
        if (*verify) return cmd_verify(c, file);
        if (*dual) return cmd_dualize(c, file);
        if (*bound) return cmd_bound(c, n, d, k);
        if (*spread) return cmd_spread(c, n, t);
        if (*graph) return cmd_graph(c, d, gn, gk, m);
        if (*clique) return cmd_clique(c, file, mode, starts, max_nodes, weighted, code_out);
        if (*selfdual) return cmd_selfdual(c, n);
        if (*conj) return cmd_conjecture(c, n, k);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Invalid;
    }
    return Usage;
}
