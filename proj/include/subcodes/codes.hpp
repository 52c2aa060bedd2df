#pragma once

// Subspace codes: finite sets of subspaces of F_q^n, possibly of mixed
// dimension. Codes built from orbits keep their orbit list so that distances
// can be taken between representatives only.

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "subcodes/gaussian.hpp"
#include "subcodes/orbits.hpp"
#include "subcodes/subspace.hpp"

namespace subcodes {

class SubspaceCode {
public:
    SubspaceCode() = default;

    /// Duplicate words are dropped.
    static SubspaceCode from_words(FieldRef f, std::vector<Subspace> words) {
        SubspaceCode c;
        c.field_ = std::move(f);
        for (const auto& w : words)
            if (w.field() != c.field_ && !w.field()->same_as(*c.field_))
                throw Error(Errc::FieldMismatch, "word from a different field");
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        c.words_ = std::move(words);
        return c;
    }

    /// Orbits must be pairwise distinct.
    static SubspaceCode from_orbits(FieldRef f, std::vector<Orbit> orbits) {
        std::vector<Subspace> words;
        for (const auto& o : orbits)
            for (auto& w : orbit_members(o)) words.push_back(std::move(w));
        SubspaceCode c = from_words(std::move(f), std::move(words));
        c.orbits_ = std::move(orbits);
        return c;
    }

    const FieldRef& field() const noexcept { return field_; }
    const std::vector<Subspace>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::vector<Orbit>& orbits() const noexcept { return orbits_; }
    bool orbit_based() const noexcept { return !orbits_.empty(); }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

    bool contains(const Subspace& v) const { return std::binary_search(words_.begin(), words_.end(), v); }

    /// Common dimension of all words, if there is one.
    std::optional<std::uint32_t> dimension() const {
        if (words_.empty()) return std::nullopt;
        const auto k = words_.front().dim();
        for (const auto& w : words_)
            if (w.dim() != k) return std::nullopt;
        return k;
    }

    bool same_words(const SubspaceCode& o) const { return words_ == o.words_; }

private:
    FieldRef field_;
    std::vector<Subspace> words_;
    std::vector<Orbit> orbits_;
    std::vector<std::string> warnings_;
};

// -- construction ------------------------------------------------------------

/// Union of the m-quasi orbits of the generators. A generator whose orbit was
/// already produced is skipped with a warning.
inline SubspaceCode code_from_generators(const FieldRef& f, std::uint32_t m, const std::vector<Subspace>& gens) {
    require_modulus(*f, m);
    std::vector<Orbit> orbits;
    std::vector<std::string> warnings;
    std::vector<std::size_t> source;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Orbit o = orbit_of(gens[i], m);
        auto it = std::find_if(orbits.begin(), orbits.end(), [&](const Orbit& x) { return x.rep == o.rep; });
        if (it != orbits.end()) {
            const auto j = source[static_cast<std::size_t>(it - orbits.begin())];
            warnings.push_back("generator " + std::to_string(i + 1) + " lies in the orbit of generator " +
                               std::to_string(j + 1) + (gens[i] == gens[j] ? " (identical row)" : "") +
                               "; skipped");
            continue;
        }
        orbits.push_back(std::move(o));
        source.push_back(i);
    }
    SubspaceCode c = SubspaceCode::from_orbits(f, std::move(orbits));
    for (auto& w : warnings) c.add_warning(std::move(w));
    return c;
}

/// The orbit of the subfield F_{q^t}, checked to be a spread.
inline SubspaceCode spread_code(const FieldRef& f, std::uint32_t t) {
    const std::uint32_t n = f->n();
    if (t == 0 || n % t != 0)
        throw Error(Errc::NotADivisor, std::to_string(t) + " does not divide " + std::to_string(n));
    const std::uint32_t order = f->group_order();
    const auto step = static_cast<std::uint32_t>(order / (ipow(f->q(), t) - 1));
    Bitvec b(order);
    for (std::uint32_t e = 0; e < order; e += step) b.set(e);
    const Subspace sub = Subspace::from_trusted(f, std::move(b), t);
    SubspaceCode c = SubspaceCode::from_orbits(f, {orbit_of(sub, 1)});

    Bitvec cover(order);
    std::uint64_t total = 0;
    for (const auto& w : c.words()) {
        if (bits::and_popcount(cover.words(), w.bits().words()) != 0)
            throw Error(Errc::VerificationFailed, "spread members intersect");
        cover = cover | w.bits();
        total += w.bits().count();
    }
    if (total != order || cover.count() != order)
        throw Error(Errc::VerificationFailed, "spread does not cover every nonzero vector once");
    return c;
}

// -- distance ----------------------------------------------------------------

inline std::uint32_t min_distance_all_pairs(const SubspaceCode& c) {
    if (c.size() < 2) throw Error(Errc::TooSmall, "minimum distance needs at least two words");
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    const auto& w = c.words();
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) best = std::min(best, distance(w[i], w[j]));
    return best;
}

/// Exact minimum distance. Orbit-built codes use one representative per
/// orbit; the pair loop is split across workers.
inline std::uint32_t min_distance(const SubspaceCode& c, unsigned workers = 1) {
    if (c.size() < 2) throw Error(Errc::TooSmall, "minimum distance needs at least two words");
    if (!c.orbit_based()) return min_distance_all_pairs(c);
    const auto& orbits = c.orbits();
    std::atomic<std::uint32_t> best{std::numeric_limits<std::uint32_t>::max()};
    auto lower = [&](std::uint32_t d) {
        std::uint32_t cur = best.load();
        while (d < cur && !best.compare_exchange_weak(cur, d)) {
        }
    };
    for (const auto& o : orbits)
        if (o.length > 1) lower(o.min_dist);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < orbits.size(); i = next.fetch_add(1))
            for (std::size_t j = i + 1; j < orbits.size(); ++j) lower(inter_orbit_distance(orbits[i], orbits[j]));
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return best.load();
}

/// Orbit-based minimum distance computed by rotating characteristic vectors,
/// kept separate from the difference-count path used by min_distance.
inline std::uint32_t min_distance_by_rotation(const SubspaceCode& c) {
    if (c.size() < 2) throw Error(Errc::TooSmall, "minimum distance needs at least two words");
    if (!c.orbit_based()) return min_distance_all_pairs(c);
    const auto& orbits = c.orbits();
    const std::uint32_t order = c.field()->group_order();
    const std::uint32_t q = c.field()->q();
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    Bitvec cur(order);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        for (std::size_t j = i; j < orbits.size(); ++j) {
            const auto& a = orbits[i];
            const auto& b = orbits[j];
            const std::uint32_t step = std::gcd(a.m, b.m);
            for (std::uint32_t s = 0; s < order; s += step) {
                bits::rotate(b.rep.bits().words(), cur.words(), order, s);
                if (i == j && cur == a.rep.bits()) continue;
                const auto common = bits::and_popcount(a.rep.bits().words(), cur.words());
                const auto dim = static_cast<std::uint32_t>(dimension_from_count(q, common));
                best = std::min(best, a.k + b.k - 2 * dim);
            }
        }
    }
    return best;
}

// -- parameters --------------------------------------------------------------

struct CodeParams {
    std::uint32_t n = 0;
    std::optional<std::uint32_t> k;  // set for constant-dimension codes
    std::uint64_t size = 0;
    std::optional<std::uint32_t> d;  // absent for codes with fewer than two words

    std::string to_string() const {
        std::string s = "[" + std::to_string(n) + ",";
        if (k) s += std::to_string(*k) + ",";
        s += std::to_string(size) + ",";
        s += d ? std::to_string(*d) : std::string("-");
        return s + "]";
    }
    bool operator==(const CodeParams&) const = default;
};

inline CodeParams params(const SubspaceCode& c, unsigned workers = 1) {
    CodeParams p;
    p.n = c.field()->n();
    p.k = c.dimension();
    p.size = c.size();
    if (c.size() >= 2) p.d = min_distance(c, workers);
    return p;
}

// -- duality and symmetry ----------------------------------------------------

inline SubspaceCode dualize(const SubspaceCode& c) {
    std::vector<Subspace> words;
    words.reserve(c.size());
    for (const auto& w : c.words()) words.push_back(orthogonal_complement(w));
    return SubspaceCode::from_words(c.field(), std::move(words));
}

inline bool is_quasi_cyclic(const SubspaceCode& c, std::uint32_t m) {
    require_modulus(*c.field(), m);
    for (const auto& w : c.words())
        if (!c.contains(shift(w, m))) return false;
    return true;
}

inline bool is_self_dual(const SubspaceCode& c) { return dualize(c).same_words(c); }

/// Splits an m-quasi-cyclic code into its m-quasi orbits, sorted by
/// representative; nullopt when the code is not closed under the shift.
inline std::optional<std::vector<Orbit>> orbit_decomposition(const SubspaceCode& c, std::uint32_t m) {
    if (!is_quasi_cyclic(c, m)) return std::nullopt;
    std::vector<Orbit> out;
    const auto& words = c.words();
    std::vector<bool> covered(words.size(), false);
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (covered[i]) continue;
        Orbit o = orbit_of(words[i], m);
        for (const auto& w : orbit_members(o))
            covered[static_cast<std::size_t>(std::lower_bound(words.begin(), words.end(), w) - words.begin())] = true;
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) { return a.rep < b.rep; });
    return out;
}

/// Smallest m | q^n - 1 for which the code is m-quasi cyclic.
inline std::uint32_t smallest_quasi_modulus(const SubspaceCode& c) {
    const std::uint32_t order = c.field()->group_order();
    for (std::uint32_t m = 1; m <= order; ++m)
        if (order % m == 0 && is_quasi_cyclic(c, m)) return m;
    return order;
}

/// Re-expresses a code by its orbits under the smallest modulus it admits.
inline SubspaceCode with_orbit_structure(const SubspaceCode& c) {
    const std::uint32_t m = smallest_quasi_modulus(c);
    SubspaceCode out = SubspaceCode::from_orbits(c.field(), *orbit_decomposition(c, m));
    for (const auto& w : c.warnings()) out.add_warning(w);
    return out;
}

} // namespace subcodes
