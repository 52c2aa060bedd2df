#pragma once

// Cyclic and m-quasi-cyclic orbits of subspaces under V -> gamma^m V.
//
// Enumeration only visits subspaces that contain gamma^0: the minimal
// rotation of any characteristic vector has bit 0 set, so every cyclic orbit
// is found exactly once, at its canonical representative. An m-quasi orbit
// census is derived from the cyclic one: a cyclic orbit of length L splits
// into gcd(m, L) quasi orbits of length L / gcd(m, L).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "subcodes/bitvec.hpp"
#include "subcodes/enumerate.hpp"
#include "subcodes/gaussian.hpp"
#include "subcodes/gfext.hpp"
#include "subcodes/subspace.hpp"

namespace subcodes {

struct Orbit {
    FieldRef field;
    std::uint32_t m = 1;
    Subspace rep;
    std::uint32_t length = 1;
    std::uint32_t k = 0;
    std::uint32_t min_dist = 0;
    std::uint32_t stab_degree = 0;
    /// Length of the cyclic (m = 1) orbit containing this one.
    std::uint32_t parent_length = 1;

    bool operator==(const Orbit& o) const {
        return m == o.m && rep == o.rep && length == o.length && min_dist == o.min_dist;
    }
};

// -- length laws -------------------------------------------------------------

/// (q^n - 1) / (q^t - 1) / gcd(m, .): the size of an m-quasi orbit whose
/// stabilizer is the multiplicative group of F_{q^t}.
inline std::uint64_t quasi_orbit_length(std::uint32_t q, std::uint32_t n, std::uint32_t t, std::uint64_t m) {
    const std::uint64_t d = (ipow(q, n) - 1) / (ipow(q, t) - 1);
    return d / std::gcd(m, d);
}

/// The same size computed as ((q^n - 1) / (q^t - 1)) / m, which is only an
/// integer when m divides the cyclic orbit length. Kept to expose where the
/// two disagree.
inline std::optional<std::uint64_t> quasi_orbit_length_by_division(std::uint32_t q, std::uint32_t n,
                                                                   std::uint32_t t, std::uint64_t m) {
    const std::uint64_t d = (ipow(q, n) - 1) / (ipow(q, t) - 1);
    if (d % m != 0) return std::nullopt;
    return d / m;
}

/// Length of a full-length m-quasi orbit.
inline std::uint32_t full_orbit_length(const FieldSpec& f, std::uint32_t m) {
    return static_cast<std::uint32_t>(quasi_orbit_length(f.q(), f.n(), 1, m));
}

// -- single-orbit operations -------------------------------------------------

/// Smallest l >= 1 with gamma^{l m} V = V.
inline std::uint32_t orbit_length(const Subspace& v, std::uint32_t m) {
    const auto& f = *v.field();
    require_modulus(f, m);
    const std::uint32_t order = f.group_order();
    const std::uint32_t steps = order / m;
    Bitvec cur(order);
    for (std::uint32_t l = 1; l < steps; ++l) {
        if (steps % l != 0) continue;
        bits::rotate(v.bits().words(), cur.words(), order, l * m);
        if (cur == v.bits()) return l;
    }
    return steps;
}

/// Largest t dividing n such that gamma^{(q^n-1)/(q^t-1)} fixes V.
inline std::uint32_t stabilizer_degree(const Subspace& v) {
    const auto& f = *v.field();
    const std::uint32_t n = f.n();
    for (std::uint32_t t = n; t >= 1; --t) {
        if (n % t != 0) continue;
        const std::uint64_t step = (ipow(f.q(), n) - 1) / (ipow(f.q(), t) - 1);
        if (v.bits().rotated(static_cast<std::uint32_t>(step)) == v.bits()) return t;
    }
    return 1;
}

/// min over 0 < j < count of d(V, gamma^{j step} V), or 0 when count == 1.
/// Uses d(V, gamma^a V) = d(V, gamma^{-a} V) to scan only half the shifts.
inline std::uint32_t min_shift_distance(const Bitvec& v, std::uint32_t k, std::uint32_t q, std::uint32_t step,
                                        std::uint32_t count) {
    if (count <= 1) return 0;
    const std::uint32_t order = v.size();
    Bitvec cur(order);
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    const std::uint32_t floor_common = static_cast<std::uint32_t>(ipow(q, k == 0 ? 0 : k - 1) - 1);
    for (std::uint32_t j = 1; j <= count / 2; ++j) {
        bits::rotate(v.words(), cur.words(), order, static_cast<std::uint32_t>((std::uint64_t{j} * step) % order));
        const std::uint32_t common = bits::and_popcount(v.words(), cur.words());
        const int dim = dimension_from_count(q, common);
        best = std::min(best, 2 * k - 2 * static_cast<std::uint32_t>(dim));
        if (common == floor_common) break;  // distance 2 is the floor for distinct members
    }
    return best;
}

inline std::uint32_t orbit_min_distance(const Orbit& o) {
    return min_shift_distance(o.rep.bits(), o.k, o.field->q(), o.m, o.length);
}

inline Orbit orbit_of(const Subspace& v, std::uint32_t m) {
    require_modulus(*v.field(), m);
    Orbit o;
    o.field = v.field();
    o.m = m;
    o.k = v.dim();
    o.rep = canonical_rotation(v, m).rep;
    o.length = orbit_length(v, m);
    o.parent_length = orbit_length(v, 1);
    o.stab_degree = (v.dim() == 0) ? v.field()->n() : stabilizer_degree(v);
    o.min_dist = orbit_min_distance(o);
    return o;
}

/// Every member gamma^{j m} rep of the orbit, j = 0 .. length-1.
inline std::vector<Subspace> orbit_members(const Orbit& o) {
    std::vector<Subspace> out;
    out.reserve(o.length);
    for (std::uint32_t j = 0; j < o.length; ++j) out.push_back(shift(o.rep, std::uint64_t{j} * o.m));
    return out;
}

/// Largest |A cap gamma^j B| over j in multiples of step, j != 0 when
/// skip_zero. Counts exponent differences instead of rotating vectors. Stops
/// early once the count reaches stop_at.
inline std::uint32_t max_shift_overlap(const std::vector<Exponent>& a, const std::vector<Exponent>& b,
                                       std::uint32_t order, std::uint32_t step, bool skip_zero,
                                       std::uint32_t stop_at = std::numeric_limits<std::uint32_t>::max()) {
    thread_local std::vector<std::uint32_t> hist;
    thread_local std::vector<std::uint32_t> touched;
    if (hist.size() < order) hist.assign(order, 0);
    touched.clear();
    std::uint32_t best = 0;
    for (Exponent x : a) {
        for (Exponent y : b) {
            const std::uint32_t j = x >= y ? x - y : x + order - y;
            if (j % step != 0 || (skip_zero && j == 0)) continue;
            if (hist[j]++ == 0) touched.push_back(j);
            best = std::max(best, hist[j]);
            if (best >= stop_at) goto done;
        }
    }
done:
    for (auto j : touched) hist[j] = 0;
    return best;
}

/// min over all member pairs of d(gamma^{a m_A} A, gamma^{b m_B} B); the
/// offsets b m_B - a m_A run over the multiples of gcd(m_A, m_B).
inline std::uint32_t inter_orbit_distance(const Orbit& a, const Orbit& b) {
    require_same_field(a.rep, b.rep);
    const std::uint32_t order = a.field->group_order();
    const std::uint32_t step = std::gcd(a.m, b.m);
    const std::uint32_t common = max_shift_overlap(a.rep.exponents(), b.rep.exponents(), order, step, false);
    const auto dim = static_cast<std::uint32_t>(dimension_from_count(a.field->q(), common));
    const std::uint32_t d = a.k + b.k - 2 * dim;
    if (d == 0) throw Error(Errc::SameOrbit, "orbits share a subspace");
    return d;
}

// -- enumeration -------------------------------------------------------------

struct EnumOptions {
    unsigned workers = 1;
    /// Budget on candidate subspaces ([n-1, k-1]_q of them); 0 = unlimited.
    std::uint64_t max_candidates = 1'000'000;
    /// Wall-clock budget in seconds; 0 = unlimited. Checked between work units.
    double max_seconds = 0;
    /// Units already finished by an earlier run, with their orbits.
    std::set<std::size_t> completed_units;
    std::vector<Orbit> preloaded;
    /// Called (serialized) after each unit finishes.
    std::function<void(std::size_t unit, const std::vector<Orbit>&)> on_unit_done;
};

namespace detail {

/// Per-thread scanner for subspaces containing gamma^0.
class CyclicScanner {
public:
    CyclicScanner(const FieldRef& f, std::uint32_t k)
        : f_(f), k_(k), order_(f->group_order()), work_(order_), rot_(order_) {
        basis_.resize(k);
        exps_.reserve(static_cast<std::size_t>(ipow(f->q(), k)));
    }

    /// rows span W inside coordinates 1..n-1 (packed over n-1 digits).
    /// Returns true and fills rep data if the lifted V = <1> + W is the
    /// canonical representative of its cyclic orbit.
    bool scan(std::span<const VecIndex> rows) {
        const auto& f = *f_;
        const std::uint32_t q = f.q();
        basis_[0] = 1;
        for (std::size_t i = 0; i < rows.size(); ++i) basis_[i + 1] = rows[i] * q;

        auto words = work_.words();
        for (auto& w : words) w = 0;
        if (q == 2) {
            VecIndex cur = 0;
            const std::uint32_t total = 1u << k_;
            for (std::uint32_t idx = 1; idx < total; ++idx) {
                cur ^= basis_[std::countr_zero(idx)];
                work_.set(f.log(cur));
            }
        } else {
            for (VecIndex v : span_elements(f, basis_))
                if (v) work_.set(f.log(v));
        }

        exps_.clear();
        for (std::size_t i = 0; i < words.size(); ++i) {
            Word x = words[i];
            while (x) {
                exps_.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
        const std::size_t s = exps_.size();
        // bit 0 is set; the gap before it decides the top bit of V.
        const std::uint32_t g0 = exps_[0] + order_ - exps_[s - 1];
        ties_.clear();
        for (std::size_t i = 1; i < s; ++i) {
            const std::uint32_t gi = exps_[i] - exps_[i - 1];
            if (gi > g0) return false;
            if (gi == g0) ties_.push_back(exps_[i]);
        }
        for (std::uint32_t e : ties_) {
            bits::rotate(work_.words(), rot_.words(), order_, order_ - e);
            if (bits::compare(rot_.words(), work_.words()) == std::strong_ordering::less) return false;
        }

        length_ = order_;
        for (std::size_t i = 1; i < s; ++i) {
            const std::uint32_t e = exps_[i];
            if (order_ % e != 0) continue;
            bits::rotate(work_.words(), rot_.words(), order_, e);
            if (bits::compare(rot_.words(), work_.words()) == std::strong_ordering::equal) {
                length_ = e;
                break;
            }
        }
        return true;
    }

    const Bitvec& bits() const { return work_; }
    std::uint32_t length() const { return length_; }

private:
    FieldRef f_;
    std::uint32_t k_;
    std::uint32_t order_;
    Bitvec work_, rot_;
    std::vector<VecIndex> basis_;
    std::vector<std::uint32_t> exps_;
    std::vector<std::uint32_t> ties_;
    std::uint32_t length_ = 0;
};

/// Splits a cyclic orbit (canonical rep, length L) into its m-quasi orbits.
inline void split_into_quasi(const FieldRef& f, const Bitvec& rep, std::uint32_t k, std::uint32_t length,
                             std::uint32_t m, std::vector<Orbit>& out) {
    const std::uint32_t order = f->group_order();
    const std::uint32_t q = f->q();
    const std::uint32_t t = static_cast<std::uint32_t>(dimension_from_count(q, order / length));
    const std::uint32_t g = std::gcd(m, length);
    const std::uint32_t part_len = length / g;
    const std::uint32_t dmin = min_shift_distance(rep, k, q, g, part_len);
    Bitvec cur(order), best(order);
    for (std::uint32_t r = 0; r < g; ++r) {
        bits::rotate(rep.words(), best.words(), order, r);
        for (std::uint32_t j = 1; j < part_len; ++j) {
            bits::rotate(rep.words(), cur.words(), order, (r + j * g) % order);
            if (bits::compare(cur.words(), best.words()) == std::strong_ordering::less) best = cur;
        }
        Orbit o;
        o.field = f;
        o.m = m;
        o.k = k;
        o.rep = Subspace::from_trusted(f, best, k);
        o.length = part_len;
        o.min_dist = dmin;
        o.stab_degree = t;
        o.parent_length = length;
        out.push_back(std::move(o));
    }
}

} // namespace detail

/// Every m-quasi orbit of G_q(n, k) exactly once, sorted by representative.
inline std::vector<Orbit> enumerate_orbits(const FieldRef& f, std::uint32_t k, std::uint32_t m,
                                           const EnumOptions& opt = {}) {
    require_modulus(*f, m);
    const std::uint32_t n = f->n();
    if (k > n) throw Error(Errc::InvalidArgument, "k exceeds n");
    std::vector<Orbit> result;
    if (k == 0 || k == n) {
        const Subspace s = k == 0 ? zero_subspace(f) : full_space(f);
        Orbit o;
        o.field = f;
        o.m = m;
        o.k = k;
        o.rep = s;
        o.stab_degree = n;
        result.push_back(std::move(o));
        return result;
    }

    RrefEnumerator en(f->q(), n - 1, k - 1);
    if (opt.max_candidates != 0 && en.total() > opt.max_candidates)
        throw Error(Errc::ResourceLimit, std::to_string(en.total()) + " candidate subspaces exceed the budget of " +
                                             std::to_string(opt.max_candidates));

    const auto& units = en.units();
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < units.size(); ++i)
        if (!opt.completed_units.contains(i)) todo.push_back(i);

    result = opt.preloaded;
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;
    const auto start = std::chrono::steady_clock::now();

    auto worker = [&] {
        detail::CyclicScanner scanner(f, k);
        std::vector<Orbit> local;
        try {
            while (!stop.load()) {
                const std::size_t i = next.fetch_add(1);
                if (i >= todo.size()) break;
                if (opt.max_seconds > 0) {
                    const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
                    if (el.count() > opt.max_seconds)
                        throw Error(Errc::ResourceLimit, "time budget exhausted; completed units are resumable");
                }
                std::vector<Orbit> found;
                en.run_unit(units[todo[i]], [&](std::span<const VecIndex> rows) {
                    if (!scanner.scan(rows)) return;
                    detail::split_into_quasi(f, scanner.bits(), k, scanner.length(), m, found);
                });
                std::lock_guard lock(mu);
                if (opt.on_unit_done) opt.on_unit_done(todo[i], found);
                for (auto& o : found) local.push_back(std::move(o));
            }
        } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
            stop = true;
        }
        std::lock_guard lock(mu);
        for (auto& o : local) result.push_back(std::move(o));
    };

    const unsigned nworkers = std::max(1u, opt.workers);
    if (nworkers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(result.begin(), result.end(), [](const Orbit& a, const Orbit& b) { return a.rep < b.rep; });
    return result;
}

// -- census ------------------------------------------------------------------

struct CensusKey {
    std::uint32_t k = 0;
    std::uint32_t min_dist = 0;
    std::uint32_t length = 0;
    std::uint32_t parent_length = 0;
    auto operator<=>(const CensusKey&) const = default;
};

/// Orbit counts keyed by (k, min distance, length, enclosing cyclic length).
struct CensusTable {
    std::uint32_t q = 2;
    std::uint32_t n = 0;
    std::uint32_t m = 1;
    std::vector<std::uint32_t> poly;
    std::uint32_t full_length = 0;
    std::map<CensusKey, std::uint64_t> counts;

    void add(const Orbit& o) { ++counts[{o.k, o.min_dist, o.length, o.parent_length}]; }

    std::vector<std::uint32_t> dims() const {
        std::set<std::uint32_t> ks;
        for (const auto& [key, c] : counts) ks.insert(key.k);
        return {ks.begin(), ks.end()};
    }
    BigCount mass(std::uint32_t k) const {
        BigCount s = 0;
        for (const auto& [key, c] : counts)
            if (key.k == k) s += BigCount(c) * key.length;
        return s;
    }
    bool mass_ok(std::uint32_t k) const { return mass(k) == gaussian_coefficient(n, k, q); }
    std::uint64_t orbit_count(std::uint32_t k) const {
        std::uint64_t s = 0;
        for (const auto& [key, c] : counts)
            if (key.k == k) s += c;
        return s;
    }

    bool operator==(const CensusTable&) const = default;
};

inline CensusTable make_census(const FieldRef& f, std::uint32_t m) {
    CensusTable t;
    t.q = f->q();
    t.n = f->n();
    t.m = m;
    t.poly = f->poly();
    t.full_length = full_orbit_length(*f, m);
    return t;
}

/// Census of one Grassmannian; the mass check is enforced.
inline CensusTable classify(const FieldRef& f, std::uint32_t k, std::uint32_t m, const EnumOptions& opt = {}) {
    CensusTable t = make_census(f, m);
    for (const auto& o : enumerate_orbits(f, k, m, opt)) t.add(o);
    if (!t.mass_ok(k))
        throw Error(Errc::VerificationFailed, "orbit lengths do not sum to the Gaussian coefficient");
    return t;
}

inline CensusTable classify(const FieldRef& f, const std::vector<std::uint32_t>& ks, std::uint32_t m,
                            const EnumOptions& opt = {}) {
    CensusTable t = make_census(f, m);
    for (auto k : ks) {
        const CensusTable part = classify(f, k, m, opt);
        for (const auto& [key, c] : part.counts) t.counts[key] += c;
    }
    return t;
}

// -- conjecture --------------------------------------------------------------

/// Existence of a full-length cyclic orbit code in G_q(n, k) with minimum
/// distance at least 2k - 2.
struct ConjectureVerdict {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    bool applicable = false;  // k < n / 2
    std::uint32_t required_distance = 0;
    std::uint64_t full_length_orbits = 0;
    std::uint64_t witnesses = 0;
    std::uint32_t best_full_length_distance = 0;
    std::optional<Subspace> witness;

    bool satisfied() const { return witnesses > 0; }
};

inline ConjectureVerdict conjecture_check(const FieldRef& f, std::uint32_t k, const EnumOptions& opt = {}) {
    ConjectureVerdict v;
    v.n = f->n();
    v.k = k;
    v.applicable = 2 * k < f->n();
    v.required_distance = k >= 1 ? 2 * k - 2 : 0;
    const std::uint32_t full = full_orbit_length(*f, 1);
    for (const auto& o : enumerate_orbits(f, k, 1, opt)) {
        if (o.length != full) continue;
        ++v.full_length_orbits;
        v.best_full_length_distance = std::max(v.best_full_length_distance, o.min_dist);
        if (o.min_dist >= v.required_distance) {
            if (!v.witness) v.witness = o.rep;
            ++v.witnesses;
        }
    }
    return v;
}

} // namespace subcodes
