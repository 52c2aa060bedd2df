#pragma once

// A subspace V of F_q^n ~ F_{q^n} is stored as its characteristic vector over
// the exponents 0 .. q^n - 2 of the primitive element: bit j is set iff
// gamma^j lies in V. The zero vector is implicit, so popcount = q^dim - 1.
//
// Multiplying V by gamma^e rotates the characteristic vector by e, and the
// intersection of two subspaces is the AND of their vectors.

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subcodes/bitvec.hpp"
#include "subcodes/error.hpp"
#include "subcodes/gfext.hpp"

namespace subcodes {

/// Returns k with q^k - 1 == count, or -1 if count is not of that form.
inline int dimension_from_count(std::uint32_t q, std::uint64_t count) {
    std::uint64_t size = count + 1;
    int k = 0;
    while (size % q == 0) {
        size /= q;
        ++k;
    }
    return size == 1 ? k : -1;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return static_cast<std::uint32_t>(r);
}

/// Reduced row echelon basis over F_q; rows are coordinate digit vectors.
struct BasisMatrix {
    std::uint32_t q = 2;
    std::uint32_t n = 0;
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<std::uint32_t> pivots;

    std::size_t rank() const { return rows.size(); }
    bool operator==(const BasisMatrix&) const = default;
};

inline BasisMatrix row_reduce(std::uint32_t q, std::uint32_t n, std::vector<std::vector<std::uint32_t>> m) {
    BasisMatrix out;
    out.q = q;
    out.n = n;
    std::size_t r = 0;
    for (std::uint32_t col = 0; col < n && r < m.size(); ++col) {
        std::size_t p = r;
        while (p < m.size() && m[p][col] % q == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        const std::uint32_t inv = inverse_mod(m[r][col] % q, q);
        for (auto& x : m[r]) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x % q) * inv % q);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r) continue;
            const std::uint32_t f = m[i][col] % q;
            if (f == 0) continue;
            for (std::uint32_t j = 0; j < n; ++j)
                m[i][j] = (m[i][j] % q + q - (f * m[r][j]) % q) % q;
        }
        out.pivots.push_back(col);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

/// Nullspace of the row space under sum_j x_j y_j.
inline BasisMatrix nullspace(const BasisMatrix& b) {
    std::vector<std::vector<std::uint32_t>> vecs;
    std::vector<bool> is_pivot(b.n, false);
    for (auto p : b.pivots) is_pivot[p] = true;
    for (std::uint32_t f = 0; f < b.n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint32_t> x(b.n, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < b.rows.size(); ++i)
            x[b.pivots[i]] = (b.q - b.rows[i][f] % b.q) % b.q;
        vecs.push_back(std::move(x));
    }
    return row_reduce(b.q, b.n, std::move(vecs));
}

class Subspace {
public:
    Subspace() = default;

    const FieldRef& field() const noexcept { return field_; }
    const Bitvec& bits() const noexcept { return bits_; }
    std::uint32_t dim() const noexcept { return dim_; }
    std::uint32_t n() const noexcept { return field_->n(); }

    std::vector<Exponent> exponents() const { return bits_.indices(); }
    bool contains(Exponent e) const { return bits_.test(e); }

    bool operator==(const Subspace& o) const { return bits_ == o.bits_ && same_field(o); }
    std::strong_ordering operator<=>(const Subspace& o) const { return bits_ <=> o.bits_; }

    bool same_field(const Subspace& o) const {
        return field_ == o.field_ || (field_ && o.field_ && field_->same_as(*o.field_));
    }

    /// Trusted constructor; callers guarantee bits is a subspace of dimension dim.
    static Subspace from_trusted(FieldRef f, Bitvec bits, std::uint32_t dim) {
        Subspace s;
        s.field_ = std::move(f);
        s.bits_ = std::move(bits);
        s.dim_ = dim;
        return s;
    }

private:
    FieldRef field_;
    Bitvec bits_;
    std::uint32_t dim_ = 0;
};

inline void require_same_field(const Subspace& a, const Subspace& b) {
    if (!a.same_field(b)) throw Error(Errc::FieldMismatch, "subspaces belong to different fields");
}

/// All q^k packed vectors of the span of independent packed vectors.
inline std::vector<VecIndex> span_elements(const FieldSpec& f, const std::vector<VecIndex>& basis) {
    std::vector<VecIndex> elems{0};
    elems.reserve(ipow(f.q(), static_cast<std::uint32_t>(basis.size())));
    for (VecIndex b : basis) {
        const std::size_t base = elems.size();
        for (std::uint32_t c = 1; c < f.q(); ++c) {
            const VecIndex cb = f.vec_scale(c, b);
            for (std::size_t i = 0; i < base; ++i) elems.push_back(f.vec_add(elems[i], cb));
        }
    }
    return elems;
}

inline Subspace subspace_from_basis(const FieldRef& f, const BasisMatrix& b) {
    std::vector<VecIndex> packed;
    for (const auto& r : b.rows) packed.push_back(f->from_digits(r));
    Bitvec bits(f->group_order());
    for (VecIndex v : span_elements(*f, packed))
        if (v != 0) bits.set(f->log(v));
    return Subspace::from_trusted(f, std::move(bits), static_cast<std::uint32_t>(b.rank()));
}

inline Subspace zero_subspace(const FieldRef& f) { return Subspace::from_trusted(f, Bitvec(f->group_order()), 0); }

inline Subspace full_space(const FieldRef& f) {
    Bitvec b(f->group_order());
    b.fill();
    return Subspace::from_trusted(f, std::move(b), f->n());
}

inline BasisMatrix basis_of(const Subspace& v) {
    const auto& f = *v.field();
    std::vector<std::vector<std::uint32_t>> rows;
    // Greedy pick of independent members keeps the matrix small.
    BasisMatrix cur = row_reduce(f.q(), f.n(), {});
    for (Exponent e : v.exponents()) {
        if (cur.rank() == v.dim()) break;
        rows.push_back(f.digits(f.antilog(e)));
        BasisMatrix next = row_reduce(f.q(), f.n(), rows);
        if (next.rank() == rows.size()) {
            cur = std::move(next);
        } else {
            rows.pop_back();
        }
    }
    return cur;
}

inline Subspace span(const FieldRef& f, const std::vector<FieldElement>& vectors) {
    std::vector<std::vector<std::uint32_t>> rows;
    for (auto a : vectors)
        if (!a.is_zero()) rows.push_back(f->coords(a));
    if (rows.empty()) throw Error(Errc::AllZero, "span of zero vectors");
    return subspace_from_basis(f, row_reduce(f->q(), f->n(), std::move(rows)));
}

inline Subspace from_bits(const FieldRef& f, Bitvec bits) {
    if (bits.size() != f->group_order()) throw Error(Errc::FieldMismatch, "bitvector length mismatch");
    const int k = dimension_from_count(f->q(), bits.count());
    if (k < 0) throw Error(Errc::NotASubspace, "set size is not q^k - 1");
    if (k == 0) return zero_subspace(f);
    std::vector<FieldElement> elems;
    for (auto e : bits.indices()) elems.push_back(FieldElement::power(e));
    Subspace s = span(f, elems);
    if (s.bits() != bits) throw Error(Errc::NotASubspace, "set is not closed under addition");
    return s;
}

/// {0} together with {gamma^e : e in exps} must be exactly a subspace.
inline Subspace from_exponents(const FieldRef& f, const std::vector<Exponent>& exps) {
    Bitvec bits(f->group_order());
    for (Exponent e : exps) {
        if (e >= f->group_order())
            throw Error(Errc::ExponentOutOfRange, "exponent " + std::to_string(e) + " out of range");
        if (bits.test(e)) throw Error(Errc::DuplicateExponent, "exponent " + std::to_string(e) + " repeated");
        bits.set(e);
    }
    return from_bits(f, std::move(bits));
}

inline std::uint32_t dimension(const Subspace& v) { return v.dim(); }

inline Subspace intersect(const Subspace& u, const Subspace& v) {
    require_same_field(u, v);
    Bitvec b = u.bits() & v.bits();
    const int k = dimension_from_count(u.field()->q(), b.count());
    return Subspace::from_trusted(u.field(), std::move(b), static_cast<std::uint32_t>(k));
}

inline std::uint32_t distance(const Subspace& u, const Subspace& v) {
    require_same_field(u, v);
    const auto common = bits::and_popcount(u.bits().words(), v.bits().words());
    const int k = dimension_from_count(u.field()->q(), common);
    return u.dim() + v.dim() - 2 * static_cast<std::uint32_t>(k);
}

/// gamma^e * V.
inline Subspace shift(const Subspace& v, std::uint64_t e) {
    const auto order = v.field()->group_order();
    return Subspace::from_trusted(v.field(), v.bits().rotated(static_cast<std::uint32_t>(e % order)), v.dim());
}

inline Subspace orthogonal_complement(const Subspace& v) {
    const auto& f = v.field();
    if (v.dim() == 0) return full_space(f);
    if (v.dim() == f->n()) return zero_subspace(f);
    return subspace_from_basis(f, nullspace(basis_of(v)));
}

inline void require_modulus(const FieldSpec& f, std::uint64_t m) {
    if (m == 0 || f.group_order() % m != 0)
        throw Error(Errc::BadModulus, "m = " + std::to_string(m) + " does not divide q^n - 1 = " +
                                          std::to_string(f.group_order()));
}

struct CanonicalRotation {
    Subspace rep;
    std::uint32_t offset = 0;
};

/// Minimal rotation of V by a multiple of m, comparing vectors as integers
/// sum_j bit_j 2^j. The offset is the smallest multiple achieving it.
inline CanonicalRotation canonical_rotation(const Subspace& v, std::uint32_t m) {
    const auto& f = *v.field();
    require_modulus(f, m);
    const std::uint32_t order = f.group_order();
    const auto& src = v.bits();
    Bitvec best = src, cur(order);
    std::uint32_t best_off = 0;
    for (std::uint32_t r = m; r < order; r += m) {
        bits::rotate(src.words(), cur.words(), order, r);
        const auto c = bits::compare(cur.words(), best.words());
        if (c == std::strong_ordering::less) {
            best = cur;
            best_off = r;
        }
        if (bits::compare(cur.words(), src.words()) == std::strong_ordering::equal) break;
    }
    return {Subspace::from_trusted(v.field(), std::move(best), v.dim()), best_off};
}

// -- text form -------------------------------------------------------------

inline std::vector<Exponent> parse_exponent_list(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw Error(Errc::ParseError, "subspace literal must look like [0,13,14]");
    s = s.substr(1, s.size() - 2);
    std::vector<Exponent> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
            throw Error(Errc::ParseError, "bad exponent '" + tok + "'");
        out.push_back(static_cast<Exponent>(std::stoul(tok)));
    }
    return out;
}

inline std::string format_exponents(const std::vector<Exponent>& exps) {
    std::string out = "[";
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(exps[i]);
    }
    return out + "]";
}

inline std::string to_string(const Subspace& v) { return format_exponents(v.exponents()); }

} // namespace subcodes
