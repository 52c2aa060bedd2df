#pragma once

// Arithmetic in F_{q^n} = F_q[x]/(p(x)) for prime q and primitive p.
//
// Every nonzero element is stored as an exponent e of the primitive element
// gamma = x mod p. Coordinate vectors over the polynomial basis {1, x, ...,
// x^{n-1}} are packed into one integer, digit i (base q) holding the
// coefficient of x^i. For q = 2 the packed index is simply the bitmask.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "subcodes/error.hpp"

namespace subcodes {

using Exponent = std::uint32_t;
using VecIndex = std::uint32_t;

inline constexpr std::uint64_t kDefaultMaxGroupOrder = std::uint64_t{1} << 24;

class FieldElement {
public:
    static constexpr FieldElement zero() noexcept { return FieldElement{kZeroTag}; }
    static constexpr FieldElement power(Exponent e) noexcept { return FieldElement{e}; }

    constexpr bool is_zero() const noexcept { return e_ == kZeroTag; }

    /// Exponent of a nonzero element. Calling this on ZERO is a logic error.
    constexpr Exponent exponent() const noexcept { return e_; }

    constexpr auto operator<=>(const FieldElement&) const = default;

private:
    static constexpr Exponent kZeroTag = std::numeric_limits<Exponent>::max();
    constexpr explicit FieldElement(Exponent e) noexcept : e_(e) {}
    Exponent e_;
};

inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

/// Immutable description of F_{q^n} with full log/antilog tables.
class FieldSpec {
public:
    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t n() const noexcept { return n_; }
    const std::vector<std::uint32_t>& poly() const noexcept { return poly_; }
    /// q^n
    std::uint64_t order() const noexcept { return static_cast<std::uint64_t>(group_order_) + 1; }
    /// q^n - 1, the length of every characteristic vector.
    std::uint32_t group_order() const noexcept { return group_order_; }

    VecIndex antilog(Exponent e) const { return antilog_[e % group_order_]; }
    /// Exponent of a nonzero packed vector.
    Exponent log(VecIndex v) const { return log_[v]; }

    FieldElement element_of(VecIndex v) const {
        return v == 0 ? FieldElement::zero() : FieldElement::power(log_[v]);
    }
    VecIndex index_of(FieldElement a) const { return a.is_zero() ? 0 : antilog_[a.exponent()]; }

    std::vector<std::uint32_t> digits(VecIndex v) const {
        std::vector<std::uint32_t> out(n_);
        for (std::uint32_t i = 0; i < n_; ++i) {
            out[i] = v % q_;
            v /= q_;
        }
        return out;
    }
    VecIndex from_digits(const std::vector<std::uint32_t>& d) const {
        VecIndex v = 0;
        for (std::uint32_t i = n_; i-- > 0;) v = v * q_ + (d[i] % q_);
        return v;
    }
    std::vector<std::uint32_t> coords(FieldElement a) const { return digits(index_of(a)); }

    VecIndex vec_add(VecIndex a, VecIndex b) const {
        if (q_ == 2) return a ^ b;
        VecIndex out = 0, w = 1;
        for (std::uint32_t i = 0; i < n_; ++i, w *= q_) {
            out += ((a % q_ + b % q_) % q_) * w;
            a /= q_;
            b /= q_;
        }
        return out;
    }
    VecIndex vec_scale(std::uint32_t c, VecIndex a) const {
        c %= q_;
        if (q_ == 2) return c ? a : 0;
        VecIndex out = 0, w = 1;
        for (std::uint32_t i = 0; i < n_; ++i, w *= q_) {
            out += ((a % q_) * c % q_) * w;
            a /= q_;
        }
        return out;
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        return element_of(vec_add(index_of(a), index_of(b)));
    }
    FieldElement neg(FieldElement a) const { return element_of(vec_scale(q_ - 1, index_of(a))); }
    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.is_zero() || b.is_zero()) return FieldElement::zero();
        return FieldElement::power(static_cast<Exponent>(
            (static_cast<std::uint64_t>(a.exponent()) + b.exponent()) % group_order_));
    }
    FieldElement inv(FieldElement a) const {
        if (a.is_zero()) throw Error(Errc::ZeroInverse, "zero has no inverse");
        return FieldElement::power((group_order_ - a.exponent()) % group_order_);
    }
    FieldElement pow(FieldElement a, std::uint64_t k) const {
        if (a.is_zero()) return k == 0 ? FieldElement::power(0) : FieldElement::zero();
        return FieldElement::power(static_cast<Exponent>((a.exponent() * (k % group_order_)) % group_order_));
    }

    bool same_as(const FieldSpec& other) const noexcept {
        return q_ == other.q_ && n_ == other.n_ && poly_ == other.poly_;
    }

    /// Stable 64-bit FNV-1a fingerprint of (q, n, poly), rendered as hex.
    std::string hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 1099511628211ULL;
            }
        };
        mix(q_);
        mix(n_);
        for (auto c : poly_) mix(c);
        std::ostringstream os;
        os << std::hex;
        os.width(16);
        os.fill('0');
        os << h;
        return os.str();
    }

    friend std::shared_ptr<const FieldSpec> make_field(std::uint32_t, std::uint32_t,
                                                      std::vector<std::uint32_t>, std::uint64_t);

private:
    FieldSpec() = default;

    std::uint32_t q_ = 0;
    std::uint32_t n_ = 0;
    std::vector<std::uint32_t> poly_;
    std::uint32_t group_order_ = 0;
    std::vector<VecIndex> antilog_;
    std::vector<Exponent> log_;
};

using FieldRef = std::shared_ptr<const FieldSpec>;

/// Builds and validates F_{q^n}. poly lists coefficients from the constant term
/// to the leading one and must be monic of degree n with x primitive.
inline FieldRef make_field(std::uint32_t q, std::uint32_t n, std::vector<std::uint32_t> poly,
                           std::uint64_t max_group_order = kDefaultMaxGroupOrder) {
    if (!is_prime(q)) throw Error(Errc::NotPrime, "q = " + std::to_string(q) + " is not prime");
    if (n == 0) throw Error(Errc::DegreeMismatch, "extension degree must be at least 1");
    while (poly.size() > n + 1 && poly.back() == 0) poly.pop_back();
    if (poly.size() != n + 1)
        throw Error(Errc::DegreeMismatch, "polynomial degree " + std::to_string(poly.size() - 1) +
                                              " does not match n = " + std::to_string(n));
    if (poly.back() != 1) throw Error(Errc::DegreeMismatch, "polynomial is not monic");
    for (auto c : poly)
        if (c >= q) throw Error(Errc::DegreeMismatch, "coefficient out of range [0, q)");

    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        order *= q;
        if (order - 1 > max_group_order)
            throw Error(Errc::TooLarge, "q^n - 1 exceeds the configured limit " +
                                            std::to_string(max_group_order));
    }

    auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
    f->q_ = q;
    f->n_ = n;
    f->poly_ = std::move(poly);
    f->group_order_ = static_cast<std::uint32_t>(order - 1);
    const auto group = f->group_order_;
    constexpr Exponent unset = std::numeric_limits<Exponent>::max();
    f->antilog_.assign(group, 0);
    f->log_.assign(static_cast<std::size_t>(order), unset);

    std::vector<std::uint32_t> cur(n, 0);
    cur[0] = 1;
    for (std::uint32_t e = 0; e < group; ++e) {
        VecIndex idx = f->from_digits(cur);
        if (idx == 0 || f->log_[idx] != unset)
            throw Error(Errc::NotPrimitive, "x has multiplicative order below q^n - 1");
        f->antilog_[e] = idx;
        f->log_[idx] = e;
        // cur *= x, then reduce with x^n = -(p_0 + ... + p_{n-1} x^{n-1})
        std::uint32_t lead = cur[n - 1];
        for (std::uint32_t i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (lead != 0)
            for (std::uint32_t i = 0; i < n; ++i)
                cur[i] = (cur[i] + (q - (lead * f->poly_[i]) % q)) % q;
    }
    if (f->from_digits(cur) != 1)
        throw Error(Errc::NotPrimitive, "x^(q^n - 1) != 1");
    return f;
}

// -- polynomial text -------------------------------------------------------

/// Parses "1,1,0,0,1" (constant term first) or "x^4+x+1".
inline std::vector<std::uint32_t> parse_poly(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(Errc::ParseError, "empty polynomial");

    std::vector<std::uint32_t> coeffs;
    auto set = [&](std::size_t deg, std::uint32_t c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
        coeffs[deg] += c;
    };

    if (s.find('x') == std::string::npos && s.find('X') == std::string::npos) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
                throw Error(Errc::ParseError, "bad coefficient '" + tok + "'");
            coeffs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        }
        return coeffs;
    }

    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('+', pos);
        if (end == std::string::npos) end = s.size();
        std::string term = s.substr(pos, end - pos);
        pos = end + 1;
        if (term.empty()) throw Error(Errc::ParseError, "empty term in polynomial");
        std::size_t xpos = term.find_first_of("xX");
        if (xpos == std::string::npos) {
            if (!std::all_of(term.begin(), term.end(), ::isdigit))
                throw Error(Errc::ParseError, "bad term '" + term + "'");
            set(0, static_cast<std::uint32_t>(std::stoul(term)));
            continue;
        }
        std::string c = term.substr(0, xpos);
        if (!c.empty() && c.back() == '*') c.pop_back();
        std::uint32_t coeff = 1;
        if (!c.empty()) {
            if (!std::all_of(c.begin(), c.end(), ::isdigit))
                throw Error(Errc::ParseError, "bad coefficient in '" + term + "'");
            coeff = static_cast<std::uint32_t>(std::stoul(c));
        }
        std::string rest = term.substr(xpos + 1);
        std::size_t deg = 1;
        if (!rest.empty()) {
            if (rest[0] != '^' || rest.size() < 2 ||
                !std::all_of(rest.begin() + 1, rest.end(), ::isdigit))
                throw Error(Errc::ParseError, "bad exponent in '" + term + "'");
            deg = std::stoul(rest.substr(1));
        }
        set(deg, coeff);
    }
    return coeffs;
}

inline std::string format_poly(const std::vector<std::uint32_t>& poly) {
    std::string out;
    for (std::size_t i = poly.size(); i-- > 0;) {
        if (poly[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(poly[i]);
            continue;
        }
        if (poly[i] != 1) out += std::to_string(poly[i]);
        out += "x";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

// -- defaults --------------------------------------------------------------

namespace detail {
struct DefaultPoly {
    std::uint32_t q, n;
    const char* poly;
};
inline constexpr DefaultPoly kDefaultPolys[] = {
    {2, 1, "x+1"},
    {2, 2, "x^2+x+1"},
    {2, 3, "x^3+x+1"},
    {2, 4, "x^4+x+1"},
    {2, 5, "x^5+x^2+1"},
    {2, 6, "x^6+x^4+x^3+x+1"},
    {2, 7, "x^7+x+1"},
    {2, 8, "x^8+x^4+x^3+x^2+1"},
    {2, 9, "x^9+x^4+1"},
    {2, 10, "x^10+x^6+x^5+x^3+x^2+x+1"},
    {2, 11, "x^11+x^2+1"},
    {2, 12, "x^12+x^6+x^4+x+1"},
    {3, 1, "x+1"},
    {3, 2, "x^2+x+2"},
    {3, 3, "x^3+2x+1"},
    {5, 1, "x+3"},
    {5, 2, "x^2+x+2"},
};
} // namespace detail

/// Primitive polynomial used when none is given. Entries of the built-in table
/// win; otherwise the first primitive monic polynomial in order of the packed
/// integer sum c_i q^i over (c_0, ..., c_{n-1}) is returned.
inline std::vector<std::uint32_t> default_poly(std::uint32_t q, std::uint32_t n,
                                               std::uint64_t max_group_order = kDefaultMaxGroupOrder) {
    for (const auto& d : detail::kDefaultPolys)
        if (d.q == q && d.n == n) return parse_poly(d.poly);
    if (!is_prime(q) || n == 0) throw Error(Errc::NoDefault, "no default polynomial for these parameters");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        order *= q;
        if (order - 1 > max_group_order) throw Error(Errc::NoDefault, "field too large for search");
    }
    for (std::uint64_t packed = 1; packed < order; ++packed) {
        std::vector<std::uint32_t> poly(n + 1, 0);
        std::uint64_t v = packed;
        for (std::uint32_t i = 0; i < n; ++i) {
            poly[i] = static_cast<std::uint32_t>(v % q);
            v /= q;
        }
        if (poly[0] == 0) continue;
        poly[n] = 1;
        try {
            make_field(q, n, poly, max_group_order);
            return poly;
        } catch (const Error& e) {
            if (e.code() != Errc::NotPrimitive) throw;
        }
    }
    throw Error(Errc::NoDefault, "no primitive polynomial found");
}

inline FieldRef make_default_field(std::uint32_t q, std::uint32_t n) {
    return make_field(q, n, default_poly(q, n));
}

} // namespace subcodes
