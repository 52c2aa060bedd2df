#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace subcodes {

using Word = std::uint64_t;

namespace bits {

inline constexpr std::size_t word_count(std::uint32_t nbits) { return (nbits + 63) / 64; }

inline Word last_mask(std::uint32_t nbits) {
    const auto r = nbits % 64;
    return r == 0 ? ~Word{0} : ((Word{1} << r) - 1);
}

/// dst = src rotated so that bit j lands on (j + r) mod nbits. dst must not alias src.
inline void rotate(std::span<const Word> src, std::span<Word> dst, std::uint32_t nbits, std::uint32_t r) {
    const std::size_t w = src.size();
    r %= nbits;
    if (r == 0) {
        for (std::size_t i = 0; i < w; ++i) dst[i] = src[i];
        return;
    }
    const std::size_t ws = r / 64;
    const unsigned bs = r % 64;
    for (std::size_t i = w; i-- > 0;) {
        Word v = 0;
        if (i >= ws) {
            v = src[i - ws] << bs;
            if (bs && i > ws) v |= src[i - ws - 1] >> (64 - bs);
        }
        dst[i] = v;
    }
    const std::uint32_t s = nbits - r;
    const std::size_t ws2 = s / 64;
    const unsigned bs2 = s % 64;
    for (std::size_t i = 0; i + ws2 < w; ++i) {
        const std::size_t j = i + ws2;
        Word v = src[j] >> bs2;
        if (bs2 && j + 1 < w) v |= src[j + 1] << (64 - bs2);
        dst[i] |= v;
    }
    dst[w - 1] &= last_mask(nbits);
}

inline std::uint32_t popcount(std::span<const Word> a) {
    std::uint32_t c = 0;
    for (Word x : a) c += static_cast<std::uint32_t>(std::popcount(x));
    return c;
}

inline std::uint32_t and_popcount(std::span<const Word> a, std::span<const Word> b) {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::uint32_t>(std::popcount(a[i] & b[i]));
    return c;
}

/// Compares as integers sum_j bit_j 2^j.
inline std::strong_ordering compare(std::span<const Word> a, std::span<const Word> b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace bits

/// Fixed-length bitvector, little-endian bit order over packed 64-bit words.
class Bitvec {
public:
    Bitvec() = default;
    explicit Bitvec(std::uint32_t nbits) : nbits_(nbits), words_(bits::word_count(nbits), 0) {}

    std::uint32_t size() const noexcept { return nbits_; }
    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> words() noexcept { return words_; }

    bool test(std::uint32_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
    void set(std::uint32_t i) { words_[i / 64] |= Word{1} << (i % 64); }
    void reset(std::uint32_t i) { words_[i / 64] &= ~(Word{1} << (i % 64)); }
    void fill() {
        for (auto& x : words_) x = ~Word{0};
        if (!words_.empty()) words_.back() &= bits::last_mask(nbits_);
    }

    std::uint32_t count() const { return bits::popcount(words_); }
    bool none() const {
        for (Word x : words_)
            if (x) return false;
        return true;
    }

    Bitvec rotated(std::uint32_t r) const {
        Bitvec out(nbits_);
        if (nbits_ != 0) bits::rotate(words_, out.words_, nbits_, r);
        return out;
    }

    Bitvec operator&(const Bitvec& o) const {
        Bitvec out(nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & o.words_[i];
        return out;
    }
    Bitvec operator|(const Bitvec& o) const {
        Bitvec out(nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] | o.words_[i];
        return out;
    }

    /// Set positions in increasing order.
    std::vector<std::uint32_t> indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            Word x = words_[i];
            while (x) {
                out.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return out;
    }

    bool operator==(const Bitvec& o) const = default;
    std::strong_ordering operator<=>(const Bitvec& o) const {
        if (nbits_ != o.nbits_) return nbits_ <=> o.nbits_;
        return bits::compare(words_, o.words_);
    }

private:
    std::uint32_t nbits_ = 0;
    std::vector<Word> words_;
};

struct BitvecHash {
    std::size_t operator()(const Bitvec& b) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ b.size();
        for (Word x : b.words()) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace subcodes
