#pragma once

// Enumeration of all k-dimensional subspaces of F_q^d through their reduced
// row echelon bases. Each pivot pattern is a Schubert cell; the cell's free
// entries are split into work units of bounded size so that long runs can be
// spread across threads and checkpointed unit by unit.

#include <cstdint>
#include <span>
#include <vector>

#include "subcodes/gfext.hpp"
#include "subcodes/subspace.hpp"

namespace subcodes {

struct RrefUnit {
    std::uint32_t cell = 0;
    std::uint64_t prefix = 0;  // packed values of the first `split` free entries
};

class RrefEnumerator {
public:
    RrefEnumerator(std::uint32_t q, std::uint32_t d, std::uint32_t k, std::uint64_t max_unit_items = 1u << 15)
        : q_(q), d_(d), k_(k) {
        if (k > d) throw Error(Errc::InvalidArgument, "k exceeds ambient dimension");
        std::vector<std::uint32_t> piv(k);
        for (std::uint32_t i = 0; i < k; ++i) piv[i] = i;
        while (true) {
            Cell c;
            c.pivots = piv;
            std::vector<bool> is_piv(d, false);
            for (auto p : piv) is_piv[p] = true;
            for (std::uint32_t r = 0; r < k; ++r)
                for (std::uint32_t col = piv[r] + 1; col < d; ++col)
                    if (!is_piv[col]) c.free.push_back({r, col});
            const auto f = static_cast<std::uint32_t>(c.free.size());
            std::uint32_t split = 0;
            while (split < f && ipow(q, f - split) > max_unit_items) ++split;
            c.split = split;
            const std::uint64_t nunits = ipow(q, split);
            total_ += ipow(q, f);
            for (std::uint64_t p = 0; p < nunits; ++p)
                units_.push_back({static_cast<std::uint32_t>(cells_.size()), p});
            cells_.push_back(std::move(c));
            // next combination
            if (k == 0) break;
            std::int64_t i = static_cast<std::int64_t>(k) - 1;
            while (i >= 0 && piv[i] == d - k + static_cast<std::uint32_t>(i)) --i;
            if (i < 0) break;
            ++piv[i];
            for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
        }
    }

    const std::vector<RrefUnit>& units() const noexcept { return units_; }
    /// Gaussian coefficient [d, k]_q as a plain count of enumerated bases.
    std::uint64_t total() const noexcept { return total_; }

    /// fn(std::span<const VecIndex> rows) for every basis in the unit; rows are
    /// packed base-q vectors over d coordinates.
    template <class Fn>
    void run_unit(const RrefUnit& u, Fn&& fn) const {
        const Cell& c = cells_[u.cell];
        std::vector<VecIndex> rows(k_, 0);
        std::vector<VecIndex> weight(d_);
        VecIndex w = 1;
        for (std::uint32_t i = 0; i < d_; ++i, w *= q_) weight[i] = w;
        for (std::uint32_t r = 0; r < k_; ++r) rows[r] = weight[c.pivots[r]];

        const auto f = c.free.size();
        std::vector<std::uint32_t> val(f, 0);
        std::uint64_t p = u.prefix;
        for (std::uint32_t i = 0; i < c.split; ++i) {
            val[i] = static_cast<std::uint32_t>(p % q_);
            p /= q_;
            rows[c.free[i].row] += val[i] * weight[c.free[i].col];
        }
        const std::span<const VecIndex> view(rows);
        while (true) {
            fn(view);
            // odometer over entries split..f-1
            std::size_t i = c.split;
            for (; i < f; ++i) {
                const auto& fe = c.free[i];
                if (val[i] + 1 < q_) {
                    ++val[i];
                    rows[fe.row] += weight[fe.col];
                    break;
                }
                rows[fe.row] -= val[i] * weight[fe.col];
                val[i] = 0;
            }
            if (i == f) break;
        }
    }

    template <class Fn>
    void run_all(Fn&& fn) const {
        for (const auto& u : units_) run_unit(u, fn);
    }

private:
    struct FreeEntry {
        std::uint32_t row, col;
    };
    struct Cell {
        std::vector<std::uint32_t> pivots;
        std::vector<FreeEntry> free;
        std::uint32_t split = 0;
    };

    std::uint32_t q_, d_, k_;
    std::vector<Cell> cells_;
    std::vector<RrefUnit> units_;
    std::uint64_t total_ = 0;
};

/// Every k-dimensional subspace of F_{q^n}, in enumeration order.
template <class Fn>
void for_each_subspace(const FieldRef& f, std::uint32_t k, Fn&& fn) {
    if (k == 0) {
        fn(zero_subspace(f));
        return;
    }
    RrefEnumerator en(f->q(), f->n(), k);
    en.run_all([&](std::span<const VecIndex> rows) {
        Bitvec b(f->group_order());
        for (VecIndex v : span_elements(*f, {rows.begin(), rows.end()}))
            if (v) b.set(f->log(v));
        fn(Subspace::from_trusted(f, std::move(b), k));
    });
}

inline std::vector<Subspace> all_subspaces(const FieldRef& f, std::uint32_t k) {
    std::vector<Subspace> out;
    for_each_subspace(f, k, [&](Subspace s) { out.push_back(std::move(s)); });
    return out;
}

} // namespace subcodes
