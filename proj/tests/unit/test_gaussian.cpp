#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "subcodes/enumerate.hpp"
#include "subcodes/gaussian.hpp"

using namespace subcodes;

namespace {

// [n,k]_q = [n-1,k-1]_q + q^k [n-1,k]_q
BigCount pascal(std::uint32_t n, std::uint32_t k, std::uint32_t q) {
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, BigCount> memo;
    if (k > n) return 0;
    if (k == 0 || k == n) return 1;
    const auto key = std::make_tuple(n, k, q);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    BigCount qk = 1;
    for (std::uint32_t i = 0; i < k; ++i) qk *= q;
    BigCount v = pascal(n - 1, k - 1, q) + qk * pascal(n - 1, k, q);
    memo[key] = v;
    return v;
}

} // namespace

TEST(Gaussian, MatchesQPascalRecurrence) {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u})
        for (std::uint32_t n = 0; n <= 16; ++n)
            for (std::uint32_t k = 0; k <= n + 1; ++k)
                ASSERT_EQ(gaussian_coefficient(n, k, q), pascal(n, k, q)) << n << " " << k << " " << q;
}

TEST(Gaussian, KnownValues) {
    EXPECT_EQ(gaussian_coefficient(6, 3, 2), 1395);
    EXPECT_EQ(gaussian_coefficient(8, 4, 2), 200787);
    EXPECT_EQ(gaussian_coefficient(10, 5, 2), 109221651);
    EXPECT_EQ(gaussian_coefficient(4, 2, 2), 35);
    // exceeds 64 bits
    EXPECT_GT(gaussian_coefficient(64, 32, 2), BigCount(std::numeric_limits<std::uint64_t>::max()));
}

TEST(Gaussian, CountsSubspacesExhaustively) {
    for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}}) {
        const auto f = make_default_field(q, n);
        const auto all = oracle::all_subspaces(*f);
        for (std::uint32_t k = 0; k <= n; ++k)
            EXPECT_EQ(gaussian_coefficient(n, k, q), oracle::subspaces_of_dim(all, q, k).size());
    }
}

TEST(Bound, PublishedInstances) {
    EXPECT_EQ(etzion_vardy_bound(10, 4, 3, 2), 24893);
    EXPECT_EQ(etzion_vardy_bound(8, 4, 4, 2), 6477);
    EXPECT_EQ(etzion_vardy_bound(10, 10, 5, 2), 33);
}

TEST(Bound, SpreadsMeetIt) {
    for (std::uint32_t q : {2u, 3u})
        for (std::uint32_t k = 1; k <= 4; ++k)
            for (std::uint32_t n = k; n <= 12; n += k) {
                BigCount expect = (boost::multiprecision::pow(BigCount(q), n) - 1) /
                                  (boost::multiprecision::pow(BigCount(q), k) - 1);
                EXPECT_EQ(etzion_vardy_bound(n, 2 * k, k, q), expect);
            }
}

TEST(Bound, Errors) {
    try {
        etzion_vardy_bound(10, 5, 3, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OddDistance);
    }
    EXPECT_THROW(etzion_vardy_bound(10, 0, 3, 2), Error);
    EXPECT_THROW(etzion_vardy_bound(3, 4, 4, 2), Error);
}

TEST(Enumerate, TotalsAreGaussianCoefficients) {
    for (std::uint32_t q : {2u, 3u})
        for (std::uint32_t d = 1; d <= (q == 2 ? 9u : 6u); ++d)
            for (std::uint32_t k = 0; k <= d; ++k) {
                RrefEnumerator en(q, d, k, 64);
                EXPECT_EQ(BigCount(en.total()), gaussian_coefficient(d, k, q));
                std::uint64_t seen = 0;
                for (const auto& u : en.units()) en.run_unit(u, [&](std::span<const VecIndex>) { ++seen; });
                EXPECT_EQ(seen, en.total());
            }
}

TEST(Enumerate, EverySubspaceExactlyOnce) {
    for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}}) {
        const auto f = make_default_field(q, n);
        const auto all = oracle::all_subspaces(*f);
        for (std::uint32_t k = 0; k <= n; ++k) {
            std::set<oracle::VecSet> got;
            std::size_t count = 0;
            for_each_subspace(f, k, [&](const Subspace& v) {
                ++count;
                EXPECT_EQ(v.dim(), k);
                got.insert(oracle::to_set(v));
            });
            const auto expect = oracle::subspaces_of_dim(all, q, k);
            EXPECT_EQ(count, expect.size());
            EXPECT_EQ(got, std::set<oracle::VecSet>(expect.begin(), expect.end()));
        }
    }
}

TEST(Enumerate, RowsAreInReducedEchelonForm) {
    RrefEnumerator en(3, 4, 2);
    en.run_all([&](std::span<const VecIndex> rows) {
        ASSERT_EQ(rows.size(), 2u);
        const auto a = oracle::digits(rows[0], 3, 4), b = oracle::digits(rows[1], 3, 4);
        // pivot = lowest nonzero coordinate, equal to 1, zero in the other row
        auto pivot = [](const std::vector<std::uint32_t>& r) {
            for (std::uint32_t i = 0; i < r.size(); ++i)
                if (r[i]) return i;
            return 99u;
        };
        const auto pa = pivot(a), pb = pivot(b);
        ASSERT_LT(pa, pb);
        EXPECT_EQ(a[pa], 1u);
        EXPECT_EQ(b[pb], 1u);
        EXPECT_EQ(a[pb], 0u);
    });
}
