#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "subcodes/error.hpp"

namespace subcodes {

/// Exact nonnegative integer used for subspace counts and bounds.
using BigCount = boost::multiprecision::cpp_int;

/// Number of k-dimensional subspaces of F_q^n:
/// prod_{i<k} (q^{n-i} - 1) / (q^{i+1} - 1).
inline BigCount gaussian_coefficient(std::uint32_t n, std::uint32_t k, std::uint32_t q) {
    if (k > n) return 0;
    BigCount num = 1, den = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(BigCount(q), n - i) - 1;
        den *= boost::multiprecision::pow(BigCount(q), i + 1) - 1;
    }
    return num / den;
}

/// Upper bound on a constant-dimension code with minimum distance d = 2*delta + 2:
/// floor([n, k]_q / [n - k + delta, delta]_q).
inline BigCount etzion_vardy_bound(std::uint32_t n, std::uint32_t d, std::uint32_t k, std::uint32_t q) {
    if (d % 2 != 0) throw Error(Errc::OddDistance, "distance " + std::to_string(d) + " is odd");
    if (d < 2) throw Error(Errc::InvalidArgument, "distance must be at least 2");
    if (k > n) throw Error(Errc::InvalidArgument, "k exceeds n");
    const std::uint32_t delta = (d - 2) / 2;
    return gaussian_coefficient(n, k, q) / gaussian_coefficient(n - k + delta, delta, q);
}

inline std::uint64_t to_u64(const BigCount& v) { return v.convert_to<std::uint64_t>(); }

} // namespace subcodes
