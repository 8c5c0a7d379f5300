#pragma once

#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace knub {

using BigInt = boost::multiprecision::cpp_int;

/// Exact C(n, k); zero when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

/// Clamp to uint64; values above the range saturate.
inline std::uint64_t saturate_u64(const BigInt& x) {
  if (x > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return x.convert_to<std::uint64_t>();
}

}  // namespace knub
