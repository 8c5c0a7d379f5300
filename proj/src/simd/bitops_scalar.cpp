#include <bit>

#include "knub/simd/bitops.hpp"

namespace knub::simd {

namespace {

std::size_t popcount_scalar(const Word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i]);
  return c;
}

std::size_t and_popcount_scalar(const Word* a, const Word* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

std::size_t and_into_scalar(Word* dst, const Word* a, const Word* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = a[i] & b[i];
    c += std::popcount(dst[i]);
  }
  return c;
}

void andnot_into_scalar(Word* dst, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

std::size_t mark_at_least_scalar(const std::uint64_t* values, std::size_t n, std::uint64_t bound,
                                 std::uint8_t* keep) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < n; ++i) {
    keep[i] = values[i] >= bound ? 1 : 0;
    kept += keep[i];
  }
  return kept;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar",         popcount_scalar,    and_popcount_scalar,
                         and_into_scalar,  andnot_into_scalar, mark_at_least_scalar};
  return k;
}

}  // namespace knub::simd
