#pragma once

// Word-level kernels behind the bitset clique search, the local clique
// listing, and the participation threshold scans. Each kernel has a scalar
// reference implementation; an AVX2 variant is picked at runtime when the
// CPU supports it. Both must agree bit-for-bit.

#include <cstddef>
#include <cstdint>
#include <span>

namespace knub::simd {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

struct Kernels {
  const char* name;
  std::size_t (*popcount)(const Word* a, std::size_t n);
  std::size_t (*and_popcount)(const Word* a, const Word* b, std::size_t n);
  // dst = a & b, returns popcount(dst). dst may alias a or b.
  std::size_t (*and_into)(Word* dst, const Word* a, const Word* b, std::size_t n);
  // dst = a & ~b. dst may alias a or b.
  void (*andnot_into)(Word* dst, const Word* a, const Word* b, std::size_t n);
  // keep[i] = values[i] >= bound ? 1 : 0, returns the number of kept entries.
  std::size_t (*mark_at_least)(const std::uint64_t* values, std::size_t n, std::uint64_t bound,
                               std::uint8_t* keep);
};

const Kernels& scalar_kernels();

/// nullptr when the build has no AVX2 kernels or the CPU lacks AVX2/POPCNT.
const Kernels* avx2_kernels();

/// Kernels used by the library. Chosen once: AVX2 when available, unless the
/// environment variable KNUB_SIMD=scalar forces the reference path.
const Kernels& active_kernels();

inline std::size_t popcount(std::span<const Word> a) {
  return active_kernels().popcount(a.data(), a.size());
}

inline std::size_t and_popcount(std::span<const Word> a, std::span<const Word> b) {
  return active_kernels().and_popcount(a.data(), b.data(), a.size());
}

inline std::size_t and_into(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  return active_kernels().and_into(dst.data(), a.data(), b.data(), dst.size());
}

inline void andnot_into(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  active_kernels().andnot_into(dst.data(), a.data(), b.data(), dst.size());
}

inline std::size_t mark_at_least(std::span<const std::uint64_t> values, std::uint64_t bound,
                                 std::span<std::uint8_t> keep) {
  return active_kernels().mark_at_least(values.data(), values.size(), bound, keep.data());
}

}  // namespace knub::simd
