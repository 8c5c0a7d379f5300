// Compiled with -mavx2 -mpopcnt; only reached through avx2_kernels() after a
// runtime CPU check.

#include <immintrin.h>

#include "knub/simd/bitops.hpp"

namespace knub::simd::avx2 {

namespace {

// Nibble-lookup popcount (Mula): per-byte counts via pshufb, summed with sad.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::size_t horizontal_sum(__m256i acc) {
  return static_cast<std::size_t>(_mm256_extract_epi64(acc, 0)) +
         static_cast<std::size_t>(_mm256_extract_epi64(acc, 1)) +
         static_cast<std::size_t>(_mm256_extract_epi64(acc, 2)) +
         static_cast<std::size_t>(_mm256_extract_epi64(acc, 3));
}

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

std::size_t popcount_avx2(const Word* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(load(a + i)), _mm256_setzero_si256()));
  }
  std::size_t c = horizontal_sum(acc);
  for (; i < n; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c;
}

std::size_t and_popcount_avx2(const Word* a, const Word* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_and_si256(load(a + i), load(b + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
  }
  std::size_t c = horizontal_sum(acc);
  for (; i < n; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & b[i]));
  return c;
}

std::size_t and_into_avx2(Word* dst, const Word* a, const Word* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_and_si256(load(a + i), load(b + i));
    store(dst + i, v);
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
  }
  std::size_t c = horizontal_sum(acc);
  for (; i < n; ++i) {
    dst[i] = a[i] & b[i];
    c += static_cast<std::size_t>(_mm_popcnt_u64(dst[i]));
  }
  return c;
}

void andnot_into_avx2(Word* dst, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

std::size_t mark_at_least_avx2(const std::uint64_t* values, std::size_t n, std::uint64_t bound,
                               std::uint8_t* keep) {
  // Unsigned compare via the sign-flip trick: x >= b  <=>  !(b >s x) after xor with 2^63.
  const __m256i flip = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  const __m256i b = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<long long>(bound)), flip);
  std::size_t kept = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_xor_si256(load(values + i), flip);
    int below = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(b, x)));
    for (int j = 0; j < 4; ++j) {
      std::uint8_t k = ((below >> j) & 1) ? 0 : 1;
      keep[i + j] = k;
      kept += k;
    }
  }
  for (; i < n; ++i) {
    keep[i] = values[i] >= bound ? 1 : 0;
    kept += keep[i];
  }
  return kept;
}

}  // namespace

const Kernels& kernels() {
  static const Kernels k{"avx2",         popcount_avx2,    and_popcount_avx2,
                         and_into_avx2,  andnot_into_avx2, mark_at_least_avx2};
  return k;
}

}  // namespace knub::simd::avx2
