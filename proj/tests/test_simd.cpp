#include <doctest.h>

#include <random>
#include <vector>

#include "knub/simd/bitops.hpp"

using knub::simd::Kernels;
using knub::simd::Word;

namespace {

std::vector<Word> random_words(std::size_t n, std::mt19937_64& rng) {
  std::vector<Word> out(n);
  for (auto& w : out) w = rng();
  return out;
}

void check_against_scalar(const Kernels& k) {
  const Kernels& ref = knub::simd::scalar_kernels();
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n <= 67; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      auto a = random_words(n, rng);
      auto b = random_words(n, rng);
      CHECK(k.popcount(a.data(), n) == ref.popcount(a.data(), n));
      CHECK(k.and_popcount(a.data(), b.data(), n) == ref.and_popcount(a.data(), b.data(), n));

      std::vector<Word> d1(n), d2(n);
      CHECK(k.and_into(d1.data(), a.data(), b.data(), n) == ref.and_into(d2.data(), a.data(), b.data(), n));
      CHECK(d1 == d2);
      k.andnot_into(d1.data(), a.data(), b.data(), n);
      ref.andnot_into(d2.data(), a.data(), b.data(), n);
      CHECK(d1 == d2);

      auto in_place = a;
      k.and_into(in_place.data(), in_place.data(), b.data(), n);
      ref.and_into(d2.data(), a.data(), b.data(), n);
      CHECK(in_place == d2);
    }
  }
}

void check_threshold_scan(const Kernels& k) {
  const Kernels& ref = knub::simd::scalar_kernels();
  std::mt19937_64 rng(11);
  const std::uint64_t bounds[] = {0, 1, 2, 3, 17, 1ULL << 32, (1ULL << 63) - 1, 1ULL << 63, ~0ULL};
  for (std::size_t n : {0, 1, 3, 4, 5, 15, 16, 33, 250}) {
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) {
      switch (rng() % 4) {
        case 0: v = rng() % 5; break;
        case 1: v = rng(); break;
        case 2: v = (1ULL << 63) + rng() % 3 - 1; break;
        default: v = ~0ULL - rng() % 2; break;
      }
    }
    for (auto bound : bounds) {
      std::vector<std::uint8_t> k1(n, 9), k2(n, 9);
      CHECK(k.mark_at_least(values.data(), n, bound, k1.data()) ==
            ref.mark_at_least(values.data(), n, bound, k2.data()));
      CHECK(k1 == k2);
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels on known inputs") {
  const Kernels& k = knub::simd::scalar_kernels();
  std::vector<Word> a{0xFFULL, 0, ~0ULL};
  std::vector<Word> b{0x0FULL, 1, 1ULL << 63};
  CHECK(k.popcount(a.data(), 3) == 72);
  CHECK(k.and_popcount(a.data(), b.data(), 3) == 5);
  std::vector<Word> d(3);
  CHECK(k.and_into(d.data(), a.data(), b.data(), 3) == 5);
  CHECK(d == std::vector<Word>{0x0F, 0, 1ULL << 63});
  k.andnot_into(d.data(), a.data(), b.data(), 3);
  CHECK(d == std::vector<Word>{0xF0, 0, ~0ULL >> 1});

  std::vector<std::uint64_t> vals{0, 3, 2, 5, 1};
  std::vector<std::uint8_t> keep(5);
  CHECK(k.mark_at_least(vals.data(), 5, 2, keep.data()) == 3);
  CHECK(keep == std::vector<std::uint8_t>{0, 1, 1, 1, 0});
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const Kernels* k = knub::simd::avx2_kernels();
  if (k == nullptr) {
    MESSAGE("AVX2 kernels unavailable on this machine; skipped");
    return;
  }
  check_against_scalar(*k);
  check_threshold_scan(*k);
}

TEST_CASE("active kernels are one of the known tables") {
  const Kernels& k = knub::simd::active_kernels();
  bool known = &k == &knub::simd::scalar_kernels() || &k == knub::simd::avx2_kernels();
  CHECK(known);
}
