#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#include "knub/simd/bitops.hpp"

namespace knub {

using simd::Word;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + simd::kWordBits - 1) / simd::kWordBits;
}

inline void set_bit(std::span<Word> w, std::size_t i) { w[i / 64] |= Word{1} << (i % 64); }
inline void clear_bit(std::span<Word> w, std::size_t i) { w[i / 64] &= ~(Word{1} << (i % 64)); }
inline bool test_bit(std::span<const Word> w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1U; }

inline bool any_bit(std::span<const Word> w) {
  for (Word x : w)
    if (x != 0) return true;
  return false;
}

/// Index of the lowest set bit, or w.size() * 64 when none.
inline std::size_t first_bit(std::span<const Word> w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
  return w.size() * 64;
}

template <class F>
void for_each_bit(std::span<const Word> w, F&& f) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word x = w[i];
    while (x != 0) {
      f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

/// Square bit matrix stored row-major, one padded row of words per vertex.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_(words_for(n)), data_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  std::span<Word> row(std::size_t i) { return {data_.data() + i * words_, words_}; }
  std::span<const Word> row(std::size_t i) const { return {data_.data() + i * words_, words_}; }

  void set(std::size_t i, std::size_t j) { set_bit(row(i), j); }
  bool test(std::size_t i, std::size_t j) const { return test_bit(row(i), j); }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> data_;
};

}  // namespace knub
