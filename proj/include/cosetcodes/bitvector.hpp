#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosetcodes/errors.hpp"

namespace cosetcodes {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Mask of the valid bits in the last word of a `bits`-long row.
constexpr Word tail_mask(std::size_t bits) {
  const std::size_t rem = bits % kWordBits;
  return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
}

/// Dense vector over GF(2). Coordinate i lives in word i / 64, bit i % 64.
/// Bits past size() are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : size_(length), words_(words_for(length), 0) {}

  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw ParameterError("bit string may only contain '0' and '1'");
      }
    }
    return v;
  }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  // Overwrites the payload; stray bits past size() are cleared.
  void assign_words(std::span<const Word> src) {
    std::copy_n(src.begin(), std::min(src.size(), words_.size()), words_.begin());
    if (!words_.empty()) words_.back() &= tail_mask(size_);
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  BitVector& operator^=(const BitVector& other) {
    if (other.size_ != size_) throw DimensionError("BitVector xor: length mismatch");
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator+(BitVector a, const BitVector& b) { return a ^= b; }

  // Inner product mod 2.
  bool dot(const BitVector& other) const {
    if (other.size_ != size_) throw DimensionError("BitVector dot: length mismatch");
    Word acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return std::popcount(acc) & 1;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace cosetcodes
