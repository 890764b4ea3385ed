#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cosetcodes/bitmatrix.hpp"
#include "cosetcodes/bitvector.hpp"

namespace cosetcodes {

enum class RankMethod {
  automatic,      // four_russians when cols >= kFourRussiansThreshold
  gaussian,       // one pivot at a time
  four_russians,  // 64-column windows reduced through eight 8-bit lookup tables
};

inline constexpr std::size_t kFourRussiansThreshold = 4096;

namespace detail {

inline void xor_words_from(BitMatrix& m, std::size_t dst, std::size_t src, std::size_t first_word) {
  Word* d = m.row_words(dst).data();
  const Word* s = m.row_words(src).data();
  for (std::size_t k = first_word; k < m.stride(); ++k) d[k] ^= s[k];
}

// Row echelon form, pivoting on the first set column. Returns the rank.
inline std::size_t gaussian_rank_in_place(BitMatrix& m) {
  const std::size_t rows = m.rows();
  std::size_t r0 = 0;
  for (std::size_t col = 0; col < m.cols() && r0 < rows; ++col) {
    const std::size_t wk = col / kWordBits;
    const Word bit = Word{1} << (col % kWordBits);
    std::size_t pivot = r0;
    while (pivot < rows && (m.row_words(pivot)[wk] & bit) == 0) ++pivot;
    if (pivot == rows) continue;
    m.swap_rows(pivot, r0);
    for (std::size_t i = r0 + 1; i < rows; ++i) {
      if (m.row_words(i)[wk] & bit) xor_words_from(m, i, r0, wk);
    }
    ++r0;
  }
  return r0;
}

// Eliminates one 64-column window at a time. Invariant: every row at or below
// `r0` is zero in all words before the current window, so row operations only
// touch words from the window onwards.
inline std::size_t four_russians_rank_in_place(BitMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t stride = m.stride();
  constexpr std::size_t kGroups = 8;
  constexpr std::size_t kEntries = 256;
  std::vector<Word> tables(kGroups * kEntries * stride, 0);
  auto table_row = [&](std::size_t group, std::size_t entry) {
    return tables.data() + (group * kEntries + entry) * stride;
  };

  std::size_t r0 = 0;
  for (std::size_t wk = 0; wk < stride && r0 < rows; ++wk) {
    const std::size_t width = std::min(kWordBits, m.cols() - wk * kWordBits);
    const std::size_t span = stride - wk;

    // Pivot search. lead[p] is the window column of pivot p; pivot p is zero at
    // lead[q] for q < p.
    std::array<unsigned, kWordBits> lead{};
    std::size_t count = 0;
    for (std::size_t i = r0; i < rows && count < width; ++i) {
      Word w = m.row_words(i)[wk];
      if (w == 0) continue;
      for (std::size_t p = 0; p < count; ++p) {
        if ((w >> lead[p]) & 1u) w ^= m.row_words(r0 + p)[wk];
      }
      if (w == 0) continue;
      const std::size_t dst = r0 + count;
      m.swap_rows(i, dst);
      for (std::size_t p = 0; p < count; ++p) {
        if ((m.row_words(dst)[wk] >> lead[p]) & 1u) xor_words_from(m, dst, r0 + p, wk);
      }
      lead[count] = static_cast<unsigned>(std::countr_zero(m.row_words(dst)[wk]));
      ++count;
    }
    if (count == 0) continue;

    // Back-substitute so each pivot carries exactly one lead bit.
    for (std::size_t b = count; b-- > 1;) {
      for (std::size_t a = 0; a < b; ++a) {
        if ((m.row_words(r0 + a)[wk] >> lead[b]) & 1u) xor_words_from(m, r0 + a, r0 + b, wk);
      }
    }

    std::array<std::size_t, kWordBits> pivot_of_column;
    pivot_of_column.fill(SIZE_MAX);
    for (std::size_t p = 0; p < count; ++p) pivot_of_column[lead[p]] = r0 + p;

    std::array<bool, kGroups> group_used{};
    for (std::size_t g = 0; g < kGroups; ++g) {
      for (std::size_t b = 0; b < 8; ++b) group_used[g] = group_used[g] || pivot_of_column[8 * g + b] != SIZE_MAX;
      if (!group_used[g]) continue;
      std::fill_n(table_row(g, 0) + wk, span, Word{0});
      for (std::size_t entry = 1; entry < kEntries; ++entry) {
        const std::size_t low = static_cast<std::size_t>(std::countr_zero(entry));
        const Word* prev = table_row(g, entry & (entry - 1));
        Word* out = table_row(g, entry);
        const std::size_t pivot = pivot_of_column[8 * g + low];
        if (pivot == SIZE_MAX) {
          std::copy_n(prev + wk, span, out + wk);
        } else {
          const Word* src = m.row_words(pivot).data();
          for (std::size_t k = wk; k < stride; ++k) out[k] = prev[k] ^ src[k];
        }
      }
    }

    for (std::size_t i = r0 + count; i < rows; ++i) {
      Word* row = m.row_words(i).data();
      const Word w = row[wk];
      if (w == 0) continue;
      std::array<const Word*, kGroups> src{};
      std::size_t n = 0;
      for (std::size_t g = 0; g < kGroups; ++g) {
        const std::size_t entry = (w >> (8 * g)) & 0xffu;
        if (entry != 0 && group_used[g]) src[n++] = table_row(g, entry);
      }
      std::size_t s = 0;
      for (; s + 4 <= n; s += 4) {
        const Word *a = src[s], *b = src[s + 1], *c = src[s + 2], *d = src[s + 3];
        for (std::size_t k = wk; k < stride; ++k) row[k] ^= a[k] ^ b[k] ^ c[k] ^ d[k];
      }
      for (; s + 2 <= n; s += 2) {
        const Word *a = src[s], *b = src[s + 1];
        for (std::size_t k = wk; k < stride; ++k) row[k] ^= a[k] ^ b[k];
      }
      if (s < n) {
        const Word* a = src[s];
        for (std::size_t k = wk; k < stride; ++k) row[k] ^= a[k];
      }
    }
    r0 += count;
  }
  return r0;
}

}  // namespace detail

/// GF(2) rank; eliminates on the matrix it is given.
inline std::size_t rank(BitMatrix&& m, RankMethod method = RankMethod::automatic) {
  if (method == RankMethod::automatic) {
    method = m.cols() >= kFourRussiansThreshold ? RankMethod::four_russians : RankMethod::gaussian;
  }
  return method == RankMethod::four_russians ? detail::four_russians_rank_in_place(m)
                                              : detail::gaussian_rank_in_place(m);
}

/// GF(2) rank of a copy; `m` is left untouched.
inline std::size_t rank(const BitMatrix& m, RankMethod method = RankMethod::automatic) {
  BitMatrix scratch = m;
  return rank(std::move(scratch), method);
}

/// Reduced row echelon form of `m` in place; returns the pivot column of each
/// nonzero row (so the rank is the size of the result).
inline std::vector<std::size_t> reduce_to_rref(BitMatrix& m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  std::size_t r0 = 0;
  for (std::size_t col = 0; col < m.cols() && r0 < rows; ++col) {
    const std::size_t wk = col / kWordBits;
    const Word bit = Word{1} << (col % kWordBits);
    std::size_t pivot = r0;
    while (pivot < rows && (m.row_words(pivot)[wk] & bit) == 0) ++pivot;
    if (pivot == rows) continue;
    m.swap_rows(pivot, r0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r0 && (m.row_words(i)[wk] & bit)) detail::xor_words_from(m, i, r0, wk);
    }
    pivots.push_back(col);
    ++r0;
  }
  return pivots;
}

/// Basis of {x : M x = 0}; one vector per non-pivot column, in column order.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  BitMatrix r = m;
  const std::vector<std::size_t> pivots = reduce_to_rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<BitVector> basis;
  basis.reserve(m.cols() - pivots.size());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector x(m.cols());
    x.set(free);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (r.get(i, free)) x.set(pivots[i]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

inline bool row_space_equal(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("row_space_equal: column counts differ");
  const std::size_t ra = rank(a);
  if (ra != rank(b)) return false;
  return rank(vstack({a, b})) == ra;
}

}  // namespace cosetcodes
