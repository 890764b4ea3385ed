#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosetcodes/bitvector.hpp"
#include "cosetcodes/codefam.hpp"
#include "cosetcodes/errors.hpp"

// Rank of the parity matrix Σ_{h ∈ S ∪ {0}} Γ_h without materializing it.
//
// Split the coordinates into an ℓ-bit prefix and an m-bit suffix. The matrix is
// then a 2^ℓ x 2^ℓ grid whose (i, j) entry is the suffix sum D_{i+j}, an element
// of the translation ring over F_2^m. Odd elements of that ring are units (they
// square to the identity), so block elimination on odd pivots removes 2^m from
// the rank per pivot. What is left has only even entries; its row space is the
// translation-invariant span of its block rows, found by closing those rows
// under the m unit translations.

namespace cosetcodes {

struct BlockRank {
  unsigned prefix_len = 0;
  std::size_t pivots = 0;             // odd blocks eliminated, each worth 2^m
  std::size_t residual_blocks = 0;    // side of the even residual grid
  std::uint64_t residual_rank = 0;
  std::uint64_t rank = 0;
};

namespace detail {

// Dense element of the translation ring over F_2^m: bit g is the coefficient of Γ_g.
using RingElement = std::vector<Word>;

inline bool ring_is_odd(const RingElement& a) {
  std::size_t w = 0;
  for (auto x : a) w += static_cast<std::size_t>(std::popcount(x));
  return w % 2 == 1;
}

inline bool ring_is_zero(const RingElement& a) {
  for (auto x : a) {
    if (x != 0) return false;
  }
  return true;
}

// Walsh-Hadamard transform in wrapping 64-bit arithmetic. Applying it twice
// multiplies by 2^m, so XOR convolutions are exact modulo 2^64 and the mod-2
// coefficient is bit m of the result.
inline void wht(std::vector<std::uint64_t>& a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::uint64_t x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

inline std::vector<std::uint64_t> ring_transform(const RingElement& a, unsigned m) {
  std::vector<std::uint64_t> t(std::size_t{1} << m, 0);
  for (std::size_t g = 0; g < t.size(); ++g) t[g] = (a[g / kWordBits] >> (g % kWordBits)) & 1u;
  wht(t);
  return t;
}

inline RingElement ring_from_transform(std::vector<std::uint64_t> t, unsigned m) {
  wht(t);
  RingElement out(words_for(t.size()), 0);
  for (std::size_t g = 0; g < t.size(); ++g) {
    if ((t[g] >> m) & 1u) out[g / kWordBits] |= Word{1} << (g % kWordBits);
  }
  return out;
}

using Grid = std::vector<std::vector<RingElement>>;

// Eliminates odd pivots until none are left; returns the number eliminated and
// leaves the even residual in `grid` with zero rows and columns removed.
inline std::size_t eliminate_odd_pivots(Grid& grid, unsigned m) {
  std::size_t pivots = 0;
  while (!grid.empty()) {
    std::size_t pi = grid.size(), pj = 0;
    for (std::size_t i = 0; i < grid.size() && pi == grid.size(); ++i) {
      for (std::size_t j = 0; j < grid[i].size(); ++j) {
        if (ring_is_odd(grid[i][j])) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == grid.size()) break;
    ++pivots;
    // p is its own inverse, so row i2 -= (x p) * row pi.
    const auto tp = ring_transform(grid[pi][pj], m);
    std::vector<std::vector<std::uint64_t>> row_t;
    row_t.reserve(grid[pi].size());
    for (std::size_t c = 0; c < grid[pi].size(); ++c) {
      row_t.push_back(c == pj ? std::vector<std::uint64_t>{} : ring_transform(grid[pi][c], m));
    }
    Grid next;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i == pi) continue;
      std::vector<RingElement> row;
      row.reserve(grid[i].size() - 1);
      const bool touch = !ring_is_zero(grid[i][pj]);
      std::vector<std::uint64_t> factor;
      if (touch) {
        factor = ring_transform(grid[i][pj], m);
        for (std::size_t g = 0; g < factor.size(); ++g) factor[g] *= tp[g];
      }
      for (std::size_t c = 0; c < grid[i].size(); ++c) {
        if (c == pj) continue;
        RingElement e = std::move(grid[i][c]);
        if (touch) {
          std::vector<std::uint64_t> prod(factor.size());
          for (std::size_t g = 0; g < prod.size(); ++g) prod[g] = factor[g] * row_t[c][g];
          const RingElement delta = ring_from_transform(std::move(prod), m);
          for (std::size_t w = 0; w < e.size(); ++w) e[w] ^= delta[w];
        }
        row.push_back(std::move(e));
      }
      next.push_back(std::move(row));
    }
    grid = std::move(next);
  }

  Grid kept;
  for (auto& row : grid) {
    bool zero = true;
    for (const auto& e : row) zero = zero && ring_is_zero(e);
    if (!zero) kept.push_back(std::move(row));
  }
  if (kept.empty()) {
    grid.clear();
    return pivots;
  }
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < kept[0].size(); ++c) {
    bool zero = true;
    for (const auto& row : kept) zero = zero && ring_is_zero(row[c]);
    if (!zero) cols.push_back(c);
  }
  grid.clear();
  for (auto& row : kept) {
    std::vector<RingElement> r;
    for (auto c : cols) r.push_back(std::move(row[c]));
    grid.push_back(std::move(r));
  }
  return pivots;
}

// out = v with bit b of every coordinate index flipped.
inline void translate(const std::vector<Word>& v, unsigned b, std::vector<Word>& out) {
  static constexpr Word kMasks[6] = {0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
                                     0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
  out.resize(v.size());
  if (b >= 6) {
    const std::size_t s = std::size_t{1} << (b - 6);
    for (std::size_t w = 0; w < v.size(); ++w) out[w] = v[w ^ s];
  } else {
    const unsigned d = 1u << b;
    for (std::size_t w = 0; w < v.size(); ++w) out[w] = ((v[w] & kMasks[b]) << d) | ((v[w] >> d) & kMasks[b]);
  }
}

// Echelon basis keyed by lowest set bit.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t bits) : words_(words_for(bits)), pivot_row_(bits, -1) {
    check_capacity(bits * sizeof(std::int32_t), "block rank pivot table");
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<Word>& row(std::size_t i) const { return rows_[i]; }

  // Reduces v against the basis; keeps it (and returns true) if anything is left.
  bool insert(std::vector<Word> v) {
    std::size_t w = 0;
    while (true) {
      while (w < words_ && v[w] == 0) ++w;
      if (w == words_) return false;
      const std::size_t bit = w * kWordBits + static_cast<std::size_t>(std::countr_zero(v[w]));
      const std::int32_t r = pivot_row_[bit];
      if (r < 0) {
        check_capacity((rows_.size() + 1) * words_ * sizeof(Word), "block rank basis");
        pivot_row_[bit] = static_cast<std::int32_t>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
      }
      const auto& b = rows_[static_cast<std::size_t>(r)];
      for (std::size_t k = w; k < words_; ++k) v[k] ^= b[k];
    }
  }

 private:
  std::size_t words_;
  std::vector<std::int32_t> pivot_row_;
  std::vector<std::vector<Word>> rows_;
};

// Rank of the residual grid: dimension of the span of its block rows and all
// their translates.
inline std::uint64_t closure_rank(const Grid& grid, unsigned m) {
  if (grid.empty()) return 0;
  const std::size_t side = std::size_t{1} << m;
  const std::size_t bits = grid[0].size() * side;
  EchelonBasis basis(bits);
  for (const auto& row : grid) {
    std::vector<Word> v(words_for(bits), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      for (std::size_t g = 0; g < side; ++g) {
        if ((row[c][g / kWordBits] >> (g % kWordBits)) & 1u) {
          const std::size_t pos = c * side + g;
          v[pos / kWordBits] |= Word{1} << (pos % kWordBits);
        }
      }
    }
    basis.insert(std::move(v));
  }
  std::vector<Word> moved;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (unsigned b = 0; b < m; ++b) {
      translate(basis.row(i), b, moved);
      basis.insert(moved);
    }
  }
  return basis.size();
}

}  // namespace detail

/// Shortest prefix for which some suffix block D_u has an odd number of terms.
inline unsigned default_prefix_len(const GeneratorSet& s) {
  std::vector<std::uint64_t> terms = s.nonzero();
  terms.push_back(0);
  for (unsigned l = 0; l <= s.dim(); ++l) {
    const unsigned suffix = s.dim() - l;
    std::vector<std::uint64_t> prefixes;
    for (auto t : terms) prefixes.push_back(suffix >= 64 ? 0 : t >> suffix);
    std::sort(prefixes.begin(), prefixes.end());
    for (std::size_t i = 0; i < prefixes.size();) {
      std::size_t j = i;
      while (j < prefixes.size() && prefixes[j] == prefixes[i]) ++j;
      if ((j - i) % 2 == 1) return l;
      i = j;
    }
  }
  return s.dim();
}

/// Rank of Σ_{h ∈ S ∪ {0}} Γ_h (the parity matrix of Cay(F_2^dim, S)) through
/// the prefix/suffix block structure. Equal to rank(parity_matrix(...)).
inline BlockRank block_rank(const GeneratorSet& s, std::optional<unsigned> prefix_len = std::nullopt) {
  const unsigned l = prefix_len.value_or(default_prefix_len(s));
  if (l > s.dim()) throw ParameterError("block_rank: prefix longer than the dimension");
  if (l > 12) throw CapacityError("block_rank: prefix grid of 2^" + std::to_string(l) + " blocks");
  const unsigned m = s.dim() - l;
  if (m > 40) throw CapacityError("block_rank: suffix ring of 2^" + std::to_string(m) + " elements");
  const std::size_t k = std::size_t{1} << l;
  const std::size_t side = std::size_t{1} << m;
  check_capacity(k * k * words_for(side) * sizeof(Word) + 2 * k * side * sizeof(std::uint64_t), "block rank grid");

  std::vector<detail::RingElement> blocks(k, detail::RingElement(words_for(side), 0));
  std::vector<std::uint64_t> terms = s.nonzero();
  terms.push_back(0);
  for (auto t : terms) {
    const std::uint64_t u = t >> m, g = t & (side - 1);
    blocks[u][g / kWordBits] ^= Word{1} << (g % kWordBits);
  }
  detail::Grid grid(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) grid[i].push_back(blocks[i ^ j]);
  }

  BlockRank out;
  out.prefix_len = l;
  out.pivots = detail::eliminate_odd_pivots(grid, m);
  out.residual_blocks = grid.size();
  out.residual_rank = detail::closure_rank(grid, m);
  out.rank = static_cast<std::uint64_t>(out.pivots) * side + out.residual_rank;
  return out;
}

}  // namespace cosetcodes
