#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cosetcodes/bitvector.hpp"
#include "cosetcodes/errors.hpp"

namespace cosetcodes {

/// Dense GF(2) matrix, row-major, each row packed into `stride()` machine words.
/// Allocation is checked against memory_cap().
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), stride_(words_for(cols)) {
    check_capacity(bytes_for(rows, cols), "BitMatrix " + std::to_string(rows) + "x" + std::to_string(cols));
    data_.assign(rows_ * stride_, 0);
  }

  static std::size_t bytes_for(std::size_t rows, std::size_t cols) {
    return rows * words_for(cols) * sizeof(Word);
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  static BitMatrix ones(std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      auto row = m.row_words(i);
      std::fill(row.begin(), row.end(), ~Word{0});
      if (!row.empty()) row.back() &= tail_mask(cols);
    }
    return m;
  }

  static BitMatrix from_rows(std::span<const BitVector> rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t i, std::size_t j) const {
    return (data_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    Word& w = data_[i * stride_ + j / kWordBits];
    const Word mask = Word{1} << (j % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t i, std::size_t j) { data_[i * stride_ + j / kWordBits] ^= Word{1} << (j % kWordBits); }

  std::span<Word> row_words(std::size_t i) { return {data_.data() + i * stride_, stride_}; }
  std::span<const Word> row_words(std::size_t i) const { return {data_.data() + i * stride_, stride_}; }

  BitVector row(std::size_t i) const {
    BitVector v(cols_);
    v.assign_words(row_words(i));
    return v;
  }

  void set_row(std::size_t i, const BitVector& v) {
    if (v.size() != cols_) throw DimensionError("set_row: length mismatch");
    auto dst = row_words(i);
    auto src = v.words();
    std::copy(src.begin(), src.end(), dst.begin());
  }

  // row(dst) ^= row(src)
  void xor_row(std::size_t dst, std::size_t src) {
    Word* d = data_.data() + dst * stride_;
    const Word* s = data_.data() + src * stride_;
    for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    auto ra = row_words(a);
    auto rb = row_words(b);
    std::swap_ranges(ra.begin(), ra.end(), rb.begin());
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
  }

  std::size_t row_popcount(std::size_t i) const {
    std::size_t n = 0;
    for (Word w : row_words(i)) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  BitMatrix& operator+=(const BitMatrix& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionError("matrix sum: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] ^= other.data_[k];
    return *this;
  }
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      auto row = row_words(i);
      for (std::size_t k = 0; k < stride_; ++k) {
        Word w = row[k];
        while (w != 0) {
          const std::size_t j = k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
          t.set(j, i);
          w &= w - 1;
        }
      }
    }
    return t;
  }

  /// M * x over GF(2).
  BitVector apply(const BitVector& x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector product: length mismatch");
    BitVector y(rows_);
    const auto xw = x.words();
    for (std::size_t i = 0; i < rows_; ++i) {
      const Word* r = data_.data() + i * stride_;
      Word acc = 0;
      for (std::size_t k = 0; k < stride_; ++k) acc ^= r[k] & xw[k];
      if (std::popcount(acc) & 1) y.set(i);
    }
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

/// GF(2) product A * B.
inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + std::to_string(a.cols()) + " columns vs " + std::to_string(b.rows()) + " rows");
  }
  BitMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = c.row_words(i);
    auto row = a.row_words(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      Word w = row[k];
      while (w != 0) {
        const std::size_t j = k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
        auto src = b.row_words(j);
        for (std::size_t t = 0; t < dst.size(); ++t) dst[t] ^= src[t];
        w &= w - 1;
      }
    }
  }
  return c;
}

namespace detail {
// Copies `src` into row `row` of `dst`, starting at column `col`.
inline void blit(BitMatrix& dst, std::size_t row, std::size_t col, const BitMatrix& src) {
  for (std::size_t i = 0; i < src.rows(); ++i) {
    auto words = src.row_words(i);
    if (col % kWordBits == 0) {
      auto out = dst.row_words(row + i);
      std::copy(words.begin(), words.end(), out.begin() + static_cast<std::ptrdiff_t>(col / kWordBits));
      continue;
    }
    for (std::size_t k = 0; k < words.size(); ++k) {
      Word w = words[k];
      while (w != 0) {
        const std::size_t j = k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
        dst.set(row + i, col + j);
        w &= w - 1;
      }
    }
  }
}
}  // namespace detail

/// Places grid[i][j] at block position (i, j). Block rows must agree in height,
/// block columns in width.
inline BitMatrix block_assemble(const std::vector<std::vector<BitMatrix>>& grid) {
  if (grid.empty()) return BitMatrix(0, 0);
  const std::size_t grid_cols = grid.front().size();
  std::vector<std::size_t> heights, widths(grid_cols, 0);
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    if (grid[bi].size() != grid_cols) throw DimensionError("block_assemble: ragged grid");
    heights.push_back(grid_cols == 0 ? 0 : grid[bi][0].rows());
    for (std::size_t bj = 0; bj < grid_cols; ++bj) {
      const BitMatrix& b = grid[bi][bj];
      if (b.rows() != heights[bi]) throw DimensionError("block_assemble: block heights differ within a block row");
      if (bi == 0) {
        widths[bj] = b.cols();
      } else if (b.cols() != widths[bj]) {
        throw DimensionError("block_assemble: block widths differ within a block column");
      }
    }
  }
  std::size_t total_rows = 0, total_cols = 0;
  for (auto h : heights) total_rows += h;
  for (auto w : widths) total_cols += w;
  BitMatrix out(total_rows, total_cols);
  std::size_t row = 0;
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    std::size_t col = 0;
    for (std::size_t bj = 0; bj < grid_cols; ++bj) {
      detail::blit(out, row, col, grid[bi][bj]);
      col += widths[bj];
    }
    row += heights[bi];
  }
  return out;
}

inline BitMatrix hstack(const std::vector<BitMatrix>& blocks) {
  if (blocks.empty()) return BitMatrix(0, 0);
  return block_assemble({blocks});
}

inline BitMatrix vstack(const std::vector<BitMatrix>& blocks) {
  std::vector<std::vector<BitMatrix>> grid;
  grid.reserve(blocks.size());
  for (const auto& b : blocks) grid.push_back({b});
  return block_assemble(grid);
}

// Text format: "rows cols" on the first line, then one line of '0'/'1' per row.
inline void write_matrix_text(std::ostream& out, const BitMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) out << m.row(i).to_string() << '\n';
}

inline std::string to_matrix_text(const BitMatrix& m) {
  std::ostringstream os;
  write_matrix_text(os, m);
  return os.str();
}

inline BitMatrix read_matrix_text(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw ParameterError("matrix text: missing 'rows cols' header");
  BitMatrix m(rows, cols);
  std::string line;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!(in >> line)) throw ParameterError("matrix text: expected " + std::to_string(rows) + " rows");
    if (line.size() != cols) {
      throw ParameterError("matrix text: row " + std::to_string(i) + " has " + std::to_string(line.size()) +
                           " entries, expected " + std::to_string(cols));
    }
    m.set_row(i, BitVector::from_string(line));
  }
  return m;
}

inline BitMatrix from_matrix_text(const std::string& text) {
  std::istringstream is(text);
  return read_matrix_text(is);
}

}  // namespace cosetcodes
