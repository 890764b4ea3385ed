#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cosetcodes/bitmatrix.hpp"
#include "cosetcodes/errors.hpp"
#include "cosetcodes/permring.hpp"

namespace cosetcodes {

/// Columns of a parity-check matrix, viewed as elements of F_2^dim. Column
/// order is kept for export; duplicates are rejected.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(unsigned dim, std::vector<std::uint64_t> columns) : dim_(dim), columns_(std::move(columns)) {
    if (dim > kMaxDim) throw ParameterError("GeneratorSet: dimension above " + std::to_string(kMaxDim));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(columns_.size());
    for (auto c : columns_) {
      if ((c >> dim_) != 0) throw ParameterError("GeneratorSet: column does not fit in dimension");
      if (!seen.insert(c).second) {
        throw ParameterError("GeneratorSet: duplicate column " + GroupElement(dim_, c).to_string());
      }
    }
  }

  unsigned dim() const { return dim_; }
  std::size_t size() const { return columns_.size(); }
  const std::vector<std::uint64_t>& columns() const { return columns_; }

  bool has_zero() const {
    for (auto c : columns_) {
      if (c == 0) return true;
    }
    return false;
  }

  std::vector<std::uint64_t> nonzero() const {
    std::vector<std::uint64_t> out;
    out.reserve(columns_.size());
    for (auto c : columns_) {
      if (c != 0) out.push_back(c);
    }
    return out;
  }

  // Σ_{h∈S} Γ_h.
  PermSum as_perm_sum() const { return PermSum(dim_, columns_); }

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  unsigned dim_ = 0;
  std::vector<std::uint64_t> columns_;
};

/// dim x |S| matrix; row i holds coordinate i + 1 of every column.
inline BitMatrix matrix_of(const GeneratorSet& s) {
  BitMatrix m(s.dim(), s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const std::uint64_t c = s.columns()[j];
    for (unsigned i = 0; i < s.dim(); ++i) {
      if ((c >> (s.dim() - 1 - i)) & 1u) m.set(i, j);
    }
  }
  return m;
}

inline std::vector<std::uint64_t> column_values(const BitMatrix& h) {
  if (h.rows() > kMaxDim) throw ParameterError("column_values: more than " + std::to_string(kMaxDim) + " rows");
  std::vector<std::uint64_t> cols(h.cols(), 0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (h.get(i, j)) cols[j] |= std::uint64_t{1} << (h.rows() - 1 - i);
    }
  }
  return cols;
}

inline GeneratorSet generators_of(const BitMatrix& h) {
  return GeneratorSet(static_cast<unsigned>(h.rows()), column_values(h));
}

// One bit string per line, coordinate 1 first.
inline void write_generators_text(std::ostream& out, const GeneratorSet& s) {
  for (auto c : s.columns()) out << GroupElement(s.dim(), c).to_string() << '\n';
}

enum class Family { hamming, padded_hamming, zero_code, repetition, h2, h3, hs };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::hamming: return "hamming";
    case Family::padded_hamming: return "padded_hamming";
    case Family::zero_code: return "zero_code";
    case Family::repetition: return "repetition";
    case Family::h2: return "h2";
    case Family::h3: return "h3";
    case Family::hs: return "hs";
  }
  return "unknown";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::hamming, Family::padded_hamming, Family::zero_code, Family::repetition, Family::h2,
                   Family::h3, Family::hs}) {
    if (family_name(f) == name) return f;
  }
  if (name == "padded-hamming") return Family::padded_hamming;
  if (name == "zero-code") return Family::zero_code;
  return std::nullopt;
}

struct FamilySpec {
  Family family = Family::h2;
  unsigned r = 4;
  unsigned s = 2;  // recursion depth, hs only
  unsigned m = 1;  // zero-padding rows, padded_hamming only
  // Lets h2/h3/hs run below r = 4; triangle-freeness is then checked, not assumed.
  bool allow_small_r = false;

  // Depth actually used by the construction (h2 -> 2, h3 -> 3).
  unsigned depth() const {
    switch (family) {
      case Family::h2: return 2;
      case Family::h3: return 3;
      case Family::hs: return s;
      default: return 0;
    }
  }
};

/// Columns of the r x (2^r - 1) Hamming matrix: the nonzero vectors in lex order.
inline std::vector<std::uint64_t> hamming_columns(unsigned r) {
  if (r < 2) throw ParameterError("Hamming matrix needs r >= 2, got " + std::to_string(r));
  if (r > 30) throw CapacityError("Hamming matrix with r > 30 is not supported");
  std::vector<std::uint64_t> cols;
  cols.reserve((std::size_t{1} << r) - 1);
  for (std::uint64_t h = 1; h < (std::uint64_t{1} << r); ++h) cols.push_back(h);
  return cols;
}

inline BitMatrix hamming_matrix(unsigned r) { return matrix_of(GeneratorSet(r, hamming_columns(r))); }

/// Hamming columns with m zero coordinates appended, in F^{r+m}; 0 excluded.
inline GeneratorSet padded_hamming_generators(unsigned r, unsigned m) {
  if (m < 1) throw ParameterError("padded Hamming needs m >= 1");
  if (r + m > kMaxDim) throw ParameterError("padded Hamming: r + m too large");
  auto cols = hamming_columns(r);
  for (auto& c : cols) c <<= m;
  return GeneratorSet(r + m, std::move(cols));
}

/// Standard basis e_1, ..., e_r.
inline GeneratorSet zero_code_generators(unsigned r) {
  if (r < 1 || r > kMaxDim) throw ParameterError("zero-codeword family needs 1 <= r <= 63");
  std::vector<std::uint64_t> cols;
  for (unsigned i = 1; i <= r; ++i) cols.push_back(GroupElement::unit(r, i).value());
  return GeneratorSet(r, std::move(cols));
}

/// e_1, ..., e_r, 1_r, 0_r.
inline GeneratorSet repetition_generators(unsigned r) {
  if (r < 2 || r > kMaxDim) throw ParameterError("repetition family needs 2 <= r <= 63");
  auto basis = zero_code_generators(r).columns();
  basis.push_back(GroupElement::all_ones(r).value());
  basis.push_back(0);
  return GeneratorSet(r, std::move(basis));
}

namespace detail {
inline void check_recursive_r(unsigned r, bool allow_small_r) {
  if (r < 4 && !allow_small_r) {
    throw ParameterError("h2/h3/hs families need r >= 4 (got " + std::to_string(r) +
                         "); pass the small-r override to construct them anyway");
  }
  if (r < 2) throw ParameterError("h2/h3/hs families need r >= 2");
}
}  // namespace detail

/// Columns of the (r+2) x (2^r+2) matrix: 0, then (0,1)|h for every Hamming
/// column h, then (1,0)|0 and (1,1)|0.
inline GeneratorSet h2_generators(unsigned r, bool allow_small_r = false) {
  detail::check_recursive_r(r, allow_small_r);
  std::vector<std::uint64_t> cols{0};
  for (auto h : hamming_columns(r)) cols.push_back((std::uint64_t{0b01} << r) | h);
  cols.push_back(std::uint64_t{0b10} << r);
  cols.push_back(std::uint64_t{0b11} << r);
  return GeneratorSet(r + 2, std::move(cols));
}

inline BitMatrix h2_matrix(unsigned r, bool allow_small_r = false) {
  return matrix_of(h2_generators(r, allow_small_r));
}

inline std::size_t hs_row_count(unsigned s, unsigned r) { return std::size_t{s - 1} * r + s; }

inline std::size_t hs_column_count(unsigned s, unsigned r) {
  const std::size_t half = std::size_t{1} << (s - 1);
  return (half - 1) * ((std::size_t{1} << r) - 1) + half + 1;
}

/// Recursive family. Going from depth s-1 to s with previous columns C:
///   0·c·0^r for c in C (zero column first),
///   1·0···0·h for every Hamming column h (new bottom rows),
///   1·c·0^r for nonzero c in C.
inline GeneratorSet hs_generators(unsigned s, unsigned r, bool allow_small_r = false) {
  if (s < 2) throw ParameterError("hs family needs s >= 2, got " + std::to_string(s));
  detail::check_recursive_r(r, allow_small_r);
  if (hs_row_count(s, r) > kMaxDim) throw ParameterError("hs family: (s-1)r+s exceeds 63 rows");

  GeneratorSet current = h2_generators(r, allow_small_r);
  const auto hamming = hamming_columns(r);
  for (unsigned depth = 3; depth <= s; ++depth) {
    const unsigned prev_dim = current.dim();
    const unsigned dim = prev_dim + 1 + r;
    const std::uint64_t top = std::uint64_t{1} << (dim - 1);
    std::vector<std::uint64_t> cols;
    cols.reserve(2 * current.size() + hamming.size());
    for (auto c : current.columns()) cols.push_back(c << r);
    for (auto h : hamming) cols.push_back(top | h);
    for (auto c : current.columns()) {
      if (c != 0) cols.push_back(top | (c << r));
    }
    current = GeneratorSet(dim, std::move(cols));
  }
  if (current.dim() != hs_row_count(s, r) || current.size() != hs_column_count(s, r)) {
    throw std::logic_error("hs_generators: produced " + std::to_string(current.dim()) + "x" +
                           std::to_string(current.size()) + ", expected " + std::to_string(hs_row_count(s, r)) +
                           "x" + std::to_string(hs_column_count(s, r)));
  }
  return current;
}

inline BitMatrix hs_matrix(unsigned s, unsigned r, bool allow_small_r = false) {
  return matrix_of(hs_generators(s, r, allow_small_r));
}

inline void validate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::hamming:
      if (spec.r < 2) throw ParameterError("hamming family needs r >= 2");
      break;
    case Family::padded_hamming:
      if (spec.r < 2 || spec.m < 1) throw ParameterError("padded_hamming family needs r >= 2 and m >= 1");
      break;
    case Family::zero_code:
      if (spec.r < 1) throw ParameterError("zero_code family needs r >= 1");
      break;
    case Family::repetition:
      if (spec.r < 2) throw ParameterError("repetition family needs r >= 2");
      break;
    case Family::h2:
    case Family::h3:
      detail::check_recursive_r(spec.r, spec.allow_small_r);
      break;
    case Family::hs:
      if (spec.s < 2) throw ParameterError("hs family needs s >= 2");
      detail::check_recursive_r(spec.r, spec.allow_small_r);
      break;
  }
}

/// Generator set of the coset graph for a family. For the Hamming family this
/// is the full column set of the Hamming matrix (its coset graph is complete).
inline GeneratorSet generators_for(const FamilySpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::hamming: return GeneratorSet(spec.r, hamming_columns(spec.r));
    case Family::padded_hamming: return padded_hamming_generators(spec.r, spec.m);
    case Family::zero_code: return zero_code_generators(spec.r);
    case Family::repetition: return repetition_generators(spec.r);
    case Family::h2: return h2_generators(spec.r, spec.allow_small_r);
    case Family::h3: return hs_generators(3, spec.r, spec.allow_small_r);
    case Family::hs: return hs_generators(spec.s, spec.r, spec.allow_small_r);
  }
  throw ParameterError("unknown family");
}

inline BitMatrix parity_check_matrix_for(const FamilySpec& spec) { return matrix_of(generators_for(spec)); }

/// Smallest number of nonzero columns summing to zero, searched below `limit`.
struct MinDistance {
  std::size_t value = 0;
  bool at_least = false;  // true: no dependency below `value` was found

  std::string to_string() const { return at_least ? ">= " + std::to_string(value) : std::to_string(value); }
  friend bool operator==(const MinDistance&, const MinDistance&) = default;
};

/// Searches dependencies among the nonzero columns of H of size 2 (repeated
/// columns) and 3 (c1 + c2 = c3). `limit` may be 2, 3 or 4.
inline MinDistance min_distance(const BitMatrix& h, std::size_t limit = 4) {
  if (limit < 2 || limit > 4) throw ParameterError("min_distance: limit must be 2, 3 or 4");
  std::vector<std::uint64_t> cols;
  for (auto c : column_values(h)) {
    if (c != 0) cols.push_back(c);
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(cols.size());
  for (auto c : cols) {
    if (!seen.insert(c).second) return {2, false};
  }
  if (limit == 2) return {2, true};
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      if (seen.contains(cols[i] ^ cols[j])) return {3, false};
    }
  }
  return {limit, true};
}

}  // namespace cosetcodes
