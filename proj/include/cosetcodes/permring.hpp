#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosetcodes/bitmatrix.hpp"
#include "cosetcodes/elimination.hpp"
#include "cosetcodes/errors.hpp"

namespace cosetcodes {

inline constexpr unsigned kMaxDim = 63;

/// Vector of F_2^dim stored as an integer. Coordinate 1 is the most significant
/// bit, so integer order coincides with lexicographic order of the vectors.
class GroupElement {
 public:
  constexpr GroupElement() = default;
  GroupElement(unsigned dim, std::uint64_t value) : dim_(dim), value_(value) {
    if (dim > kMaxDim) throw ParameterError("GroupElement: dimension above " + std::to_string(kMaxDim));
    if (dim < 64 && (value >> dim) != 0) throw ParameterError("GroupElement: value does not fit in dimension");
  }

  static GroupElement zero(unsigned dim) { return {dim, 0}; }

  // e_i, 1-based.
  static GroupElement unit(unsigned dim, unsigned i) {
    if (i < 1 || i > dim) throw ParameterError("unit vector index out of range");
    return {dim, std::uint64_t{1} << (dim - i)};
  }

  static GroupElement all_ones(unsigned dim) { return {dim, dim == 0 ? 0 : (~std::uint64_t{0} >> (64 - dim))}; }

  static GroupElement from_bits(std::string_view bits) {
    std::uint64_t v = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw ParameterError("GroupElement: bit string may only contain '0' and '1'");
      v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return {static_cast<unsigned>(bits.size()), v};
  }

  unsigned dim() const { return dim_; }
  std::uint64_t value() const { return value_; }

  // 1-based coordinate.
  bool coordinate(unsigned i) const { return (value_ >> (dim_ - i)) & 1u; }

  std::string to_string() const {
    std::string s(dim_, '0');
    for (unsigned i = 1; i <= dim_; ++i) {
      if (coordinate(i)) s[i - 1] = '1';
    }
    return s;
  }

  friend GroupElement operator+(GroupElement a, GroupElement b) {
    if (a.dim_ != b.dim_) throw DimensionError("GroupElement add: dimension mismatch");
    return {a.dim_, a.value_ ^ b.value_};
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  unsigned dim_ = 0;
  std::uint64_t value_ = 0;
};

/// Element of the ring of GF(2) sums of translation matrices Γ_v over F_2^dim,
/// held as its support: the set V with A = Σ_{v∈V} Γ_v.
class PermSum {
 public:
  PermSum() = default;
  explicit PermSum(unsigned dim) : dim_(dim) {
    if (dim > kMaxDim) throw ParameterError("PermSum: dimension above " + std::to_string(kMaxDim));
  }

  // Sum of Γ_v over `terms`; repeated terms cancel in pairs.
  PermSum(unsigned dim, std::vector<std::uint64_t> terms) : PermSum(dim) {
    for (auto v : terms) {
      if (dim < 64 && (v >> dim) != 0) throw ParameterError("PermSum: term does not fit in dimension");
    }
    support_ = cancel_pairs(std::move(terms));
  }

  PermSum(unsigned dim, std::initializer_list<std::uint64_t> terms)
      : PermSum(dim, std::vector<std::uint64_t>(terms)) {}

  unsigned dim() const { return dim_; }
  std::size_t order() const { return std::size_t{1} << dim_; }

  // Sorted, duplicate-free.
  std::span<const std::uint64_t> support() const { return support_; }
  std::size_t weight() const { return support_.size(); }
  bool is_zero() const { return support_.empty(); }
  bool contains(std::uint64_t v) const { return std::binary_search(support_.begin(), support_.end(), v); }

  friend bool operator==(const PermSum&, const PermSum&) = default;

  static std::vector<std::uint64_t> cancel_pairs(std::vector<std::uint64_t> terms) {
    std::sort(terms.begin(), terms.end());
    std::vector<std::uint64_t> out;
    out.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(terms[i]);
      i = j;
    }
    return out;
  }

 private:
  unsigned dim_ = 0;
  std::vector<std::uint64_t> support_;
};

enum class Parity { even, odd };

inline PermSum gamma(GroupElement v) { return PermSum(v.dim(), {v.value()}); }

inline PermSum identity_sum(unsigned dim) { return PermSum(dim, {0}); }

namespace detail {
inline void require_same_dim(const PermSum& a, const PermSum& b, const char* op) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(op) + ": PermSum dimensions differ");
}
}  // namespace detail

/// Support is the symmetric difference of the supports.
inline PermSum add(const PermSum& a, const PermSum& b) {
  detail::require_same_dim(a, b, "add");
  std::vector<std::uint64_t> out;
  std::set_symmetric_difference(a.support().begin(), a.support().end(), b.support().begin(), b.support().end(),
                                std::back_inserter(out));
  return PermSum(a.dim(), std::move(out));
}

/// Γ_v Γ_w = Γ_{v+w}, extended bilinearly; coincident sums cancel mod 2.
inline PermSum mul(const PermSum& a, const PermSum& b) {
  detail::require_same_dim(a, b, "mul");
  std::vector<std::uint64_t> terms;
  terms.reserve(a.weight() * b.weight());
  for (auto v : a.support()) {
    for (auto w : b.support()) terms.push_back(v ^ w);
  }
  return PermSum(a.dim(), std::move(terms));
}

inline Parity parity(const PermSum& a) { return a.weight() % 2 == 1 ? Parity::odd : Parity::even; }

inline void require_odd(const PermSum& a, const char* op) {
  if (parity(a) != Parity::odd) {
    throw PreconditionError(std::string(op) + ": requires a PermSum with an odd number of terms, got " +
                            std::to_string(a.weight()));
  }
}

/// Whether A·A = I. Odd-weight sums always square to the identity.
inline bool self_inverse_check(const PermSum& a) {
  require_odd(a, "self_inverse_check");
  return mul(a, a) == identity_sum(a.dim());
}

/// C with A·C = C·A = B, for odd A; since A² = I this is C = A·B.
inline PermSum divide(const PermSum& a, const PermSum& b) {
  require_odd(a, "divide");
  detail::require_same_dim(a, b, "divide");
  PermSum c = mul(a, b);
  if (mul(a, c) != b) throw std::logic_error("divide: A*(A*B) != B for odd A");
  return c;
}

/// Multiplies each block of a horizontal stripe by an odd B; the row space of
/// the concatenated stripe is unchanged.
inline std::vector<PermSum> stripe_scale(std::span<const PermSum> blocks, const PermSum& b) {
  require_odd(b, "stripe_scale");
  std::vector<PermSum> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) {
    detail::require_same_dim(block, b, "stripe_scale");
    out.push_back(mul(block, b));
  }
  return out;
}

/// Dense 2^dim x 2^dim matrix with entry (u, w) = 1 iff u + w is in the support.
inline BitMatrix materialize(const PermSum& a) {
  if (a.dim() >= 32) throw CapacityError("materialize: dimension too large for a dense matrix");
  const std::size_t n = a.order();
  BitMatrix m(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : a.support()) m.set(u, u ^ static_cast<std::size_t>(v));
  }
  return m;
}

/// rank of [A·Γ_{u_1} | A·Γ_{u_2} | ...]; equals rank(A) for any shift list.
inline std::size_t class_concat_rank(const PermSum& a, std::span<const GroupElement> shifts) {
  if (shifts.empty()) throw PreconditionError("class_concat_rank: shift list is empty");
  std::vector<BitMatrix> blocks;
  blocks.reserve(shifts.size());
  for (const auto& u : shifts) {
    if (u.dim() != a.dim()) throw DimensionError("class_concat_rank: shift dimension mismatch");
    blocks.push_back(materialize(mul(a, gamma(u))));
  }
  return rank(hstack(blocks));
}

}  // namespace cosetcodes
