#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "cosetcodes/bitmatrix.hpp"
#include "cosetcodes/codefam.hpp"
#include "cosetcodes/elimination.hpp"
#include "cosetcodes/errors.hpp"
#include "cosetcodes/permring.hpp"

namespace cosetcodes {

/// Cayley graph Cay(F_2^dim, S): v ~ v + h for every nonzero generator h. A zero
/// generator stands for a self-loop at every vertex. Edges are never stored.
class CosetGraph {
 public:
  explicit CosetGraph(GeneratorSet generators)
      : generators_(std::move(generators)), has_zero_(generators_.has_zero()), steps_(generators_.nonzero()) {}

  unsigned dim() const { return generators_.dim(); }
  std::size_t vertex_count() const { return std::size_t{1} << dim(); }
  const GeneratorSet& generators() const { return generators_; }
  bool has_zero() const { return has_zero_; }
  std::size_t degree() const { return steps_.size(); }
  const std::vector<std::uint64_t>& steps() const { return steps_; }

  std::vector<std::uint64_t> neighbors(std::uint64_t v) const {
    std::vector<std::uint64_t> out;
    out.reserve(steps_.size());
    for (auto h : steps_) out.push_back(v ^ h);
    return out;
  }

  bool adjacent(std::uint64_t v, std::uint64_t w) const {
    const std::uint64_t d = v ^ w;
    if (d == 0) return false;
    for (auto h : steps_) {
      if (h == d) return true;
    }
    return false;
  }

 private:
  GeneratorSet generators_;
  bool has_zero_;
  std::vector<std::uint64_t> steps_;
};

// GeneratorSet already rejects duplicate columns.
inline CosetGraph build_graph(GeneratorSet s) { return CosetGraph(std::move(s)); }

inline void check_dense_size(unsigned dim, const char* what) {
  if (dim >= 32) throw CapacityError(std::string(what) + ": 2^" + std::to_string(dim) + " vertices");
  check_capacity(BitMatrix::bytes_for(std::size_t{1} << dim, std::size_t{1} << dim), what);
}

/// Σ_{h ∈ S ∪ {0}} Γ_h: the augmented adjacency A + I when 0 is not a
/// generator, and A itself (diagonal already present) when it is. Row v is the
/// repair equation c_v + Σ_{w ~ v} c_w = 0.
inline BitMatrix parity_matrix(const CosetGraph& g) {
  check_dense_size(g.dim(), "parity_matrix");
  const std::size_t n = g.vertex_count();
  BitMatrix m(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    m.set(v, v);
    for (auto h : g.steps()) m.set(v, v ^ static_cast<std::size_t>(h));
  }
  return m;
}

/// No two distinct nonzero generators sum to a third nonzero generator.
inline bool is_triangle_free(const GeneratorSet& s) {
  const auto steps = s.nonzero();
  const std::unordered_set<std::uint64_t> members(steps.begin(), steps.end());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      if (members.contains(steps[i] ^ steps[j])) return false;
    }
  }
  return true;
}

/// The nonzero generators span F_2^dim.
inline bool is_connected(const GeneratorSet& s) {
  if (s.dim() == 0) return true;
  return rank(matrix_of(s)) == s.dim();
}

/// Blocks D_u of the adjacency sum indexed by an ℓ-bit prefix u. D_u is the sum
/// of Γ_t over the suffixes t of generators with prefix u.
struct BlockDecomposition {
  unsigned dim = 0;
  unsigned prefix_len = 0;
  std::vector<PermSum> blocks;  // indexed by the prefix value u in [0, 2^ℓ)

  unsigned suffix_dim() const { return dim - prefix_len; }
  const PermSum& block(std::uint64_t u) const { return blocks.at(static_cast<std::size_t>(u)); }
};

inline BlockDecomposition block_decompose(const GeneratorSet& s, unsigned prefix_len) {
  if (prefix_len > s.dim()) throw ParameterError("block_decompose: prefix longer than the dimension");
  if (prefix_len >= 32) throw CapacityError("block_decompose: too many prefixes");
  const unsigned suffix = s.dim() - prefix_len;
  const std::uint64_t suffix_mask = suffix == 0 ? 0 : (~std::uint64_t{0} >> (64 - suffix));
  std::vector<std::vector<std::uint64_t>> terms(std::size_t{1} << prefix_len);
  for (auto h : s.columns()) terms[static_cast<std::size_t>(h >> suffix)].push_back(h & suffix_mask);
  BlockDecomposition d{s.dim(), prefix_len, {}};
  d.blocks.reserve(terms.size());
  for (auto& t : terms) d.blocks.emplace_back(suffix, std::move(t));
  return d;
}

/// Block matrix whose (i, j) block is D_{v_i + v_j}; equals Σ_{h∈S} Γ_h.
inline BitMatrix reassemble(const BlockDecomposition& d) {
  check_dense_size(d.dim, "reassemble");
  const std::size_t prefixes = std::size_t{1} << d.prefix_len;
  const std::size_t side = std::size_t{1} << d.suffix_dim();
  BitMatrix out(prefixes * side, prefixes * side);
  for (std::size_t i = 0; i < prefixes; ++i) {
    for (std::size_t j = 0; j < prefixes; ++j) {
      const PermSum& block = d.blocks[i ^ j];
      for (std::size_t t = 0; t < side; ++t) {
        for (auto h : block.support()) out.set(i * side + t, j * side + (t ^ static_cast<std::size_t>(h)));
      }
    }
  }
  return out;
}

}  // namespace cosetcodes
