#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cosetcodes/bitmatrix.hpp"
#include "cosetcodes/bitvector.hpp"
#include "cosetcodes/blockrank.hpp"
#include "cosetcodes/codefam.hpp"
#include "cosetcodes/cosetgraph.hpp"
#include "cosetcodes/elimination.hpp"
#include "cosetcodes/errors.hpp"

namespace cosetcodes {

/// Non-negative fraction in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw ParameterError("Rational: zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const auto lhs = static_cast<unsigned __int128>(a.num) * b.den;
    const auto rhs = static_cast<unsigned __int128>(b.num) * a.den;
    return lhs <=> rhs;
  }
};

/// What the construction promises about rank(parity matrix).
enum class BoundKind {
  exact_rank,     // rank == rank_bound
  rank_at_most,   // rank <= rank_bound
};

struct RankBound {
  BoundKind kind = BoundKind::exact_rank;
  std::uint64_t rank_bound = 0;
  std::uint64_t vertices = 1;

  // Equivalent statement about the rate: 1 - rank_bound / N.
  Rational rate_rhs() const { return Rational::make(vertices - rank_bound, vertices); }

  bool met_by(std::uint64_t rank) const {
    return kind == BoundKind::exact_rank ? rank == rank_bound : rank <= rank_bound;
  }
};

inline std::uint64_t pow2(unsigned e) {
  if (e >= 64) throw ParameterError("pow2: exponent too large");
  return std::uint64_t{1} << e;
}

/// The rank formula or rank bound the construction comes with.
inline RankBound known_rank_bound(const FamilySpec& spec) {
  const unsigned r = spec.r;
  switch (spec.family) {
    case Family::hamming:
      // Ã of the complete graph K_{2^r} is the all-ones matrix.
      return {BoundKind::exact_rank, 1, pow2(r)};
    case Family::padded_hamming:
      return {BoundKind::exact_rank, pow2(spec.m), pow2(r + spec.m)};
    case Family::zero_code:
      return {BoundKind::exact_rank, r % 2 == 0 ? pow2(r) : pow2(r - 1), pow2(r)};
    case Family::repetition:
      return {BoundKind::exact_rank, r % 2 == 1 ? pow2(r) : (pow2(r) - pow2(r / 2)) / 2, pow2(r)};
    case Family::h2:
      // Proven: rank <= 2^r + 4. The measured rank is 2^r + 2, so this is kept
      // as an upper bound rather than an equality.
      return {BoundKind::rank_at_most, pow2(r) + 4, pow2(r + 2)};
    case Family::h3:
      return {BoundKind::rank_at_most, pow2(2 * r) + 3 * pow2(r + 2), pow2(2 * r + 3)};
    case Family::hs: {
      // N (2^-s + 2^-r+1) with N = 2^{(s-1)r+s}.
      const unsigned s = spec.s;
      const unsigned log_n = (s - 1) * r + s;
      return {BoundKind::rank_at_most, pow2(log_n - s) + pow2(log_n - r + 1), pow2(log_n)};
    }
  }
  throw ParameterError("unknown family");
}

/// How the rank is obtained: elimination on the dense parity matrix, or the
/// block method that never builds it. `automatic` picks dense when the matrix
/// fits under the memory cap.
enum class RankEngine { automatic, dense, block };

inline std::string_view engine_name(RankEngine e) {
  switch (e) {
    case RankEngine::automatic:
      return "automatic";
    case RankEngine::dense:
      return "dense";
    case RankEngine::block:
      return "block";
  }
  return "?";
}

inline std::optional<RankEngine> parse_engine(std::string_view name) {
  if (name == "automatic" || name == "auto") return RankEngine::automatic;
  if (name == "dense") return RankEngine::dense;
  if (name == "block") return RankEngine::block;
  return std::nullopt;
}

struct StorageReport {
  FamilySpec spec;
  std::uint64_t vertices = 0;  // N = 2^dim
  std::uint64_t rank = 0;
  std::uint64_t dimension = 0;  // N - rank
  Rational rate;
  std::uint64_t guessing_number = 0;  // N + log2 P_s = N - rank
  bool triangle_free = false;
  bool connected = false;
  bool augmented = true;  // parity matrix is A + I (no zero generator)
  RankBound bound;
  bool bound_met = false;
  RankEngine engine = RankEngine::dense;

  // log2 of the success probability of the parity strategy: dim - N.
  std::int64_t success_log2() const { return static_cast<std::int64_t>(dimension) - static_cast<std::int64_t>(vertices); }
};

inline StorageReport report_from_rank(const FamilySpec& spec, const GeneratorSet& gens, std::uint64_t rank_value) {
  StorageReport rep;
  rep.spec = spec;
  rep.vertices = pow2(gens.dim());
  rep.rank = rank_value;
  rep.dimension = rep.vertices - rank_value;
  rep.rate = Rational::make(rep.dimension, rep.vertices);
  rep.guessing_number = rep.dimension;
  rep.triangle_free = is_triangle_free(gens);
  rep.connected = is_connected(gens);
  rep.augmented = !gens.has_zero();
  rep.bound = known_rank_bound(spec);
  rep.bound_met = rep.bound.met_by(rank_value);
  return rep;
}

inline RankEngine resolve_engine(const GeneratorSet& gens, RankEngine engine) {
  if (engine != RankEngine::automatic) return engine;
  if (gens.dim() >= 32) return RankEngine::block;
  const std::size_t n = std::size_t{1} << gens.dim();
  return BitMatrix::bytes_for(n, n) <= memory_cap() ? RankEngine::dense : RankEngine::block;
}

/// Builds the family and its coset graph and measures the rank of the parity
/// matrix with the chosen engine.
inline StorageReport storage_report(const FamilySpec& spec, RankMethod method = RankMethod::automatic,
                                    RankEngine engine = RankEngine::automatic) {
  GeneratorSet gens = generators_for(spec);
  const RankEngine used = resolve_engine(gens, engine);
  std::uint64_t rk = 0;
  if (used == RankEngine::dense) {
    rk = rank(parity_matrix(build_graph(gens)), method);
  } else {
    rk = block_rank(gens).rank;
  }
  StorageReport rep = report_from_rank(spec, gens, rk);
  rep.engine = used;
  return rep;
}

/// Every vertex value equals the mod-2 sum of its neighbours' values.
inline bool verify_repair(const CosetGraph& g, const BitVector& c) {
  if (c.size() != g.vertex_count()) {
    throw DimensionError("verify_repair: word has length " + std::to_string(c.size()) + ", graph has " +
                         std::to_string(g.vertex_count()) + " vertices");
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    bool sum = false;
    for (auto h : g.steps()) sum ^= c.get(v ^ static_cast<std::size_t>(h));
    if (sum != c.get(v)) return false;
  }
  return true;
}

struct GuessOutcome {
  std::uint64_t trials = 0;
  std::uint64_t matches = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t successes = 0;  // trials where every vertex guessed right
  std::int64_t success_log2 = 0;  // exact P_s = 2^{dim - N}
};

namespace detail {
// Every vertex guesses the mod-2 sum of what it sees on its neighbours.
inline bool parity_strategy_wins(const CosetGraph& g, const BitVector& x) { return verify_repair(g, x); }

inline void record_trial(GuessOutcome& out, const CosetGraph& g, const BitMatrix& parity, const BitVector& x) {
  const bool won = parity_strategy_wins(g, x);
  const bool in_kernel = parity.apply(x).is_zero();
  ++out.trials;
  if (won) ++out.successes;
  if (won == in_kernel) {
    ++out.matches;
  } else {
    ++out.mismatches;
  }
}
}  // namespace detail

/// Plays the guessing game on the given colourings.
inline GuessOutcome guessing_equivalence(const CosetGraph& g, std::span<const BitVector> colorings) {
  const BitMatrix parity = parity_matrix(g);
  GuessOutcome out;
  out.success_log2 = -static_cast<std::int64_t>(rank(parity));
  for (const auto& x : colorings) detail::record_trial(out, g, parity, x);
  return out;
}

/// Plays the guessing game on `trials` uniform colourings. Colouring words are
/// consecutive outputs of std::mt19937_64(seed), low bit = vertex 0, the last
/// word of each colouring masked to N bits; the stream is fixed by the standard
/// so outcomes are identical on every platform.
inline GuessOutcome guessing_equivalence(const CosetGraph& g, std::uint64_t trials, std::uint64_t seed) {
  const BitMatrix parity = parity_matrix(g);
  GuessOutcome out;
  out.success_log2 = -static_cast<std::int64_t>(rank(parity));
  std::mt19937_64 rng(seed);
  const std::size_t n = g.vertex_count();
  BitVector x(n);
  std::vector<Word> buffer(x.word_count());
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& w : buffer) w = rng();
    x.assign_words(buffer);
    detail::record_trial(out, g, parity, x);
  }
  return out;
}

/// All 2^dim codewords of the storage code, spanned from a kernel basis in
/// Gray-code order (starting from the zero word).
inline std::vector<BitVector> kernel_enumerate(const CosetGraph& g, std::uint64_t cap) {
  const auto basis = kernel_basis(parity_matrix(g));
  if (basis.size() >= 63 || (std::uint64_t{1} << basis.size()) > cap) {
    throw CapacityError("kernel_enumerate: 2^" + std::to_string(basis.size()) + " codewords exceed cap " +
                        std::to_string(cap));
  }
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  std::vector<BitVector> words;
  words.reserve(total);
  BitVector current(g.vertex_count());
  words.push_back(current);
  for (std::uint64_t i = 1; i < total; ++i) {
    current ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    words.push_back(current);
  }
  return words;
}

struct SweepResult {
  std::vector<StorageReport> reports;  // in (s, r) order
  bool all_bounds_met = true;
  // For each depth s, whether the rate strictly increases with r along the grid.
  std::vector<std::pair<unsigned, bool>> rate_increasing_in_r;
};

/// Storage reports for the recursive family over (s, r) pairs, sorted by (s, r),
/// each checked against rate >= 1 - 2^-s - 2^-r+1.
inline SweepResult theorem_sweep(std::vector<std::pair<unsigned, unsigned>> pairs,
                                 RankMethod method = RankMethod::automatic,
                                 RankEngine engine = RankEngine::automatic) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  SweepResult out;
  for (auto [s, r] : pairs) {
    FamilySpec spec{Family::hs, r, s};
    out.reports.push_back(storage_report(spec, method, engine));
    out.all_bounds_met = out.all_bounds_met && out.reports.back().bound_met;
  }
  for (std::size_t i = 0; i < out.reports.size();) {
    const unsigned s = out.reports[i].spec.s;
    bool increasing = true;
    std::size_t j = i + 1;
    for (; j < out.reports.size() && out.reports[j].spec.s == s; ++j) {
      increasing = increasing && out.reports[j - 1].rate < out.reports[j].rate;
    }
    out.rate_increasing_in_r.emplace_back(s, increasing);
    i = j;
  }
  return out;
}

}  // namespace cosetcodes
