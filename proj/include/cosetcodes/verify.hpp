#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cosetcodes/bitmatrix.hpp"
#include "cosetcodes/blockrank.hpp"
#include "cosetcodes/codefam.hpp"
#include "cosetcodes/cosetgraph.hpp"
#include "cosetcodes/elimination.hpp"
#include "cosetcodes/permring.hpp"
#include "cosetcodes/storage.hpp"

// Property suites run by the `verify` command. Each suite counts checks and
// keeps the first few failure messages.

namespace cosetcodes::verify {

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> messages;

  bool passed() const { return failures == 0; }

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (messages.size() < 10) messages.push_back(what);
  }
};

struct Options {
  std::optional<unsigned> r;  // restrict suites to one dimension
  std::uint64_t seed = 1;
  std::uint64_t cases = 1000;          // randomized cases per permring property
  std::uint64_t graphs_per_r = 100;    // random generator sets per r in the reassembly suite
  std::uint64_t guess_trials = 100000;
  bool inject_fault = false;           // flips one bit of every reassembled matrix
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"permring", "reassembly", "graph", "storage"};
  return names;
}

/// Random PermSum over F^dim with `terms` distinct support elements.
inline PermSum random_perm_sum(std::mt19937_64& rng, unsigned dim, std::size_t terms) {
  const std::uint64_t n = std::uint64_t{1} << dim;
  if (terms > n) terms = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> support;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  while (support.size() < terms) {
    const std::uint64_t v = rng() % n;
    if (!used[static_cast<std::size_t>(v)]) {
      used[static_cast<std::size_t>(v)] = true;
      support.push_back(v);
    }
  }
  return PermSum(dim, std::move(support));
}

inline PermSum random_odd_perm_sum(std::mt19937_64& rng, unsigned dim) {
  const std::size_t n = std::size_t{1} << dim;
  std::size_t terms = 1 + 2 * static_cast<std::size_t>(rng() % std::max<std::size_t>(1, std::min<std::size_t>(n, 9) / 2));
  if (terms > n) terms = n % 2 == 1 ? n : n - 1;
  return random_perm_sum(rng, dim, terms);
}

/// Random generator set over F^dim (each element kept with probability 1/4).
inline GeneratorSet random_generator_set(std::mt19937_64& rng, unsigned dim) {
  std::vector<std::uint64_t> cols;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << dim); ++v) {
    if (rng() % 4 == 0) cols.push_back(v);
  }
  return GeneratorSet(dim, std::move(cols));
}

inline std::vector<unsigned> dims_or(const Options& opt, unsigned lo, unsigned hi) {
  if (opt.r) return {*opt.r};
  std::vector<unsigned> out;
  for (unsigned d = lo; d <= hi; ++d) out.push_back(d);
  return out;
}

inline SuiteResult run_permring(const Options& opt) {
  SuiteResult res{"permring"};
  std::mt19937_64 rng(opt.seed);

  // Γ_v Γ_w = Γ_{v+w}, exhaustively, both in the ring and as dense matrices.
  for (unsigned d : dims_or(opt, 1, 4)) {
    const std::uint64_t n = std::uint64_t{1} << d;
    for (std::uint64_t v = 0; v < n; ++v) {
      for (std::uint64_t w = 0; w < n; ++w) {
        const GroupElement gv(d, v), gw(d, w);
        res.expect(mul(gamma(gv), gamma(gw)) == gamma(gv + gw),
                   "gamma product r=" + std::to_string(d) + " v=" + gv.to_string() + " w=" + gw.to_string());
        if (d <= 4) {
          res.expect(mat_mul(materialize(gamma(gv)), materialize(gamma(gw))) == materialize(gamma(gv + gw)),
                     "dense gamma product r=" + std::to_string(d));
        }
      }
    }
  }

  const auto dims = dims_or(opt, 1, 8);
  for (std::uint64_t c = 0; c < opt.cases; ++c) {
    const unsigned d = dims[c % dims.size()];
    const std::string tag = " (r=" + std::to_string(d) + ", case " + std::to_string(c) + ")";
    const PermSum a = random_perm_sum(rng, d, 1 + rng() % 6);
    const PermSum b = random_perm_sum(rng, d, 1 + rng() % 6);
    const PermSum e = random_perm_sum(rng, d, 1 + rng() % 6);
    res.expect(mul(a, b) == mul(b, a), "commutativity" + tag);
    res.expect(mul(mul(a, b), e) == mul(a, mul(b, e)), "associativity" + tag);
    res.expect(mul(a, add(b, e)) == add(mul(a, b), mul(a, e)), "distributivity" + tag);
    res.expect(mul(a, identity_sum(d)) == a, "identity" + tag);

    const PermSum odd = random_odd_perm_sum(rng, d);
    const PermSum odd2 = random_odd_perm_sum(rng, d);
    res.expect(self_inverse_check(odd), "odd A squares to I" + tag);
    res.expect(rank(materialize(odd)) == (std::size_t{1} << d), "odd A has full rank" + tag);
    res.expect(parity(mul(odd, odd2)) == Parity::odd, "odd*odd parity" + tag);
    res.expect(mul(odd, divide(odd, b)) == b, "divide" + tag);

    std::vector<PermSum> stripe{a, b, e};
    const auto scaled = stripe_scale(stripe, odd);
    std::vector<BitMatrix> before, after;
    for (const auto& p : stripe) before.push_back(materialize(p));
    for (const auto& p : scaled) after.push_back(materialize(p));
    res.expect(row_space_equal(hstack(before), hstack(after)), "stripe_scale row space" + tag);

    std::vector<GroupElement> shifts;
    for (int k = 0; k < 3; ++k) shifts.emplace_back(d, rng() % (std::uint64_t{1} << d));
    res.expect(class_concat_rank(a, shifts) == rank(materialize(a)), "class_concat_rank" + tag);
  }
  return res;
}

inline SuiteResult run_reassembly(const Options& opt) {
  SuiteResult res{"reassembly"};
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  for (unsigned d : dims_or(opt, 3, 8)) {
    for (std::uint64_t g = 0; g < opt.graphs_per_r; ++g) {
      const GeneratorSet s = random_generator_set(rng, d);
      const CosetGraph graph = build_graph(s);
      const BitMatrix direct = parity_matrix(graph);
      auto with_zero = s.nonzero();
      with_zero.push_back(0);
      const GeneratorSet closed(d, with_zero);
      for (unsigned l = 0; l <= d; ++l) {
        BitMatrix rebuilt = reassemble(block_decompose(closed, l));
        if (opt.inject_fault) rebuilt.flip(0, rebuilt.cols() - 1);
        res.expect(rebuilt == direct, "reassembly r=" + std::to_string(d) + " l=" + std::to_string(l) +
                                          " graph " + std::to_string(g));
      }
      const std::size_t dense_rank = rank(direct);
      res.expect(block_rank(s).rank == dense_rank, "block rank r=" + std::to_string(d) + " graph " + std::to_string(g));
      res.expect(block_rank(s, d / 2).rank == dense_rank,
                 "block rank (half prefix) r=" + std::to_string(d) + " graph " + std::to_string(g));
    }
  }

  // Repetition family at prefix length 2: D_00 = A_{r-2} + J, D_01 = D_10 = I, D_11 = J.
  for (unsigned d : dims_or(opt, 4, 8)) {
    if (d < 4) continue;
    const auto blocks = block_decompose(repetition_generators(d), 2);
    const unsigned k = d - 2;
    const PermSum j = gamma(GroupElement::all_ones(k));
    const PermSum a_prev = repetition_generators(k).as_perm_sum();
    const std::string tag = " (r=" + std::to_string(d) + ")";
    res.expect(blocks.block(0b00) == add(a_prev, j), "repetition D_00 = A_{r-2} + J" + tag);
    res.expect(blocks.block(0b01) == identity_sum(k), "repetition D_01 = I" + tag);
    res.expect(blocks.block(0b10) == identity_sum(k), "repetition D_10 = I" + tag);
    res.expect(blocks.block(0b11) == j, "repetition D_11 = J" + tag);
  }
  return res;
}

/// Explicit triangle search over vertex triples containing vertex 0 (the graph
/// is vertex-transitive, so this finds a triangle iff one exists).
inline bool has_triangle_by_search(const CosetGraph& g) {
  const std::uint64_t n = g.vertex_count();
  for (std::uint64_t a = 1; a < n; ++a) {
    if (!g.adjacent(0, a)) continue;
    for (std::uint64_t b = a + 1; b < n; ++b) {
      if (g.adjacent(0, b) && g.adjacent(a, b)) return true;
    }
  }
  return false;
}

inline SuiteResult run_graph(const Options& opt) {
  SuiteResult res{"graph"};
  const auto rs = dims_or(opt, 4, 6);
  for (unsigned r : rs) {
    if (r < 4) continue;
    for (unsigned s = 2; s <= 3; ++s) {
      const GeneratorSet gens = hs_generators(s, r);
      const std::string tag = " (s=" + std::to_string(s) + ", r=" + std::to_string(r) + ")";
      res.expect(is_triangle_free(gens), "triangle-free" + tag);
      res.expect(is_connected(gens), "connected" + tag);
      res.expect(min_distance(matrix_of(gens), 4) == MinDistance{4, true}, "distance >= 4" + tag);
    }
  }
  std::mt19937_64 rng(opt.seed ^ 0xc2b2ae3d27d4eb4fULL);
  for (unsigned d : dims_or(opt, 2, 6)) {
    if (d > 6) continue;
    for (int k = 0; k < 20; ++k) {
      const GeneratorSet s = random_generator_set(rng, d);
      res.expect(is_triangle_free(s) == !has_triangle_by_search(build_graph(s)),
                 "triangle test vs search r=" + std::to_string(d));
    }
  }
  for (unsigned r = 2; r <= 4; ++r) {
    for (unsigned m = 1; m <= 3; ++m) {
      const GeneratorSet gens = padded_hamming_generators(r, m);
      const std::string tag = " (r=" + std::to_string(r) + ", m=" + std::to_string(m) + ")";
      res.expect(!is_connected(gens), "padded Hamming disconnected" + tag);
      res.expect(rank(parity_matrix(build_graph(gens))) == (std::size_t{1} << m), "padded Hamming rank 2^m" + tag);
    }
  }
  return res;
}

inline SuiteResult run_storage(const Options& opt) {
  SuiteResult res{"storage"};
  std::vector<FamilySpec> specs{{Family::zero_code, 3}, {Family::zero_code, 4}, {Family::repetition, 4},
                                {Family::h2, 4}};
  for (const auto& spec : specs) {
    const std::string tag = " (" + std::string(family_name(spec.family)) + ", r=" + std::to_string(spec.r) + ")";
    const CosetGraph g = build_graph(generators_for(spec));
    const BitMatrix pm = parity_matrix(g);
    const auto basis = kernel_basis(pm);
    res.expect(basis.size() + rank(pm) == g.vertex_count(), "dim + rank = N" + tag);
    for (const auto& k : basis) res.expect(verify_repair(g, k), "kernel vector repairs" + tag);
    const auto outcome = guessing_equivalence(g, opt.guess_trials, opt.seed);
    res.expect(outcome.mismatches == 0, "guessing success == kernel membership" + tag);
    res.expect(outcome.success_log2 == static_cast<std::int64_t>(basis.size()) -
                                           static_cast<std::int64_t>(g.vertex_count()),
               "P_s = 2^{dim-N}" + tag);
  }
  return res;
}

inline SuiteResult run_suite(const std::string& name, const Options& opt) {
  if (name == "permring") return run_permring(opt);
  if (name == "reassembly") return run_reassembly(opt);
  if (name == "graph") return run_graph(opt);
  if (name == "storage") return run_storage(opt);
  throw ParameterError("unknown verify suite '" + name + "'");
}

}  // namespace cosetcodes::verify
