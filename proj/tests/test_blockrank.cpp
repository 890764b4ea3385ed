#include <gtest/gtest.h>

#include <random>

#include "cosetcodes/blockrank.hpp"
#include "cosetcodes/cosetgraph.hpp"
#include "cosetcodes/elimination.hpp"
#include "cosetcodes/storage.hpp"
#include "cosetcodes/verify.hpp"
#include "oracles.hpp"

namespace cc = cosetcodes;

namespace {

std::size_t oracle_rank(const cc::GeneratorSet& s) {
  return oracle::naive_rank(oracle::cayley_sum(s.dim(), s.columns(), !s.has_zero()));
}

}  // namespace

TEST(RingProduct, MatchesConvolution) {
  std::mt19937_64 rng(2);
  for (unsigned m = 0; m <= 8; ++m) {
    const std::size_t n = std::size_t{1} << m;
    for (int k = 0; k < 20; ++k) {
      cc::detail::RingElement a(cc::words_for(n), 0), b(cc::words_for(n), 0);
      std::vector<int> av(n), bv(n);
      for (std::size_t g = 0; g < n; ++g) {
        av[g] = static_cast<int>(rng() & 1u);
        bv[g] = static_cast<int>(rng() & 1u);
        if (av[g]) a[g / 64] |= cc::Word{1} << (g % 64);
        if (bv[g]) b[g / 64] |= cc::Word{1} << (g % 64);
      }
      auto ta = cc::detail::ring_transform(a, m);
      const auto tb = cc::detail::ring_transform(b, m);
      for (std::size_t g = 0; g < n; ++g) ta[g] *= tb[g];
      const auto c = cc::detail::ring_from_transform(ta, m);
      for (std::size_t g = 0; g < n; ++g) {
        int want = 0;
        for (std::size_t h = 0; h < n; ++h) want ^= av[h] & bv[g ^ h];
        EXPECT_EQ(static_cast<int>((c[g / 64] >> (g % 64)) & 1u), want);
      }
    }
  }
}

TEST(Translate, FlipsOneIndexBit) {
  std::mt19937_64 rng(3);
  const std::size_t bits = 3 * 256;
  std::vector<cc::Word> v(cc::words_for(bits));
  for (auto& w : v) w = rng();
  std::vector<cc::Word> out;
  for (unsigned b = 0; b < 8; ++b) {
    cc::detail::translate(v, b, out);
    for (std::size_t i = 0; i < bits; ++i) {
      const std::size_t j = i ^ (std::size_t{1} << b);
      EXPECT_EQ((out[i / 64] >> (i % 64)) & 1u, (v[j / 64] >> (j % 64)) & 1u);
    }
  }
}

TEST(BlockRank, RandomSetsAgainstOracle) {
  std::mt19937_64 rng(17);
  for (unsigned d = 1; d <= 8; ++d) {
    for (int k = 0; k < 12; ++k) {
      const auto s = cc::verify::random_generator_set(rng, d);
      const auto want = oracle_rank(s);
      for (unsigned l = 0; l <= d; ++l) EXPECT_EQ(cc::block_rank(s, l).rank, want) << "d=" << d << " l=" << l;
      EXPECT_EQ(cc::block_rank(s).rank, want);
    }
  }
}

TEST(BlockRank, FamiliesAgainstDense) {
  for (unsigned r = 1; r <= 10; ++r) {
    const auto z = cc::zero_code_generators(r);
    EXPECT_EQ(cc::block_rank(z).rank, cc::rank(cc::parity_matrix(cc::build_graph(z))));
  }
  for (unsigned r = 2; r <= 10; ++r) {
    const auto rep = cc::repetition_generators(r);
    EXPECT_EQ(cc::block_rank(rep).rank, cc::rank(cc::parity_matrix(cc::build_graph(rep))));
  }
  for (unsigned r = 4; r <= 5; ++r) {
    const auto h3 = cc::hs_generators(3, r);
    const auto b = cc::block_rank(h3);
    EXPECT_EQ(b.prefix_len, 3u);
    EXPECT_EQ(b.pivots, 1u);
    EXPECT_EQ(b.rank, cc::rank(cc::parity_matrix(cc::build_graph(h3))));
  }
}

TEST(BlockRank, PrefixChoice) {
  // An odd number of terms (with the implicit zero) already makes the whole sum a unit.
  EXPECT_EQ(cc::default_prefix_len(cc::zero_code_generators(4)), 0u);
  EXPECT_EQ(cc::block_rank(cc::zero_code_generators(4)).rank, 16u);
  EXPECT_EQ(cc::default_prefix_len(cc::h2_generators(5)), 2u);
  EXPECT_THROW(cc::block_rank(cc::zero_code_generators(4), 5), cc::ParameterError);
}

TEST(StorageEngine, AutomaticFallsBackToBlock) {
  const cc::FamilySpec spec{cc::Family::hs, 4, 3};
  const auto dense = cc::storage_report(spec);
  EXPECT_EQ(dense.engine, cc::RankEngine::dense);
  cc::ScopedMemoryCap cap(1 << 18);
  const auto block = cc::storage_report(spec);
  EXPECT_EQ(block.engine, cc::RankEngine::block);
  EXPECT_EQ(block.rank, dense.rank);
  EXPECT_THROW(cc::storage_report(spec, cc::RankMethod::automatic, cc::RankEngine::dense), cc::CapacityError);
}
