#include "doctest.h"

#include <atomic>
#include <random>
#include <sstream>

#include "hamcoh/error.hpp"
#include "hamcoh/rank.hpp"
#include "oracle.hpp"

using namespace hamcoh;

TEST_CASE("sparse rank agrees with dense elimination") {
  std::mt19937_64 rng(20260101);
  std::size_t mismatches = 0, total = 0;
  for (unsigned p : {3u, 5u, 7u}) {
    const PrimeField F(p);
    for (int t = 0; t < 400; ++t) {
      const auto m = oracle::random_matrix(rng, F);
      const auto expected = oracle::dense_rank(oracle::to_rows(m), p);
      for (auto strategy : {PivotStrategy::markowitz, PivotStrategy::min_row, PivotStrategy::random})
        for (bool split : {true, false})
          for (double threshold : {0.2, 2.0}) {
            RankOptions o;
            o.strategy = strategy;
            o.split_components = split;
            o.dense_threshold = threshold;
            o.seed = static_cast<std::uint64_t>(t);
            ++total;
            mismatches += rank_mod_p(m, F, o) != expected;
          }
    }
  }
  CHECK(total >= 1000);
  CHECK(mismatches == 0);
}

TEST_CASE("kernel vectors are annihilated and count cols - rank") {
  std::mt19937_64 rng(99);
  for (unsigned p : {3u, 5u, 7u}) {
    const PrimeField F(p);
    for (int t = 0; t < 150; ++t) {
      const auto m = oracle::random_matrix(rng, F);
      const auto kernel = kernel_basis(m, F);
      CHECK(kernel.size() == m.cols() - rank_mod_p(m, F));
      for (const auto& v : kernel) CHECK(m.multiply(v, F).empty());
      // independent
      EchelonBasis basis(m.cols(), F);
      for (const auto& v : kernel) CHECK(basis.insert(v));
    }
  }
}

TEST_CASE("echelon basis membership") {
  const PrimeField F(5);
  EchelonBasis b(4, F);
  CHECK(b.insert({{0, 1}, {1, 2}}));
  CHECK(b.insert({{1, 1}, {3, 4}}));
  CHECK_FALSE(b.insert({{0, 2}, {1, 4}}));
  // (1,2,0,0) - 2 (0,1,0,4) = (1,0,0,2) mod 5
  CHECK(b.contains({{0, 1}, {3, 2}}));
  CHECK_FALSE(b.contains({{0, 1}, {3, 3}}));
  CHECK_FALSE(b.contains({{2, 1}}));
  CHECK(b.rank() == 2);
}

TEST_CASE("degenerate shapes") {
  const PrimeField F(3);
  CHECK(rank_mod_p(SparseMatrixFp(0, 0), F) == 0);
  CHECK(rank_mod_p(SparseMatrixFp(5, 0), F) == 0);
  CHECK(rank_mod_p(SparseMatrixFp(0, 5), F) == 0);
  CHECK(rank_mod_p(SparseMatrixFp(4, 4), F) == 0);
  CHECK(kernel_basis(SparseMatrixFp(0, 3), F).size() == 3);
}

TEST_CASE("triplets are summed mod p") {
  const PrimeField F(3);
  const auto m = SparseMatrixFp::from_triplets(2, 2, {{0, 0, 1}, {0, 0, 2}, {1, 1, 4}}, F);
  CHECK(m.nnz() == 1);
  CHECK(m.column(1)[0].value == 1);
}

TEST_CASE("coordinate format round trip") {
  std::mt19937_64 rng(5);
  const PrimeField F(7);
  for (int t = 0; t < 20; ++t) {
    const auto m = oracle::random_matrix(rng, F);
    std::stringstream s;
    write_coordinate(s, m, 7);
    const auto back = read_coordinate(s);
    CHECK(back.modulus == 7);
    CHECK(back.matrix == m);
  }
  std::stringstream bad("2 2 1 7\n5 0 1\n");
  CHECK_THROWS_AS(read_coordinate(bad), ConfigError);
}

TEST_CASE("memory budget aborts with ResourceError") {
  std::mt19937_64 rng(3);
  const PrimeField F(5);
  std::vector<Triplet> t;
  std::uniform_int_distribution<std::uint32_t> v(1, 4);
  for (std::uint32_t i = 0; i < 300; ++i)
    for (std::uint32_t j = 0; j < 300; ++j) t.push_back({i, j, v(rng)});
  const auto m = SparseMatrixFp::from_triplets(300, 300, t, F);
  RankOptions o;
  o.memory_budget_bytes = 4096;
  CHECK_THROWS_AS(rank_mod_p(m, F, o), ResourceError);
  o.memory_budget_bytes = 0;
  CHECK(rank_mod_p(m, F, o) == oracle::dense_rank(oracle::to_rows(m), 5));
}

TEST_CASE("component statistics") {
  const PrimeField F(3);
  // block diagonal: two 2x2 blocks
  const auto m = SparseMatrixFp::from_triplets(
      4, 4, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 2}, {2, 2, 1}, {3, 3, 1}, {2, 3, 1}}, F);
  RankStats stats;
  CHECK(rank_mod_p(m, F, {}, &stats) == 4);
  CHECK(stats.components == 2);
}

TEST_CASE("cancel flag stops elimination") {
  std::mt19937_64 rng(11);
  const PrimeField F(3);
  const auto m = oracle::random_matrix(rng, F, 40);
  std::atomic<bool> stop{true};
  RankOptions o;
  o.cancel = &stop;
  o.split_components = false;
  if (m.nnz()) CHECK_THROWS_AS(rank_mod_p(m, F, o), Cancelled);
  stop = false;
  CHECK(rank_mod_p(m, F, o) == oracle::dense_rank(oracle::to_rows(m), 3));
}
