#pragma once

// Dense reference implementations for the sparse code.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hamcoh/sparse_matrix.hpp"

namespace oracle {

// Plain Gaussian elimination on a row-major copy.
inline std::size_t dense_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::int64_t inv = 1;
    for (std::int64_t t = 1; t < p; ++t)
      if ((a[rank][c] % p + p) % p * t % p == 1) inv = t;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::int64_t f = ((a[r][c] % p + p) % p) * inv % p;
      if (!f) continue;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<std::int64_t>> to_rows(const hamcoh::SparseMatrixFp& m) {
  std::vector<std::vector<std::int64_t>> a(m.rows(), std::vector<std::int64_t>(m.cols(), 0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) a[e.index][j] = e.value;
  return a;
}

// Random matrix with a mix of densities and planted low rank.
inline hamcoh::SparseMatrixFp random_matrix(std::mt19937_64& rng, const hamcoh::PrimeField& F,
                                            std::size_t max_dim = 40) {
  std::uniform_int_distribution<std::size_t> dim(0, max_dim);
  const std::size_t rows = dim(rng), cols = dim(rng);
  std::uniform_real_distribution<double> unit(0, 1);
  const double density = unit(rng) < 0.3 ? unit(rng) : unit(rng) * 0.15;
  std::uniform_int_distribution<std::uint32_t> val(1, F.modulus() - 1);
  std::vector<hamcoh::Triplet> t;
  if (unit(rng) < 0.3 && rows && cols) {
    // product of thin factors
    const std::size_t r = std::uniform_int_distribution<std::size_t>(1, std::min(rows, cols))(rng);
    std::vector<std::vector<std::uint32_t>> A(rows, std::vector<std::uint32_t>(r)),
        B(r, std::vector<std::uint32_t>(cols));
    for (auto& row : A)
      for (auto& x : row) x = unit(rng) < 0.4 ? val(rng) : 0;
    for (auto& row : B)
      for (auto& x : row) x = unit(rng) < 0.4 ? val(rng) : 0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < r; ++k) s += std::uint64_t{A[i][k]} * B[k][j];
        if (s % F.modulus())
          t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                       static_cast<std::uint32_t>(s % F.modulus())});
      }
  } else {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (unit(rng) < density)
          t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), val(rng)});
  }
  return hamcoh::SparseMatrixFp::from_triplets(rows, cols, std::move(t), F);
}

}  // namespace oracle
