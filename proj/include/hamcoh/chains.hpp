#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamcoh/algebra.hpp"
#include "hamcoh/sparse_matrix.hpp"

namespace hamcoh {

// Chain-space dimensions reach 2^N, beyond 64 bits for N > 63.
using ChainCount = unsigned __int128;
std::string to_string(ChainCount c);

// Basis of C_{k,g} = (Lambda^k L)_g: strictly increasing k-tuples of basis
// indices whose grades sum to g, in lexicographic order.
class GradedChainBasis {
 public:
  GradedChainBasis(int degree, int grade, std::vector<std::uint16_t> flat);

  int degree() const noexcept { return degree_; }
  int grade() const noexcept { return grade_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::span<const std::uint16_t> subset(std::size_t pos) const noexcept {
    return {flat_.data() + pos * static_cast<std::size_t>(degree_),
            static_cast<std::size_t>(degree_)};
  }
  std::optional<std::size_t> index_of(std::span<const std::uint16_t> tuple) const;

 private:
  int degree_;
  int grade_;
  std::size_t size_;
  std::vector<std::uint16_t> flat_;
};

GradedChainBasis enumerate_chain_basis(const LiePAlgebra& L, int k, int g);

// dim C_{k,g} for every (k, g), by dynamic programming over the basis grades.
class ChainDimensions {
 public:
  explicit ChainDimensions(const LiePAlgebra& L);

  std::size_t algebra_dim() const noexcept { return n_; }
  ChainCount count(int k, int g) const noexcept;
  // Extreme grade sums over all k.
  int min_grade() const noexcept { return offset_; }
  int max_grade() const noexcept { return offset_ + width_ - 1; }
  ChainCount total() const;
  std::size_t nonempty_boxes(int k_min, int k_max) const;

 private:
  std::size_t n_;
  int offset_;
  int width_;
  std::vector<std::vector<ChainCount>> table_;  // [k][g - offset]
};

// Chevalley-Eilenberg boundary d_k : C_{k,g} -> C_{k-1,g} for trivial
// coefficients,
//   d(e_1 ^ ... ^ e_k) = sum_{a<b} (-1)^{a+b} [e_a, e_b] ^ e_1 ^ ..(a)..(b).. ^ e_k.
// Columns follow `source`, rows follow `target`. ClosureError if a term
// lands outside `target`.
SparseMatrixFp boundary_matrix(const LiePAlgebra& L,
                               const GradedChainBasis& source,
                               const GradedChainBasis& target);
SparseMatrixFp boundary_matrix(const LiePAlgebra& L, int k, int g);

// "2*[x1^(1) ∧ x2^(2)] + [x1^(3)]"; ascii swaps the wedge for "/\".
std::string format_chain(const LiePAlgebra& L, const GradedChainBasis& basis,
                         const SparseVector& v, bool ascii = false);

}  // namespace hamcoh
