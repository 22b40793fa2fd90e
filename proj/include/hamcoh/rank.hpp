#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hamcoh/gfp.hpp"
#include "hamcoh/sparse_matrix.hpp"

namespace hamcoh {

enum class PivotStrategy {
  markowitz,  // min (row_count-1)*(col_count-1) over the sparsest rows
  min_row,    // first entry of a sparsest row
  random,     // uniform active row and entry, seeded
};

struct RankOptions {
  PivotStrategy strategy = PivotStrategy::markowitz;
  // Switch the trailing block to dense elimination once its density
  // reaches this fraction.
  double dense_threshold = 0.2;
  // Rows examined per Markowitz pivot search.
  unsigned markowitz_candidates = 4;
  // Cap on working storage; 0 means unlimited. Exceeding it throws
  // ResourceError.
  std::size_t memory_budget_bytes = 0;
  std::uint64_t seed = 0;
  // Eliminate each connected component of the row/column incidence graph
  // separately.
  bool split_components = true;
  // Polled between pivots; throws Cancelled once set.
  const std::atomic<bool>* cancel = nullptr;
};

struct RankStats {
  std::size_t components = 0;
  std::size_t sparse_pivots = 0;
  std::size_t dense_pivots = 0;
  std::size_t largest_dense_block = 0;  // cells
  std::size_t peak_sparse_entries = 0;
};

std::size_t rank_mod_p(const SparseMatrixFp& m, const PrimeField& field,
                       const RankOptions& options = {},
                       RankStats* stats = nullptr);

// Basis of the right kernel {v : M v = 0}, one vector per free column of the
// reduced row echelon form. Dense; intended for modest boxes.
std::vector<SparseVector> kernel_basis(const SparseMatrixFp& m,
                                       const PrimeField& field,
                                       std::size_t memory_budget_bytes = 0);

// Incrementally maintained echelon basis of a subspace of GF(p)^dim.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, const PrimeField& field);

  // Reduces v against the basis; returns true and stores it if the residue
  // is nonzero.
  bool insert(const SparseVector& v);
  bool contains(const SparseVector& v) const;
  std::size_t rank() const noexcept { return vectors_.size(); }

 private:
  std::vector<std::uint32_t> reduce(const SparseVector& v) const;

  std::size_t dim_;
  PrimeField field_;
  // lead index -> position in vectors_, or -1
  std::vector<std::int64_t> lead_slot_;
  std::vector<SparseVector> vectors_;  // normalized: lead coefficient 1
};

}  // namespace hamcoh
