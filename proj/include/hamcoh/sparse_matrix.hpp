#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hamcoh/gfp.hpp"

namespace hamcoh {

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  std::uint32_t value;  // any integer; reduced mod p on assembly
};

struct SparseEntry {
  std::uint32_t index;
  std::uint32_t value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Sparse vector: strictly ascending indices, nonzero reduced values.
using SparseVector = std::vector<SparseEntry>;

// Compressed sparse columns over GF(p). No explicit zeros; row indices
// strictly increasing within each column.
class SparseMatrixFp {
 public:
  SparseMatrixFp() = default;
  SparseMatrixFp(std::size_t rows, std::size_t cols);

  // Duplicates are summed mod p; entries that vanish are dropped.
  static SparseMatrixFp from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<Triplet> triplets,
                                      const PrimeField& field);
  // Columns must already be valid sparse vectors over [0, rows).
  static SparseMatrixFp from_columns(std::size_t rows,
                                     const std::vector<SparseVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::span<const SparseEntry> column(std::size_t j) const noexcept {
    return {entries_.data() + col_ptr_[j], entries_.data() + col_ptr_[j + 1]};
  }

  SparseMatrixFp transpose() const;
  // M * v for a sparse vector indexed by columns.
  SparseVector multiply(const SparseVector& v, const PrimeField& field) const;
  // Dense product, used by the d^2 = 0 checks.
  SparseMatrixFp multiply(const SparseMatrixFp& rhs,
                          const PrimeField& field) const;
  std::vector<std::uint32_t> to_dense() const;  // row-major

  friend bool operator==(const SparseMatrixFp&, const SparseMatrixFp&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<SparseEntry> entries_;
};

// Coordinate text format: header "rows cols nnz modulus", then one
// "row col value" line per nonzero, 0-based, column-major order.
void write_coordinate(std::ostream& out, const SparseMatrixFp& m,
                      std::uint32_t modulus);

struct CoordinateMatrix {
  SparseMatrixFp matrix;
  std::uint32_t modulus;
};
CoordinateMatrix read_coordinate(std::istream& in);

}  // namespace hamcoh
