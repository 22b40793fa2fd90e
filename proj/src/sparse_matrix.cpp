#include "hamcoh/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "hamcoh/error.hpp"

namespace hamcoh {

SparseMatrixFp::SparseMatrixFp(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

SparseMatrixFp SparseMatrixFp::from_triplets(std::size_t rows,
                                             std::size_t cols,
                                             std::vector<Triplet> triplets,
                                             const PrimeField& field) {
  const auto p = field.modulus();
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.col != b.col ? a.col < b.col : a.row < b.row;
            });
  SparseMatrixFp m(rows, cols);
  std::size_t i = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    while (i < triplets.size() && triplets[i].col == j) {
      const auto row = triplets[i].row;
      if (row >= rows) throw ContractError("triplet row out of range");
      std::uint64_t sum = 0;
      for (; i < triplets.size() && triplets[i].col == j &&
             triplets[i].row == row;
           ++i)
        sum += triplets[i].value % p;
      if (sum % p) m.entries_.push_back({row, static_cast<std::uint32_t>(sum % p)});
    }
    m.col_ptr_[j + 1] = m.entries_.size();
  }
  if (i != triplets.size()) throw ContractError("triplet column out of range");
  return m;
}

SparseMatrixFp SparseMatrixFp::from_columns(
    std::size_t rows, const std::vector<SparseVector>& columns) {
  SparseMatrixFp m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& e : columns[j]) {
      if (e.index >= rows) throw ContractError("column entry out of range");
      m.entries_.push_back(e);
    }
    m.col_ptr_[j + 1] = m.entries_.size();
  }
  return m;
}

SparseMatrixFp SparseMatrixFp::transpose() const {
  SparseMatrixFp t(cols_, rows_);
  std::vector<std::size_t> counts(rows_ + 1, 0);
  for (const auto& e : entries_) ++counts[e.index + 1];
  for (std::size_t r = 0; r < rows_; ++r) counts[r + 1] += counts[r];
  t.col_ptr_ = counts;
  t.entries_.resize(entries_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : column(j))
      t.entries_[counts[e.index]++] = {static_cast<std::uint32_t>(j), e.value};
  return t;
}

SparseVector SparseMatrixFp::multiply(const SparseVector& v,
                                      const PrimeField& field) const {
  std::vector<std::uint64_t> acc(rows_, 0);
  const auto p = field.modulus();
  for (const auto& x : v) {
    if (x.index >= cols_) throw ContractError("vector index out of range");
    for (const auto& e : column(x.index))
      acc[e.index] = (acc[e.index] + std::uint64_t{e.value} * x.value) % p;
  }
  SparseVector out;
  for (std::size_t r = 0; r < rows_; ++r)
    if (acc[r]) out.push_back({static_cast<std::uint32_t>(r),
                               static_cast<std::uint32_t>(acc[r])});
  return out;
}

SparseMatrixFp SparseMatrixFp::multiply(const SparseMatrixFp& rhs,
                                        const PrimeField& field) const {
  if (cols_ != rhs.rows_) throw ContractError("matrix shapes do not chain");
  std::vector<SparseVector> columns;
  columns.reserve(rhs.cols_);
  for (std::size_t j = 0; j < rhs.cols_; ++j) {
    auto col = rhs.column(j);
    columns.push_back(multiply(SparseVector(col.begin(), col.end()), field));
  }
  return from_columns(rows_, columns);
}

std::vector<std::uint32_t> SparseMatrixFp::to_dense() const {
  std::vector<std::uint32_t> dense(rows_ * cols_, 0);
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : column(j)) dense[e.index * cols_ + j] = e.value;
  return dense;
}

void write_coordinate(std::ostream& out, const SparseMatrixFp& m,
                      std::uint32_t modulus) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << ' ' << modulus
      << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j))
      out << e.index << ' ' << j << ' ' << e.value << '\n';
}

CoordinateMatrix read_coordinate(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  std::uint32_t modulus = 0;
  if (!(in >> rows >> cols >> nnz >> modulus))
    throw ConfigError("coordinate matrix: malformed header");
  PrimeField field(modulus);
  std::vector<Triplet> triplets;
  triplets.reserve(nnz);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::uint64_t r = 0, c = 0, v = 0;
    if (!(in >> r >> c >> v))
      throw ConfigError("coordinate matrix: expected " +
                          std::to_string(nnz) + " entries, got " +
                          std::to_string(i));
    if (r >= rows || c >= cols)
      throw ConfigError("coordinate matrix: entry out of range");
    triplets.push_back({static_cast<std::uint32_t>(r),
                        static_cast<std::uint32_t>(c),
                        static_cast<std::uint32_t>(v % modulus)});
  }
  return {SparseMatrixFp::from_triplets(rows, cols, std::move(triplets), field),
          modulus};
}

}  // namespace hamcoh
