#include "hamcoh/rank.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "hamcoh/error.hpp"

namespace hamcoh {
namespace {

// Largest number of "+= f * pivot" updates a uint32 cell can absorb after a
// full reduction.
std::size_t delayed_reduction_limit(std::uint32_t p) {
  const std::uint64_t step = std::uint64_t{p - 1} * (p - 1);
  return static_cast<std::size_t>(
      (std::numeric_limits<std::uint32_t>::max() - (p - 1)) / step);
}

void check_budget(std::size_t bytes, const RankOptions& opt, const char* what) {
  if (opt.memory_budget_bytes != 0 && bytes > opt.memory_budget_bytes)
    throw ResourceError(std::string(what) + " needs " +
                        std::to_string(bytes >> 20) + " MiB, budget is " +
                        std::to_string(opt.memory_budget_bytes >> 20) +
                        " MiB");
}

// Rank of a dense row-major block, destroyed in the process. Cells are kept
// unreduced between pivots (delayed reduction); a row is reduced when it
// becomes a pivot or when its update counter reaches the overflow limit.
void poll(const std::atomic<bool>* cancel) {
  if (cancel && cancel->load(std::memory_order_relaxed))
    throw Cancelled("rank computation interrupted");
}

std::size_t dense_rank(std::vector<std::uint32_t>& a, std::size_t rows,
                       std::size_t cols, const PrimeField& field,
                       const std::atomic<bool>* cancel = nullptr) {
  const std::uint32_t p = field.modulus();
  const std::size_t limit = delayed_reduction_limit(p);
  std::vector<std::size_t> pending(rows, 0);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = rank; i < rows; ++i) {
      auto& cell = a[i * cols + c];
      cell %= p;
      if (cell) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if ((rank & 63) == 0) poll(cancel);
    if (pivot != rank) {
      std::swap_ranges(a.begin() + pivot * cols + c, a.begin() + (pivot + 1) * cols,
                       a.begin() + rank * cols + c);
      std::swap(pending[pivot], pending[rank]);
    }
    std::uint32_t* prow = a.data() + rank * cols;
    for (std::size_t t = c; t < cols; ++t) prow[t] %= p;
    const std::uint32_t inv = field.inv(Fp{prow[c]}).value;
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint32_t* row = a.data() + i * cols;
      const std::uint32_t v = row[c] % p;
      if (!v) continue;
      const std::uint32_t f = p - static_cast<std::uint32_t>(
                                      std::uint64_t{v} * inv % p);
      if (++pending[i] > limit) {
        for (std::size_t t = c; t < cols; ++t) row[t] %= p;
        pending[i] = 1;
      }
      for (std::size_t t = c; t < cols; ++t) row[t] += f * prow[t];
    }
    ++rank;
  }
  return rank;
}

// Right-looking sparse elimination on the rows of a work matrix, switching
// to dense_rank once the trailing block is dense enough.
class SparseEliminator {
 public:
  SparseEliminator(std::vector<SparseVector> rows, std::size_t num_cols,
                   const PrimeField& field, const RankOptions& opt,
                   RankStats& stats)
      : rows_(std::move(rows)),
        num_cols_(num_cols),
        field_(field),
        opt_(opt),
        stats_(stats),
        active_(rows_.size(), 1),
        col_count_(num_cols, 0),
        col_rows_(num_cols),
        buckets_(num_cols + 1),
        rng_(opt.seed) {
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) {
        active_[r] = 0;
        continue;
      }
      ++active_rows_;
      active_nnz_ += rows_[r].size();
      for (const auto& e : rows_[r]) {
        if (col_count_[e.index]++ == 0) ++active_cols_;
        col_rows_[e.index].push_back(r);
      }
      push_bucket(r);
      if (opt_.strategy == PivotStrategy::random) active_list_.push_back(r);
    }
  }

  std::size_t run() {
    std::size_t rank = 0;
    while (active_rows_ > 0) {
      const std::size_t cells = active_rows_ * active_cols_;
      const double density =
          static_cast<double>(active_nnz_) / static_cast<double>(cells);
      if ((density >= opt_.dense_threshold || cells <= 1024) &&
          within_budget(cells * sizeof(std::uint32_t)))
        return rank + finish_dense();
      if ((rank & 255) == 0) poll(opt_.cancel);
      const auto [row, col] = select_pivot();
      eliminate(row, col);
      ++rank;
      ++stats_.sparse_pivots;
      stats_.peak_sparse_entries =
          std::max(stats_.peak_sparse_entries, active_nnz_);
      check_budget(active_nnz_ * (sizeof(SparseEntry) + sizeof(std::uint32_t)),
                   opt_, "sparse elimination");
    }
    return rank;
  }

 private:
  bool within_budget(std::size_t bytes) const {
    return opt_.memory_budget_bytes == 0 || bytes <= opt_.memory_budget_bytes;
  }

  bool valid_in_bucket(std::uint32_t r, std::size_t b) const {
    return active_[r] && rows_[r].size() == b;
  }

  void push_bucket(std::uint32_t r) {
    const auto b = rows_[r].size();
    buckets_[b].push_back(r);
    min_bucket_ = std::min(min_bucket_, b);
  }

  static std::uint32_t value_at(const SparseVector& row, std::uint32_t col) {
    auto it = std::lower_bound(
        row.begin(), row.end(), col,
        [](const SparseEntry& e, std::uint32_t c) { return e.index < c; });
    return it != row.end() && it->index == col ? it->value : 0;
  }

  // Up to `want` distinct valid rows from the lowest buckets.
  std::vector<std::uint32_t> sparsest_rows(std::size_t want) {
    std::vector<std::uint32_t> out;
    for (std::size_t b = min_bucket_; b < buckets_.size() && out.size() < want;
         ++b) {
      auto& bucket = buckets_[b];
      for (std::size_t i = bucket.size(); i-- > 0 && out.size() < want;) {
        const auto r = bucket[i];
        if (!valid_in_bucket(r, b) ||
            std::find(out.begin(), out.end(), r) != out.end()) {
          bucket[i] = bucket.back();
          bucket.pop_back();
          continue;
        }
        out.push_back(r);
      }
      if (out.empty() && bucket.empty()) min_bucket_ = b + 1;
    }
    return out;
  }

  std::pair<std::uint32_t, std::uint32_t> select_pivot() {
    switch (opt_.strategy) {
      case PivotStrategy::random: {
        for (;;) {
          std::uniform_int_distribution<std::size_t> pick(0, active_list_.size() - 1);
          const auto i = pick(rng_);
          const auto r = active_list_[i];
          if (!active_[r]) {
            active_list_[i] = active_list_.back();
            active_list_.pop_back();
            continue;
          }
          std::uniform_int_distribution<std::size_t> entry(0, rows_[r].size() - 1);
          return {r, rows_[r][entry(rng_)].index};
        }
      }
      case PivotStrategy::min_row: {
        const auto r = sparsest_rows(1).front();
        return {r, rows_[r].front().index};
      }
      case PivotStrategy::markowitz:
        break;
    }
    const auto candidates =
        sparsest_rows(std::max<unsigned>(1, opt_.markowitz_candidates));
    std::uint32_t best_row = candidates.front();
    std::uint32_t best_col = rows_[best_row].front().index;
    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    for (const auto r : candidates) {
      const std::uint64_t rc = rows_[r].size() - 1;
      for (const auto& e : rows_[r]) {
        const std::uint64_t cost = rc * (col_count_[e.index] - 1);
        if (cost < best_cost ||
            (cost == best_cost &&
             std::tie(e.index, r) < std::tie(best_col, best_row))) {
          best_cost = cost;
          best_row = r;
          best_col = e.index;
        }
      }
      if (best_cost == 0) break;
    }
    return {best_row, best_col};
  }

  void drop_col(std::uint32_t c) {
    if (--col_count_[c] == 0) --active_cols_;
  }

  void eliminate(std::uint32_t pr, std::uint32_t pc) {
    const std::uint32_t p = field_.modulus();
    const SparseVector& pivot = rows_[pr];
    active_[pr] = 0;
    --active_rows_;
    active_nnz_ -= pivot.size();
    for (const auto& e : pivot) drop_col(e.index);
    const std::uint32_t inv = field_.inv(Fp{value_at(pivot, pc)}).value;

    auto targets = std::move(col_rows_[pc]);
    col_rows_[pc] = {};
    SparseVector merged;
    for (const auto r : targets) {
      if (!active_[r]) continue;
      const std::uint32_t v = value_at(rows_[r], pc);
      if (!v) continue;
      const std::uint32_t f =
          p - static_cast<std::uint32_t>(std::uint64_t{v} * inv % p);
      const SparseVector& row = rows_[r];
      merged.clear();
      merged.reserve(row.size() + pivot.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() ||
            (i < row.size() && row[i].index < pivot[j].index)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].index < row[i].index) {
          const auto c = pivot[j].index;
          merged.push_back({c, static_cast<std::uint32_t>(
                                   std::uint64_t{f} * pivot[j].value % p)});
          if (col_count_[c]++ == 0) ++active_cols_;
          col_rows_[c].push_back(r);
          ++j;
        } else {
          const auto c = row[i].index;
          const auto s = static_cast<std::uint32_t>(
              (row[i].value + std::uint64_t{f} * pivot[j].value) % p);
          if (s)
            merged.push_back({c, s});
          else
            drop_col(c);
          ++i;
          ++j;
        }
      }
      active_nnz_ = active_nnz_ - row.size() + merged.size();
      rows_[r].swap(merged);
      if (rows_[r].empty()) {
        active_[r] = 0;
        --active_rows_;
      } else {
        push_bucket(r);
      }
    }
    rows_[pr] = {};
  }

  std::size_t finish_dense() {
    std::vector<std::uint32_t> col_map(num_cols_, 0);
    std::size_t cols = 0;
    for (std::size_t c = 0; c < num_cols_; ++c)
      if (col_count_[c]) col_map[c] = static_cast<std::uint32_t>(cols++);
    std::vector<std::uint32_t> live;
    for (std::uint32_t r = 0; r < rows_.size(); ++r)
      if (active_[r]) live.push_back(r);
    std::vector<std::uint32_t> dense(live.size() * cols, 0);
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (const auto& e : rows_[live[i]]) dense[i * cols + col_map[e.index]] = e.value;
      rows_[live[i]] = {};
    }
    stats_.largest_dense_block =
        std::max(stats_.largest_dense_block, live.size() * cols);
    const auto r = dense_rank(dense, live.size(), cols, field_, opt_.cancel);
    stats_.dense_pivots += r;
    return r;
  }

  std::vector<SparseVector> rows_;
  std::size_t num_cols_;
  const PrimeField& field_;
  const RankOptions& opt_;
  RankStats& stats_;
  std::vector<char> active_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<std::uint32_t> active_list_;
  std::size_t min_bucket_ = std::numeric_limits<std::size_t>::max();
  std::size_t active_rows_ = 0;
  std::size_t active_cols_ = 0;
  std::size_t active_nnz_ = 0;
  std::mt19937_64 rng_;
};

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::size_t rank_mod_p(const SparseMatrixFp& m, const PrimeField& field,
                       const RankOptions& options, RankStats* stats) {
  RankStats local;
  RankStats& st = stats ? *stats : local;
  if (m.nnz() == 0) return 0;

  // The work matrix is M^T: one work row per column of M.
  if (!options.split_components) {
    std::vector<SparseVector> rows(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto col = m.column(j);
      rows[j].assign(col.begin(), col.end());
    }
    ++st.components;
    return SparseEliminator(std::move(rows), m.rows(), field, options, st).run();
  }

  // Nodes: columns of M first, then rows of M.
  DisjointSets sets(m.cols() + m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) sets.unite(j, m.cols() + e.index);

  std::vector<std::vector<std::uint32_t>> members(m.cols());
  for (std::uint32_t j = 0; j < m.cols(); ++j)
    if (!m.column(j).empty()) members[sets.find(j)].push_back(j);

  std::vector<std::uint32_t> local_row(m.rows(), 0);
  std::vector<std::uint32_t> stamp(m.rows(), std::numeric_limits<std::uint32_t>::max());
  std::size_t rank = 0;
  for (std::uint32_t root = 0; root < m.cols(); ++root) {
    const auto& cols = members[root];
    if (cols.empty()) continue;
    ++st.components;
    if (cols.size() == 1) {
      ++rank;
      continue;
    }
    // Rows of M touched by this component, numbered in ascending order.
    std::vector<std::uint32_t> touched;
    for (const auto j : cols)
      for (const auto& e : m.column(j))
        if (stamp[e.index] != root) {
          stamp[e.index] = root;
          touched.push_back(e.index);
        }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t i = 0; i < touched.size(); ++i) local_row[touched[i]] = i;
    std::vector<SparseVector> rows(cols.size());
    for (std::size_t t = 0; t < cols.size(); ++t)
      for (const auto& e : m.column(cols[t]))
        rows[t].push_back({local_row[e.index], e.value});
    rank += SparseEliminator(std::move(rows), touched.size(), field, options, st)
                .run();
  }
  return rank;
}

std::vector<SparseVector> kernel_basis(const SparseMatrixFp& m,
                                       const PrimeField& field,
                                       std::size_t memory_budget_bytes) {
  const std::size_t rows = m.rows(), cols = m.cols();
  RankOptions budget;
  budget.memory_budget_bytes = memory_budget_bytes;
  check_budget(rows * cols * sizeof(std::uint32_t), budget, "kernel basis");
  auto a = m.to_dense();
  const std::uint32_t p = field.modulus();

  std::vector<std::size_t> pivot_col;  // pivot column of each echelon row
  std::vector<char> is_pivot(cols, 0);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i * cols + c]) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols,
                       a.begin() + r * cols);
    const std::uint64_t inv = field.inv(Fp{a[r * cols + c]}).value;
    for (std::size_t t = 0; t < cols; ++t)
      a[r * cols + t] = static_cast<std::uint32_t>(a[r * cols + t] * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !a[i * cols + c]) continue;
      const std::uint64_t f = p - a[i * cols + c];
      for (std::size_t t = 0; t < cols; ++t)
        a[i * cols + t] =
            static_cast<std::uint32_t>((a[i * cols + t] + f * a[r * cols + t]) % p);
    }
    pivot_col.push_back(c);
    is_pivot[c] = 1;
    ++r;
  }

  std::vector<SparseVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    // x_f = 1, x_{pivot_col[i]} = -R[i][f]
    SparseVector v;
    for (std::size_t i = 0; i < r; ++i)
      if (const auto x = a[i * cols + f])
        v.push_back({static_cast<std::uint32_t>(pivot_col[i]), p - x});
    v.push_back({static_cast<std::uint32_t>(f), 1});
    std::sort(v.begin(), v.end(), [](const SparseEntry& x, const SparseEntry& y) {
      return x.index < y.index;
    });
    basis.push_back(std::move(v));
  }
  return basis;
}

EchelonBasis::EchelonBasis(std::size_t dim, const PrimeField& field)
    : dim_(dim), field_(field), lead_slot_(dim, -1) {}

std::vector<std::uint32_t> EchelonBasis::reduce(const SparseVector& v) const {
  const std::uint32_t p = field_.modulus();
  std::vector<std::uint32_t> acc(dim_, 0);
  for (const auto& e : v) {
    if (e.index >= dim_) throw ContractError("echelon vector index out of range");
    acc[e.index] = e.value % p;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!acc[i] || lead_slot_[i] < 0) continue;
    const std::uint64_t f = p - acc[i];
    for (const auto& e : vectors_[static_cast<std::size_t>(lead_slot_[i])])
      acc[e.index] = static_cast<std::uint32_t>((acc[e.index] + f * e.value) % p);
  }
  return acc;
}

bool EchelonBasis::contains(const SparseVector& v) const {
  const auto acc = reduce(v);
  return std::all_of(acc.begin(), acc.end(), [](auto x) { return x == 0; });
}

bool EchelonBasis::insert(const SparseVector& v) {
  const auto acc = reduce(v);
  const auto lead = std::find_if(acc.begin(), acc.end(), [](auto x) { return x != 0; });
  if (lead == acc.end()) return false;
  const auto li = static_cast<std::size_t>(lead - acc.begin());
  const std::uint64_t inv = field_.inv(Fp{acc[li]}).value;
  SparseVector stored;
  for (std::size_t i = li; i < dim_; ++i)
    if (acc[i])
      stored.push_back({static_cast<std::uint32_t>(i),
                        static_cast<std::uint32_t>(acc[i] * inv % field_.modulus())});
  lead_slot_[li] = static_cast<std::int64_t>(vectors_.size());
  vectors_.push_back(std::move(stored));
  return true;
}

}  // namespace hamcoh
