#include "hamcoh/chains.hpp"

#include <algorithm>

#include "hamcoh/error.hpp"

namespace hamcoh {

std::string to_string(ChainCount c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s += static_cast<char>('0' + static_cast<int>(c % 10));
    c /= 10;
  }
  return {s.rbegin(), s.rend()};
}

GradedChainBasis::GradedChainBasis(int degree, int grade,
                                   std::vector<std::uint16_t> flat)
    : degree_(degree),
      grade_(grade),
      size_(degree > 0 ? flat.size() / static_cast<std::size_t>(degree) : 1),
      flat_(std::move(flat)) {
  if (degree < 0) throw ContractError("negative chain degree");
  if (degree > 0 && flat_.size() % static_cast<std::size_t>(degree) != 0)
    throw ContractError("chain basis storage is not a multiple of the degree");
  // Degree 0 has the single empty tuple, present only in grade 0.
  if (degree == 0) size_ = grade == 0 ? 1 : 0;
}

std::optional<std::size_t> GradedChainBasis::index_of(
    std::span<const std::uint16_t> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(degree_)) return std::nullopt;
  if (degree_ == 0) return size_ ? std::optional<std::size_t>(0) : std::nullopt;
  std::size_t lo = 0, hi = size_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto s = subset(mid);
    if (std::lexicographical_compare(s.begin(), s.end(), tuple.begin(), tuple.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size_ && std::equal(tuple.begin(), tuple.end(), subset(lo).begin()))
    return lo;
  return std::nullopt;
}

GradedChainBasis enumerate_chain_basis(const LiePAlgebra& L, int k, int g) {
  const auto& gr = L.grades();
  const int n = static_cast<int>(L.dim());
  if (k < 0 || k > n) throw ContractError("chain degree out of range");
  if (n > 65535) throw ContractError("algebra too large for chain enumeration");
  std::vector<std::uint16_t> flat;
  if (k == 0) return GradedChainBasis(0, g, {});

  // lo[j][r], hi[j][r]: least and greatest grade sum of r indices from [j, n).
  std::vector<std::vector<long>> lo(n + 1), hi(n + 1);
  for (int j = 0; j <= n; ++j) {
    std::vector<int> suffix(gr.begin() + j, gr.end());
    std::sort(suffix.begin(), suffix.end());
    lo[j].assign(suffix.size() + 1, 0);
    hi[j].assign(suffix.size() + 1, 0);
    for (std::size_t r = 1; r <= suffix.size(); ++r) {
      lo[j][r] = lo[j][r - 1] + suffix[r - 1];
      hi[j][r] = hi[j][r - 1] + suffix[suffix.size() - r];
    }
  }

  std::vector<std::uint16_t> tuple(static_cast<std::size_t>(k));
  // Depth-first in index order, which yields lexicographic output.
  auto descend = [&](auto& self, int depth, int start, long sum) -> void {
    const int remaining = k - depth;
    if (remaining == 0) {
      if (sum == g) flat.insert(flat.end(), tuple.begin(), tuple.end());
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      const long s = sum + gr[i];
      if (s + lo[i + 1][remaining - 1] > g || s + hi[i + 1][remaining - 1] < g)
        continue;
      tuple[depth] = static_cast<std::uint16_t>(i);
      self(self, depth + 1, i + 1, s);
    }
  };
  if (lo[0][k] <= g && g <= hi[0][k]) descend(descend, 0, 0, 0);
  return GradedChainBasis(k, g, std::move(flat));
}

ChainDimensions::ChainDimensions(const LiePAlgebra& L) : n_(L.dim()) {
  const auto& gr = L.grades();
  int neg = 0, pos = 0;
  for (int x : gr) (x < 0 ? neg : pos) += x;
  offset_ = neg;
  width_ = pos - neg + 1;
  table_.assign(n_ + 1, std::vector<ChainCount>(static_cast<std::size_t>(width_), 0));
  table_[0][static_cast<std::size_t>(-offset_)] = 1;
  std::size_t seen = 0;
  for (int x : gr) {
    ++seen;
    for (std::size_t k = seen; k >= 1; --k)
      for (int idx = 0; idx < width_; ++idx) {
        const int from = idx - x;
        if (from < 0 || from >= width_) continue;
        table_[k][static_cast<std::size_t>(idx)] += table_[k - 1][static_cast<std::size_t>(from)];
      }
  }
}

ChainCount ChainDimensions::count(int k, int g) const noexcept {
  if (k < 0 || static_cast<std::size_t>(k) > n_) return 0;
  const int idx = g - offset_;
  if (idx < 0 || idx >= width_) return 0;
  return table_[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)];
}

ChainCount ChainDimensions::total() const {
  ChainCount t = 0;
  for (const auto& row : table_)
    for (auto c : row) t += c;
  return t;
}

std::size_t ChainDimensions::nonempty_boxes(int k_min, int k_max) const {
  std::size_t boxes = 0;
  for (int k = std::max(k_min, 0); k <= k_max && static_cast<std::size_t>(k) <= n_; ++k)
    for (auto c : table_[static_cast<std::size_t>(k)]) boxes += c != 0;
  return boxes;
}

SparseMatrixFp boundary_matrix(const LiePAlgebra& L,
                               const GradedChainBasis& source,
                               const GradedChainBasis& target) {
  const int k = source.degree();
  if (target.degree() != k - 1 || target.grade() != source.grade())
    throw ContractError("boundary target must be C_{k-1,g} for source C_{k,g}");
  const std::uint32_t p = L.spec().p;
  if (k < 2) return SparseMatrixFp(target.size(), source.size());

  std::vector<SparseVector> columns(source.size());
  std::vector<std::uint16_t> rest(static_cast<std::size_t>(k - 2));
  std::vector<std::uint16_t> image(static_cast<std::size_t>(k - 1));
  std::vector<SparseEntry> acc;
  for (std::size_t col = 0; col < source.size(); ++col) {
    const auto s = source.subset(col);
    acc.clear();
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) {
        const auto br = L.bracket(s[a], s[b]);
        if (br.terms.empty()) continue;
        std::size_t w = 0;
        for (int t = 0; t < k; ++t)
          if (t != a && t != b) rest[w++] = s[t];
        const bool odd_ab = (a + b) % 2 != 0;
        for (const auto& term : br.terms) {
          const auto pos = std::lower_bound(rest.begin(), rest.end(), term.index);
          if (pos != rest.end() && *pos == term.index) continue;
          const auto q = static_cast<std::size_t>(pos - rest.begin());
          std::copy(rest.begin(), pos, image.begin());
          image[q] = static_cast<std::uint16_t>(term.index);
          std::copy(pos, rest.end(), image.begin() + static_cast<std::ptrdiff_t>(q) + 1);
          const auto row = target.index_of(image);
          if (!row)
            throw ClosureError("boundary term leaves C_{" + std::to_string(k - 1) +
                               "," + std::to_string(target.grade()) + "}");
          const bool negative = (odd_ab != br.negate) != (q % 2 != 0);
          acc.push_back({static_cast<std::uint32_t>(*row),
                         negative ? p - term.coeff : term.coeff});
        }
      }
    std::sort(acc.begin(), acc.end(),
              [](const SparseEntry& x, const SparseEntry& y) { return x.index < y.index; });
    auto& out = columns[col];
    for (std::size_t i = 0; i < acc.size();) {
      std::uint32_t sum = 0;
      const auto idx = acc[i].index;
      for (; i < acc.size() && acc[i].index == idx; ++i) sum = (sum + acc[i].value) % p;
      if (sum) out.push_back({idx, sum});
    }
  }
  return SparseMatrixFp::from_columns(target.size(), columns);
}

SparseMatrixFp boundary_matrix(const LiePAlgebra& L, int k, int g) {
  if (k < 0) throw ContractError("boundary_matrix needs k >= 0");
  if (k == 0) return SparseMatrixFp(0, g == 0 ? 1 : 0);
  return boundary_matrix(L, enumerate_chain_basis(L, k, g),
                         enumerate_chain_basis(L, k - 1, g));
}

std::string format_chain(const LiePAlgebra& L, const GradedChainBasis& basis,
                         const SparseVector& v, bool ascii) {
  if (v.empty()) return "0";
  const std::string wedge = ascii ? " /\\ " : " ∧ ";
  std::string out;
  for (const auto& e : v) {
    if (!out.empty()) out += " + ";
    if (e.value != 1) out += std::to_string(e.value) + "*";
    out += '[';
    const auto s = basis.subset(e.index);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += wedge;
      out += to_string(L.basis()[s[i]]);
    }
    if (s.empty()) out += '1';
    out += ']';
  }
  return out;
}

}  // namespace hamcoh
