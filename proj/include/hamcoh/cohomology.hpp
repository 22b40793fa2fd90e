#pragma once

#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamcoh/algebra.hpp"
#include "hamcoh/chains.hpp"
#include "hamcoh/rank.hpp"

namespace hamcoh {

// Where a table entry's dim_H came from.
enum class Provenance {
  computed,
  by_prop1,  // H_{k,g} = H_{k,-g}
  by_prop2,  // H_{k,g} = H_{N-k,g}
  by_prop3,  // H_{k,g} = 0 for g not divisible by p
};

std::string_view to_string(Provenance p) noexcept;
Provenance parse_provenance(std::string_view s);

struct BoxKey {
  int g = 0;
  int k = 0;
  friend auto operator<=>(const BoxKey&, const BoxKey&) = default;
};

// One (g, k) box. The engine computes homology of the chain complex and
// reports dim H_{k,g} as dim H^k_g at the same grade label.
struct TableEntry {
  std::uint64_t dim_c = 0;
  std::optional<std::uint64_t> rank_in;   // rank of d_k on C_{k,g}
  std::optional<std::uint64_t> rank_out;  // rank of d_{k+1} on C_{k+1,g}
  std::uint64_t dim_h = 0;
  Provenance provenance = Provenance::computed;
  std::optional<BoxKey> source;  // representative box for inferred entries
  double wall_time_ms = 0;
};

struct CohomologyTable {
  AlgebraSpec spec;
  std::size_t dim = 0;
  std::map<BoxKey, TableEntry> entries;

  const TableEntry* find(int g, int k) const;
  // Boxes with provenance computed and k >= 1.
  std::size_t computed_boxes() const;
};

struct PruningOptions {
  bool prop1 = false;
  bool prop2 = false;
  bool prop3 = false;

  static PruningOptions all() { return {true, true, true}; }
  bool any() const noexcept { return prop1 || prop2 || prop3; }
};

// Which boxes a table should contain. Unset bounds mean "everything".
struct TableRequest {
  int k_min = 1;
  std::optional<int> k_max;
  std::optional<int> g_min;
  std::optional<int> g_max;
};

struct ComputeOptions {
  RankOptions rank;
  unsigned workers = 1;
  // JSON-lines journal; existing records for the same algebra are reused.
  std::string journal_path;
  std::function<void(const BoxKey&, const TableEntry&)> on_box;
  const std::atomic<bool>* cancel = nullptr;
};

// dim H_{k,g} = dim C_{k,g} - rank d_k - rank d_{k+1}; 0 <= k <= N.
TableEntry compute_box(const LiePAlgebra& L, int k, int g,
                       const RankOptions& options = {});

// Every non-empty box of the request. With pruning flags only
// representative boxes (g >= 0, k <= N/2, g = 0 mod p, as enabled) are
// computed and the rest is inferred. Flags require the symmetric grading;
// for po they are enabled only after an unpruned run confirms the
// propositions (VerificationError otherwise).
CohomologyTable full_table(const LiePAlgebra& L, const PruningOptions& pruning,
                           const ComputeOptions& options = {},
                           const TableRequest& request = {});

struct PropositionReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

// Checks an unpruned table entry by entry: g <-> -g, k <-> N-k, vanishing
// off multiples of p, and the per-grade Euler characteristic.
PropositionReport verify_propositions(const LiePAlgebra& L,
                                      const CohomologyTable& full);

// d_{k-1} d_k = 0 on every non-empty box with k <= k_max (default N).
CheckResult check_boundary_squared(const LiePAlgebra& L,
                                   std::optional<int> k_max = std::nullopt);

struct CocycleSet {
  GradedChainBasis basis;
  std::vector<SparseVector> representatives;  // cycles independent mod boundaries
};

// dim_H cycles of C_{k,g} whose classes span H_{k,g}.
CocycleSet cocycle_representatives(const LiePAlgebra& L, int k, int g,
                                   std::size_t memory_budget_bytes = 0);

}  // namespace hamcoh
