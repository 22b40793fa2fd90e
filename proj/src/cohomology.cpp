#include "hamcoh/cohomology.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <future>
#include <limits>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "hamcoh/error.hpp"
#include "hamcoh/journal.hpp"

namespace hamcoh {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::computed: return "computed";
    case Provenance::by_prop1: return "by_prop1";
    case Provenance::by_prop2: return "by_prop2";
    case Provenance::by_prop3: return "by_prop3";
  }
  return "?";
}

Provenance parse_provenance(std::string_view s) {
  for (auto p : {Provenance::computed, Provenance::by_prop1, Provenance::by_prop2,
                 Provenance::by_prop3})
    if (s == to_string(p)) return p;
  throw ConfigError("unknown provenance '" + std::string(s) + "'");
}

const TableEntry* CohomologyTable::find(int g, int k) const {
  const auto it = entries.find({g, k});
  return it == entries.end() ? nullptr : &it->second;
}

std::size_t CohomologyTable::computed_boxes() const {
  std::size_t n = 0;
  for (const auto& [key, e] : entries)
    n += e.provenance == Provenance::computed && key.k >= 1;
  return n;
}

bool PropositionReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed || c.skipped; });
}

namespace {

std::uint64_t narrow(ChainCount c) {
  if (c > std::numeric_limits<std::uint64_t>::max())
    throw ConfigError("chain space dimension exceeds 64 bits");
  return static_cast<std::uint64_t>(c);
}

// Ranks of d_k restricted to grade g, each computed at most once even when
// several workers ask for it.
class RankCache {
 public:
  RankCache(const LiePAlgebra& L, const ChainDimensions& dims,
            const RankOptions& options)
      : L_(L), dims_(dims), options_(options) {}

  void seed(int k, int g, std::uint64_t r) {
    std::promise<std::uint64_t> done;
    done.set_value(r);
    std::lock_guard lock(mutex_);
    cache_.emplace(BoxKey{g, k}, done.get_future().share());
  }

  std::uint64_t rank(int k, int g) {
    if (k <= 1 || static_cast<std::size_t>(k) > L_.dim() ||
        dims_.count(k, g) == 0 || dims_.count(k - 1, g) == 0)
      return 0;
    std::promise<std::uint64_t> mine;
    std::shared_future<std::uint64_t> result;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      const auto it = cache_.find({g, k});
      if (it != cache_.end()) {
        result = it->second;
      } else {
        result = mine.get_future().share();
        cache_.emplace(BoxKey{g, k}, result);
        owner = true;
      }
    }
    if (owner) {
      try {
        const auto d = boundary_matrix(L_, k, g);
        mine.set_value(rank_mod_p(d, L_.field(), options_));
      } catch (...) {
        mine.set_exception(std::current_exception());
      }
    }
    return result.get();
  }

 private:
  const LiePAlgebra& L_;
  const ChainDimensions& dims_;
  const RankOptions& options_;
  std::mutex mutex_;
  std::map<BoxKey, std::shared_future<std::uint64_t>> cache_;
};

TableEntry degree_zero_entry(int g) {
  TableEntry e;
  e.dim_c = g == 0 ? 1 : 0;
  e.rank_in = 0;
  e.rank_out = 0;  // d_1 vanishes for trivial coefficients
  e.dim_h = e.dim_c;
  return e;
}

TableEntry compute_entry(const ChainDimensions& dims, RankCache& cache, int k,
                         int g) {
  if (k == 0) return degree_zero_entry(g);
  const auto start = std::chrono::steady_clock::now();
  TableEntry e;
  e.dim_c = narrow(dims.count(k, g));
  try {
    e.rank_in = cache.rank(k, g);
    e.rank_out = cache.rank(k + 1, g);
  } catch (const ResourceError& err) {
    throw ResourceError("box (g=" + std::to_string(g) + ", k=" +
                        std::to_string(k) + "): " + err.what());
  }
  if (*e.rank_in + *e.rank_out > e.dim_c)
    throw VerificationError("ranks exceed dim C at box (g=" + std::to_string(g) +
                            ", k=" + std::to_string(k) + "); d^2 != 0?");
  e.dim_h = e.dim_c - *e.rank_in - *e.rank_out;
  e.wall_time_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return e;
}

struct Representative {
  BoxKey box;
  Provenance provenance = Provenance::computed;
  bool zero = false;  // inferred zero, no source box
};

int positive_mod(int a, int m) { return ((a % m) + m) % m; }

Representative representative(BoxKey box, int dim, std::uint32_t p,
                              const PruningOptions& pruning) {
  if (pruning.prop3 && positive_mod(box.g, static_cast<int>(p)) != 0)
    return {box, Provenance::by_prop3, true};
  BoxKey rep = box;
  if (pruning.prop1) rep.g = std::abs(rep.g);
  if (pruning.prop2) rep.k = std::min(rep.k, dim - rep.k);
  if (rep.k != box.k) return {rep, Provenance::by_prop2};
  if (rep.g != box.g) return {rep, Provenance::by_prop1};
  return {rep, Provenance::computed};
}

// Fills rank_in/rank_out of inferred entries from
// rank d_{k+1} = dim C_k - dim H_k - rank d_k, starting at rank d_1 = 0.
void derive_ranks(CohomologyTable& table, const ChainDimensions& dims) {
  std::set<int> grades;
  for (const auto& [key, e] : table.entries) grades.insert(key.g);
  const int n = static_cast<int>(table.dim);
  for (int g : grades) {
    std::optional<std::uint64_t> rank_k = 0;  // rank of d_k, k = 0
    for (int k = 0; k <= n; ++k) {
      std::optional<std::uint64_t> dim_h;
      if (const auto* e = table.find(g, k)) dim_h = e->dim_h;
      else if (k == 0) dim_h = g == 0 ? 1 : 0;
      else if (dims.count(k, g) == 0) dim_h = 0;
      std::optional<std::uint64_t> rank_next;
      const auto dim_c = narrow(dims.count(k, g));
      if (rank_k && dim_h && dim_c >= *dim_h + *rank_k)
        rank_next = dim_c - *dim_h - *rank_k;
      if (k == 0) rank_next = 0;
      if (auto it = table.entries.find({g, k}); it != table.entries.end()) {
        auto& e = it->second;
        if (!e.rank_in) e.rank_in = rank_k;
        if (!e.rank_out) e.rank_out = rank_next;
      }
      rank_k = rank_next;
    }
  }
}

std::mutex po_mutex;
std::set<std::pair<unsigned, std::uint32_t>> po_verified;

void ensure_po_propositions(const LiePAlgebra& L, const ComputeOptions& options) {
  const auto key = std::make_pair(L.spec().n, L.spec().p);
  {
    std::lock_guard lock(po_mutex);
    if (po_verified.count(key)) return;
  }
  const auto full = full_table(L, PruningOptions{}, options);
  const auto report = verify_propositions(L, full);
  if (!report.passed())
    throw VerificationError("propositions fail on the unpruned table of " +
                            L.spec().label() + "; pruning stays disabled");
  std::lock_guard lock(po_mutex);
  po_verified.insert(key);
}

}  // namespace

TableEntry compute_box(const LiePAlgebra& L, int k, int g,
                       const RankOptions& options) {
  if (k < 0 || static_cast<std::size_t>(k) > L.dim())
    throw ContractError("box degree out of range");
  const ChainDimensions dims(L);
  RankCache cache(L, dims, options);
  return compute_entry(dims, cache, k, g);
}

CohomologyTable full_table(const LiePAlgebra& L, const PruningOptions& pruning,
                           const ComputeOptions& options,
                           const TableRequest& request) {
  const auto& spec = L.spec();
  if (pruning.any() && spec.grading != Grading::symmetric)
    throw ConfigError("pruning by the symmetry propositions needs the symmetric grading");
  if (pruning.any() && spec.family == Family::po && L.canonical())
    ensure_po_propositions(L, options);
  if (pruning.any() && !L.canonical())
    throw ConfigError("pruning needs one of the named algebra families");

  const int n = static_cast<int>(L.dim());
  const ChainDimensions dims(L);
  const int k_lo = std::max(0, request.k_min);
  const int k_hi = std::min(n, request.k_max.value_or(n));
  const int g_lo = request.g_min.value_or(dims.min_grade());
  const int g_hi = request.g_max.value_or(dims.max_grade());

  CohomologyTable table;
  table.spec = spec;
  table.dim = L.dim();

  std::map<BoxKey, Representative> plan;
  std::set<BoxKey> reps;
  for (int k = k_lo; k <= k_hi; ++k)
    for (int g = g_lo; g <= g_hi; ++g) {
      if (dims.count(k, g) == 0) continue;
      const auto rep = representative({g, k}, n, spec.p, pruning);
      plan.emplace(BoxKey{g, k}, rep);
      if (!rep.zero) reps.insert(rep.box);
    }

  RankOptions rank_options = options.rank;
  if (!rank_options.cancel) rank_options.cancel = options.cancel;
  RankCache cache(L, dims, rank_options);
  std::map<BoxKey, TableEntry> results;
  for (const auto& r : options.journal_path.empty()
                           ? std::vector<JournalRecord>{}
                           : read_journal(options.journal_path)) {
    if (!(r.spec == spec) || r.entry.provenance != Provenance::computed) continue;
    if (!r.entry.rank_in || !r.entry.rank_out) continue;
    cache.seed(r.box.k, r.box.g, *r.entry.rank_in);
    cache.seed(r.box.k + 1, r.box.g, *r.entry.rank_out);
    results[r.box] = r.entry;
  }

  std::vector<BoxKey> todo;
  for (const auto& b : reps) {
    if (b.k == 0) results[b] = degree_zero_entry(b.g);
    else if (!results.count(b)) todo.push_back(b);
  }

  std::unique_ptr<JournalWriter> journal;
  if (!options.journal_path.empty())
    journal = std::make_unique<JournalWriter>(options.journal_path);

  std::mutex results_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      if (failed || (options.cancel && options.cancel->load())) return;
      const auto i = next++;
      if (i >= todo.size()) return;
      const auto box = todo[i];
      try {
        auto entry = compute_entry(dims, cache, box.k, box.g);
        if (journal) journal->append({spec, box, entry});
        std::lock_guard lock(results_mutex);
        if (options.on_box) options.on_box(box, entry);
        results[box] = entry;
      } catch (...) {
        std::lock_guard lock(results_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  if (options.cancel && options.cancel->load() && results.size() < reps.size())
    throw Cancelled("interrupted after " + std::to_string(results.size()) +
                    " of " + std::to_string(reps.size()) + " boxes");

  for (const auto& [box, rep] : plan) {
    if (rep.provenance == Provenance::computed) {
      table.entries[box] = results.at(box);
      continue;
    }
    TableEntry e;
    e.dim_c = narrow(dims.count(box.k, box.g));
    e.provenance = rep.provenance;
    if (!rep.zero) {
      e.source = rep.box;
      e.dim_h = results.at(rep.box).dim_h;
    }
    table.entries[box] = e;
  }
  derive_ranks(table, dims);
  return table;
}

PropositionReport verify_propositions(const LiePAlgebra& L,
                                      const CohomologyTable& full) {
  for (const auto& [key, e] : full.entries)
    if (e.provenance != Provenance::computed)
      throw ContractError("verify_propositions needs an unpruned table");
  PropositionReport report;
  const int n = static_cast<int>(full.dim);
  const int p = static_cast<int>(full.spec.p);
  const bool symmetric = full.spec.grading == Grading::symmetric;
  const auto where = [](BoxKey b) {
    return "(g=" + std::to_string(b.g) + ", k=" + std::to_string(b.k) + ")";
  };
  const auto h0 = [](int g) -> std::uint64_t { return g == 0 ? 1 : 0; };

  CheckResult prop1{"prop1: H_{k,g} = H_{k,-g}"};
  CheckResult prop2{"prop2: H_{k,g} = H_{N-k,g}"};
  CheckResult prop3{"prop3: H_{k,g} = 0 unless p | g"};
  if (!symmetric) {
    for (auto* c : {&prop1, &prop2, &prop3}) {
      c->skipped = true;
      c->detail = "not applicable to the standard grading";
    }
  } else {
    for (const auto& [key, e] : full.entries) {
      ++prop1.checked;
      const auto* mirror = full.find(-key.g, key.k);
      if (!mirror || mirror->dim_h != e.dim_h || mirror->dim_c != e.dim_c) {
        if (prop1.passed) prop1.detail = "fails at " + where(key);
        prop1.passed = false;
      }
      ++prop2.checked;
      std::optional<std::uint64_t> dual;
      if (key.k == n) dual = h0(key.g);
      else if (const auto* d = full.find(key.g, n - key.k)) dual = d->dim_h;
      if (!dual || *dual != e.dim_h) {
        if (prop2.passed) prop2.detail = "fails at " + where(key);
        prop2.passed = false;
      }
      if (positive_mod(key.g, p) != 0) {
        ++prop3.checked;
        if (e.dim_h != 0) {
          if (prop3.passed) prop3.detail = "nonzero at " + where(key);
          prop3.passed = false;
        }
      }
    }
  }
  report.checks.push_back(prop1);
  report.checks.push_back(prop2);
  report.checks.push_back(prop3);

  CheckResult euler{"per-grade Euler characteristic"};
  const ChainDimensions dims(L);
  std::set<int> grades;
  for (const auto& [key, e] : full.entries) grades.insert(key.g);
  for (int g : grades) {
    long long chi_c = 0, chi_h = 0;
    bool complete = true;
    for (int k = 0; k <= n; ++k) {
      const long long sign = k % 2 ? -1 : 1;
      const auto* e = full.find(g, k);
      if (e) {
        chi_c += sign * static_cast<long long>(e->dim_c);
        chi_h += sign * static_cast<long long>(e->dim_h);
      } else if (k == 0) {
        chi_c += static_cast<long long>(h0(g));
        chi_h += static_cast<long long>(h0(g));
      } else if (dims.count(k, g) != 0) {
        complete = false;
      }
    }
    if (!complete) continue;
    ++euler.checked;
    if (chi_c != chi_h) {
      if (euler.passed) euler.detail = "fails at g=" + std::to_string(g);
      euler.passed = false;
    }
  }
  if (euler.checked == 0) {
    euler.skipped = true;
    euler.detail = "no grade has all degrees in the table";
  }
  report.checks.push_back(euler);

  CheckResult top{"H_{N,0} = 1"};
  if (const auto* e = full.find(0, n)) {
    top.checked = 1;
    top.passed = e->dim_h == 1;
    top.detail = "dim " + std::to_string(e->dim_h);
  } else {
    top.skipped = true;
  }
  report.checks.push_back(top);
  return report;
}

CheckResult check_boundary_squared(const LiePAlgebra& L, std::optional<int> k_max) {
  CheckResult r{"boundary squares to zero"};
  const int n = static_cast<int>(L.dim());
  const int top = std::min(n, k_max.value_or(n));
  const ChainDimensions dims(L);
  for (int g = dims.min_grade(); g <= dims.max_grade(); ++g)
    for (int k = 3; k <= top; ++k) {
      if (dims.count(k, g) == 0 || dims.count(k - 2, g) == 0) continue;
      const auto lower = enumerate_chain_basis(L, k - 2, g);
      const auto mid = enumerate_chain_basis(L, k - 1, g);
      const auto upper = enumerate_chain_basis(L, k, g);
      const auto dd = boundary_matrix(L, mid, lower)
                          .multiply(boundary_matrix(L, upper, mid), L.field());
      ++r.checked;
      if (dd.nnz() != 0 && r.passed) {
        r.passed = false;
        r.detail = "nonzero at (g=" + std::to_string(g) + ", k=" + std::to_string(k) + ")";
      }
    }
  return r;
}

CocycleSet cocycle_representatives(const LiePAlgebra& L, int k, int g,
                                   std::size_t memory_budget_bytes) {
  const int n = static_cast<int>(L.dim());
  if (k < 0 || k > n) throw ContractError("box degree out of range");
  CocycleSet out{enumerate_chain_basis(L, k, g), {}};
  if (out.basis.empty()) return out;

  std::vector<SparseVector> cycles;
  if (k <= 1) {
    for (std::uint32_t i = 0; i < out.basis.size(); ++i) cycles.push_back({{i, 1}});
  } else {
    const auto target = enumerate_chain_basis(L, k - 1, g);
    cycles = kernel_basis(boundary_matrix(L, out.basis, target), L.field(),
                          memory_budget_bytes);
  }
  EchelonBasis boundaries(out.basis.size(), L.field());
  if (k < n) {
    const auto above = enumerate_chain_basis(L, k + 1, g);
    if (!above.empty()) {
      const auto d = boundary_matrix(L, above, out.basis);
      for (std::size_t j = 0; j < d.cols(); ++j) {
        const auto col = d.column(j);
        boundaries.insert(SparseVector(col.begin(), col.end()));
      }
    }
  }
  for (auto& z : cycles)
    if (boundaries.insert(z)) out.representatives.push_back(std::move(z));
  return out;
}

}  // namespace hamcoh
