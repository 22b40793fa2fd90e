// hamcoh: cohomology tables of truncated Hamiltonian and Poisson algebras.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hamcoh/algebra.hpp"
#include "hamcoh/algebra_io.hpp"
#include "hamcoh/chains.hpp"
#include "hamcoh/cohomology.hpp"
#include "hamcoh/error.hpp"
#include "hamcoh/render.hpp"

using namespace hamcoh;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kConfig = 2, kResource = 3, kInterrupted = 130 };

std::atomic<bool> interrupted{false};
extern "C" void on_sigint(int) { interrupted = true; }

struct RunConfig {
  std::string family = "h";
  unsigned n = 2;
  std::uint32_t p = 3;
  std::string grading = "symmetric";
  std::string algebra_json;
  std::optional<int> k_min, k_max, g_min, g_max;
  std::string props = "none";
  unsigned workers = 1;
  double memory_budget_mb = 0;
  std::string format = "text";
  std::string journal;
  std::string output;
  std::string pivot = "markowitz";
  std::uint64_t seed = 0;
  bool ascii = false;
  bool merged_rows = false;
  bool progress = false;
  std::string level = "algebra";
  int g = 0, k = 0;
};

unsigned default_workers() {
  if (const char* env = std::getenv("HAMCOH_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("HAMCOH_WORKERS must be a positive integer, got '") +
                      env + "'");
  }
  return 1;
}

void algebra_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--family", c.family, "po, h, h1 or h2")->capture_default_str();
  cmd->add_option("--n", c.n, "number of variables (even)")->capture_default_str();
  cmd->add_option("--p", c.p, "odd prime")->capture_default_str();
  cmd->add_option("--grading", c.grading, "symmetric or standard")->capture_default_str();
  cmd->add_option("--algebra-json", c.algebra_json,
                  "load structure constants from a dump-algebra file");
}

void compute_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--workers", c.workers, "worker threads (default $HAMCOH_WORKERS or 1)");
  cmd->add_option("--memory-budget-mb", c.memory_budget_mb,
                  "abort a box whose elimination needs more memory");
  cmd->add_option("--pivot", c.pivot, "markowitz, min_row or random")->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for --pivot random");
}

void range_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--k-min", c.k_min);
  cmd->add_option("--k-max", c.k_max);
  cmd->add_option("--g-min", c.g_min);
  cmd->add_option("--g-max", c.g_max);
}

void format_option(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--format", c.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
}

AlgebraSpec spec_of(const RunConfig& c) {
  AlgebraSpec s;
  s.family = parse_family(c.family);
  s.n = c.n;
  s.p = c.p;
  s.grading = parse_grading(c.grading);
  s.validate();
  return s;
}

LiePAlgebra load_algebra(const RunConfig& c) {
  if (!c.algebra_json.empty()) {
    std::ifstream in(c.algebra_json);
    if (!in) throw ConfigError("cannot read " + c.algebra_json);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(c.algebra_json + ": " + e.what());
    }
    auto L = algebra_from_json(j);
    return L.with_grading(parse_grading(c.grading));
  }
  return structure_constants(spec_of(c));
}

RankOptions rank_options(const RunConfig& c) {
  RankOptions r;
  if (c.pivot == "markowitz") r.strategy = PivotStrategy::markowitz;
  else if (c.pivot == "min_row") r.strategy = PivotStrategy::min_row;
  else if (c.pivot == "random") r.strategy = PivotStrategy::random;
  else throw ConfigError("unknown pivot strategy '" + c.pivot + "'");
  if (c.memory_budget_mb < 0) throw ConfigError("--memory-budget-mb must be >= 0");
  r.memory_budget_bytes = static_cast<std::size_t>(c.memory_budget_mb * 1024 * 1024);
  r.seed = c.seed;
  return r;
}

PruningOptions pruning_of(const std::string& props) {
  if (props == "none" || props.empty()) return {};
  if (props == "all") return PruningOptions::all();
  PruningOptions o;
  std::stringstream ss(props);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "1") o.prop1 = true;
    else if (item == "2") o.prop2 = true;
    else if (item == "3") o.prop3 = true;
    else throw ConfigError("--props takes none, all or a list of 1,2,3; got '" + props + "'");
  }
  return o;
}

// output goes to --output when given
struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw ConfigError("cannot write " + path);
    out = &file;
  }
  std::ostream& operator*() { return *out; }
};

json check_json(const CheckResult& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"skipped", c.skipped},
          {"checked", c.checked}, {"detail", c.detail}};
}

void print_check(std::ostream& out, const CheckResult& c) {
  out << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << "  " << c.name;
  if (!c.skipped) out << " (" << c.checked << " checked)";
  if (!c.detail.empty()) out << ": " << c.detail;
  out << '\n';
}

int cmd_info(const RunConfig& c) {
  const auto spec = spec_of(c);
  const auto L = structure_constants(spec);
  const ChainDimensions dims(L);
  const int n = static_cast<int>(L.dim());
  std::size_t representatives = 0;
  if (spec.grading == Grading::symmetric)
    for (int g = 0; g <= dims.max_grade(); g += static_cast<int>(spec.p))
      for (int k = 1; k <= n / 2; ++k) representatives += dims.count(k, g) != 0;
  const json j{{"algebra", spec.label()},
               {"family", std::string(to_string(spec.family))},
               {"n", spec.n},
               {"p", spec.p},
               {"grading", std::string(to_string(spec.grading))},
               {"N", n},
               {"grade_min", dims.min_grade()},
               {"grade_max", dims.max_grade()},
               {"basis_grade_min", L.min_grade()},
               {"basis_grade_max", L.max_grade()},
               {"total_chain_dim", to_string(dims.total())},
               {"nonempty_boxes", dims.nonempty_boxes(1, n)},
               {"pruned_boxes", representatives}};
  if (c.format == "json") {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "algebra          " << spec.label() << " (" << to_string(spec.grading)
            << " grading)\n"
            << "N                " << n << '\n'
            << "basis grades     " << L.min_grade() << " .. " << L.max_grade() << '\n'
            << "chain grades     " << dims.min_grade() << " .. " << dims.max_grade() << '\n'
            << "total chain dim  " << to_string(dims.total()) << '\n'
            << "boxes (k >= 1)   " << dims.nonempty_boxes(1, n) << '\n';
  if (spec.grading == Grading::symmetric)
    std::cout << "pruned boxes     " << representatives << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& c) {
  const auto L = load_algebra(c);
  std::vector<CheckResult> checks;
  const auto report = verify_algebra(L);
  checks = report.checks;
  if (c.level == "complex" || c.level == "full") checks.push_back(check_boundary_squared(L));
  if (c.level == "full") {
    ComputeOptions opts;
    opts.rank = rank_options(c);
    opts.workers = c.workers;
    opts.cancel = &interrupted;
    const auto table = full_table(L, {}, opts, {0});
    const auto props = verify_propositions(L, table);
    checks.insert(checks.end(), props.checks.begin(), props.checks.end());
  }
  bool ok = true;
  for (const auto& r : checks) ok = ok && (r.passed || r.skipped);
  if (c.format == "json") {
    json j{{"algebra", L.spec().label()}, {"passed", ok}, {"checks", json::array()}};
    for (const auto& r : checks) j["checks"].push_back(check_json(r));
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << L.spec().label() << " (" << to_string(L.spec().grading) << " grading)\n";
    for (const auto& r : checks) print_check(std::cout, r);
    std::cout << (ok ? "verify: pass\n" : "verify: FAIL\n");
  }
  return ok ? kOk : kFail;
}

int cmd_table(const RunConfig& c) {
  const auto L = load_algebra(c);
  ComputeOptions opts;
  opts.rank = rank_options(c);
  opts.workers = c.workers;
  opts.journal_path = c.journal;
  opts.cancel = &interrupted;
  if (c.progress) opts.on_box = [](const BoxKey& b, const TableEntry& e) {
    std::cerr << "  box g=" << b.g << " k=" << b.k << " dim_C=" << e.dim_c
              << " dim_H=" << e.dim_h << " (" << static_cast<long long>(e.wall_time_ms)
              << " ms)\n";
  };
  TableRequest req;
  req.k_min = c.k_min.value_or(1);
  req.k_max = c.k_max;
  req.g_min = c.g_min;
  req.g_max = c.g_max;
  const auto table = full_table(L, pruning_of(c.props), opts, req);
  Sink sink(c.output);
  if (c.format == "json") {
    *sink << table_to_json(table).dump(2) << '\n';
  } else if (c.format == "csv") {
    *sink << render_csv(table);
  } else {
    RenderOptions r;
    r.ascii = c.ascii;
    r.merged_rows = c.merged_rows;
    r.k_min = req.k_min;
    r.k_max = req.k_max;
    *sink << render_text(table, r);
  }
  return kOk;
}

int cmd_box(const RunConfig& c) {
  const auto L = load_algebra(c);
  const auto e = compute_box(L, c.k, c.g, rank_options(c));
  const auto opt = [](const std::optional<std::uint64_t>& v) {
    return v ? json(*v) : json();
  };
  if (c.format == "json") {
    std::cout << json{{"algebra", L.spec().label()}, {"g", c.g}, {"k", c.k},
                      {"dim_C", e.dim_c}, {"rank_in", opt(e.rank_in)},
                      {"rank_out", opt(e.rank_out)}, {"dim_H", e.dim_h},
                      {"wall_time_ms", e.wall_time_ms}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << L.spec().label() << " g=" << c.g << " k=" << c.k << '\n'
              << "dim C     " << e.dim_c << '\n'
              << "rank d_k  " << e.rank_in.value_or(0) << '\n'
              << "rank d_k+1 " << e.rank_out.value_or(0) << '\n'
              << "dim H     " << e.dim_h << '\n';
  }
  return kOk;
}

int cmd_cocycles(const RunConfig& c) {
  const auto L = load_algebra(c);
  const auto set = cocycle_representatives(L, c.k, c.g, rank_options(c).memory_budget_bytes);
  if (c.format == "json") {
    json reps = json::array();
    for (const auto& v : set.representatives) reps.push_back(format_chain(L, set.basis, v, c.ascii));
    std::cout << json{{"algebra", L.spec().label()}, {"g", c.g}, {"k", c.k},
                      {"representatives", reps}}
                     .dump(2)
              << '\n';
  } else {
    for (const auto& v : set.representatives)
      std::cout << format_chain(L, set.basis, v, c.ascii) << '\n';
  }
  return kOk;
}

int cmd_dump_algebra(const RunConfig& c) {
  const auto L = load_algebra(c);
  Sink sink(c.output);
  *sink << algebra_to_json(L).dump(1) << '\n';
  return kOk;
}

int cmd_export_matrix(const RunConfig& c) {
  const auto L = load_algebra(c);
  const auto d = boundary_matrix(L, c.k, c.g);
  Sink sink(c.output);
  write_coordinate(*sink, d, L.spec().p);
  return kOk;
}

int cmd_rank(const std::string& path, const RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  const auto m = read_coordinate(in);
  RankStats stats;
  const auto r = rank_mod_p(m.matrix, PrimeField(m.modulus), rank_options(c), &stats);
  std::cout << r << '\n';
  std::cerr << "components " << stats.components << ", sparse pivots " << stats.sparse_pivots
            << ", dense pivots " << stats.dense_pivots << ", largest dense block "
            << stats.largest_dense_block << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of truncated Hamiltonian and Poisson Lie p-algebras"};
  app.require_subcommand(1);
  RunConfig c;
  std::string matrix_path;
  try {
    c.workers = default_workers();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }

  auto* info = app.add_subcommand("info", "dimensions, grade range and box counts");
  algebra_options(info, c);
  format_option(info, c);

  auto* verify = app.add_subcommand("verify", "check structure constants and the complex");
  algebra_options(verify, c);
  compute_options(verify, c);
  format_option(verify, c);
  verify->add_option("--level", c.level,
                     "algebra, complex (adds d^2 = 0) or full (adds the unpruned table and propositions)")
      ->check(CLI::IsMember({"algebra", "complex", "full"}))
      ->capture_default_str();

  auto* table = app.add_subcommand("table", "cohomology table");
  algebra_options(table, c);
  compute_options(table, c);
  range_options(table, c);
  format_option(table, c);
  table->add_option("--props", c.props, "pruning: none, all, or e.g. 1,3")->capture_default_str();
  table->add_option("--journal", c.journal, "JSON-lines checkpoint; reruns resume from it");
  table->add_option("--output", c.output, "write here instead of stdout");
  table->add_flag("--ascii", c.ascii, "'.' instead of the middle dot");
  table->add_flag("--progress", c.progress, "report each finished box on stderr");
  table->add_flag("--merged-rows", c.merged_rows, "merge equal rows g and -g into one ±g row");

  auto* box = app.add_subcommand("box", "one (g, k) box");
  algebra_options(box, c);
  compute_options(box, c);
  format_option(box, c);
  box->add_option("--g", c.g)->required();
  box->add_option("--k", c.k)->required();

  auto* cocycles = app.add_subcommand("cocycles", "cycles spanning H_{k,g}");
  algebra_options(cocycles, c);
  compute_options(cocycles, c);
  format_option(cocycles, c);
  cocycles->add_option("--g", c.g)->required();
  cocycles->add_option("--k", c.k)->required();
  cocycles->add_flag("--ascii", c.ascii, "'/\\' instead of the wedge sign");

  auto* dump = app.add_subcommand("dump-algebra", "structure constants as JSON");
  algebra_options(dump, c);
  dump->add_option("--output", c.output);

  auto* exportm = app.add_subcommand("export-matrix", "boundary d_k on grade g, coordinate format");
  algebra_options(exportm, c);
  exportm->add_option("--g", c.g)->required();
  exportm->add_option("--k", c.k)->required();
  exportm->add_option("--output", c.output);

  auto* rank = app.add_subcommand("rank", "rank of a coordinate-format matrix");
  compute_options(rank, c);
  rank->add_option("matrix", matrix_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  if (c.workers == 0) {
    std::cerr << "error: --workers must be >= 1\n";
    return kConfig;
  }
  std::signal(SIGINT, on_sigint);

  try {
    if (*info) return cmd_info(c);
    if (*verify) return cmd_verify(c);
    if (*table) return cmd_table(c);
    if (*box) return cmd_box(c);
    if (*cocycles) return cmd_cocycles(c);
    if (*dump) return cmd_dump_algebra(c);
    if (*exportm) return cmd_export_matrix(c);
    if (*rank) return cmd_rank(matrix_path, c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const ResourceError& e) {
    std::cerr << "resource abort: " << e.what() << '\n';
    return kResource;
  } catch (const Cancelled& e) {
    std::cerr << "interrupted: " << e.what() << "; journal kept\n";
    return kInterrupted;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kOk;
}
