#include "hamcoh/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hamcoh/error.hpp"
#include "hamcoh/rank.hpp"

namespace hamcoh {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::po: return "po";
    case Family::h: return "h";
    case Family::h1: return "h1";
    case Family::h2: return "h2";
  }
  return "?";
}

std::string_view to_string(Grading g) noexcept {
  return g == Grading::standard ? "standard" : "symmetric";
}

Family parse_family(std::string_view s) {
  if (s == "po") return Family::po;
  if (s == "h") return Family::h;
  if (s == "h1") return Family::h1;
  if (s == "h2") return Family::h2;
  throw ConfigError("unknown family '" + std::string(s) +
                    "' (expected po, h, h1 or h2)");
}

Grading parse_grading(std::string_view s) {
  if (s == "standard") return Grading::standard;
  if (s == "symmetric") return Grading::symmetric;
  throw ConfigError("unknown grading '" + std::string(s) +
                    "' (expected standard or symmetric)");
}

void AlgebraSpec::validate() const {
  if (n < 2 || n % 2 != 0 || n > kMaxVariables)
    throw ConfigError("n must be even and between 2 and " +
                      std::to_string(kMaxVariables) + ", got " +
                      std::to_string(n));
  if (p == 2 || !is_prime(p))
    throw ConfigError("p must be an odd prime, got " + std::to_string(p));
  if (p > 255) throw ConfigError("p must be below 256");
}

std::string AlgebraSpec::label() const {
  return std::string(to_string(family)) + "(" + std::to_string(n) + ")_" +
         std::to_string(p);
}

std::uint64_t expected_dimension(const AlgebraSpec& spec) {
  std::uint64_t pn = 1;
  for (unsigned i = 0; i < spec.n; ++i) pn *= spec.p;
  switch (spec.family) {
    case Family::po: return pn + spec.n;
    case Family::h: return pn + spec.n - 1;
    case Family::h1: return pn - 1;
    case Family::h2: return pn - 2;
  }
  return 0;
}

bool in_basis(const Monomial& m, const AlgebraSpec& spec) {
  if (m.num_vars() != spec.n) return false;
  const unsigned deg = m.total_degree();
  if (m.max_exponent() >= spec.p) {
    // Only the generators x_i^(p) of po and h.
    return (spec.family == Family::po || spec.family == Family::h) &&
           m.max_exponent() == spec.p && deg == spec.p;
  }
  switch (spec.family) {
    case Family::po: return true;
    case Family::h:
    case Family::h1: return deg > 0;
    case Family::h2: return deg > 0 && deg < spec.n * (spec.p - 1);
  }
  return false;
}

std::vector<Monomial> build_basis(const AlgebraSpec& spec) {
  spec.validate();
  std::vector<Monomial> basis;
  std::vector<unsigned> r(spec.n, 0);
  // Odometer over [0, p)^n, x_1 most significant: already ascending.
  for (;;) {
    auto m = Monomial::from_exponents(r);
    if (in_basis(m, spec)) basis.push_back(m);
    std::size_t i = spec.n;
    while (i > 0 && ++r[i - 1] == spec.p) r[--i] = 0;
    if (i == 0) break;
  }
  if (spec.family == Family::po || spec.family == Family::h)
    for (std::size_t i = 0; i < spec.n; ++i)
      basis.push_back(Monomial::power(spec.n, i, spec.p));
  return basis;
}

namespace {

AlgebraElement bracket_raw(const AlgebraElement& f, const AlgebraElement& g,
                           const AlgebraSpec& spec, const PrimeField& field) {
  const std::size_t m = spec.n / 2;
  AlgebraElement out;
  for (std::size_t i = 0; i < m; ++i) {
    auto plus = multiply(derivative(f, i), derivative(g, i + m), field);
    auto minus = multiply(derivative(f, i + m), derivative(g, i), field);
    minus.scale(field.neg(Fp{1}), field);
    out.add(plus, field);
    out.add(minus, field);
  }
  if (spec.family != Family::po) out.drop_constant();
  return out;
}

void require_in_span(const AlgebraElement& f, const AlgebraSpec& spec) {
  for (const auto& t : f.terms())
    if (!in_basis(t.monomial, spec))
      throw ContractError("monomial " + to_string(t.monomial) +
                          " is not in the basis of " + spec.label());
}

std::string describe_pair(const LiePAlgebra& L, std::size_t i, std::size_t j) {
  return "[" + to_string(L.basis()[i]) + ", " + to_string(L.basis()[j]) + "]";
}

}  // namespace

AlgebraElement poisson_bracket(const AlgebraElement& f, const AlgebraElement& g,
                               const AlgebraSpec& spec) {
  spec.validate();
  require_in_span(f, spec);
  require_in_span(g, spec);
  return bracket_raw(f, g, spec, PrimeField(spec.p));
}

LiePAlgebra::LiePAlgebra(AlgebraSpec spec, std::vector<Monomial> basis,
                         const std::vector<std::vector<BracketTerm>>& pair_terms)
    : spec_(spec),
      field_((spec.validate(), spec.p)),
      basis_(std::move(basis)),
      codec_(spec.n, spec.p) {
  const std::size_t n = basis_.size();
  if (pair_terms.size() != n * (n - (n ? 1 : 0)) / 2)
    throw ContractError("structure table has " +
                        std::to_string(pair_terms.size()) + " pairs, expected " +
                        std::to_string(n * (n ? n - 1 : 0) / 2));
  for (std::size_t i = 0; i < n; ++i) {
    if (basis_[i].num_vars() != spec.n)
      throw ContractError("basis monomial has wrong variable count");
    if (basis_[i].max_exponent() > spec.p)
      throw ContractError("basis monomial exponent exceeds p");
    if (!lookup_.emplace(codec_.key(basis_[i]), static_cast<std::uint32_t>(i)).second)
      throw ContractError("duplicate basis monomial " + to_string(basis_[i]));
    standard_grades_.push_back(standard_grade(basis_[i]));
    symmetric_grades_.push_back(symmetric_grade(basis_[i]));
  }
  canonical_ = basis_ == build_basis(spec_);

  offsets_.reserve(pair_terms.size() + 1);
  offsets_.push_back(0);
  for (const auto& terms : pair_terms) {
    for (const auto& t : terms) {
      if (t.index >= n) throw ContractError("bracket term index out of range");
      if (t.coeff == 0 || t.coeff >= spec.p)
        throw ContractError("bracket coefficient not a reduced nonzero value");
      terms_.push_back(t);
    }
    offsets_.push_back(terms_.size());
  }
}

std::optional<std::size_t> LiePAlgebra::index_of(const Monomial& m) const {
  if (m.num_vars() != spec_.n || m.max_exponent() > spec_.p) return std::nullopt;
  const auto it = lookup_.find(codec_.key(m));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int LiePAlgebra::min_grade() const noexcept {
  return grades().empty() ? 0 : *std::min_element(grades().begin(), grades().end());
}
int LiePAlgebra::max_grade() const noexcept {
  return grades().empty() ? 0 : *std::max_element(grades().begin(), grades().end());
}
int LiePAlgebra::grade_range() const noexcept {
  return std::max(std::abs(min_grade()), std::abs(max_grade()));
}

LiePAlgebra::Bracket LiePAlgebra::bracket(std::size_t i, std::size_t j) const {
  if (i == j) return {};
  const bool negate = i > j;
  if (negate) std::swap(i, j);
  const auto k = pair_index(i, j);
  return {std::span<const BracketTerm>(terms_.data() + offsets_[k],
                                       terms_.data() + offsets_[k + 1]),
          negate};
}

SparseVector LiePAlgebra::bracket_vector(std::size_t i, std::size_t j) const {
  const auto b = bracket(i, j);
  SparseVector v;
  for (const auto& t : b.terms)
    v.push_back({t.index, b.negate ? spec_.p - t.coeff : t.coeff});
  std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& c) {
    return a.index < c.index;
  });
  return v;
}

SparseVector LiePAlgebra::coordinates(const AlgebraElement& f) const {
  SparseVector v;
  for (const auto& t : f.terms()) {
    const auto idx = index_of(t.monomial);
    if (!idx)
      throw ClosureError(to_string(t.monomial) + " is outside the span of " +
                         spec_.label());
    v.push_back({static_cast<std::uint32_t>(*idx), t.coefficient.value});
  }
  std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& c) {
    return a.index < c.index;
  });
  return v;
}

AlgebraElement LiePAlgebra::element(const SparseVector& v) const {
  AlgebraElement f;
  for (const auto& e : v) f.add_term(basis_.at(e.index), Fp{e.value % spec_.p}, field_);
  return f;
}

std::vector<std::vector<BracketTerm>> LiePAlgebra::pair_terms() const {
  std::vector<std::vector<BracketTerm>> out(offsets_.size() - 1);
  for (std::size_t k = 0; k + 1 < offsets_.size(); ++k)
    out[k].assign(terms_.begin() + static_cast<std::ptrdiff_t>(offsets_[k]),
                  terms_.begin() + static_cast<std::ptrdiff_t>(offsets_[k + 1]));
  return out;
}

LiePAlgebra LiePAlgebra::with_grading(Grading g) const {
  LiePAlgebra copy = *this;
  copy.spec_.grading = g;
  return copy;
}

LiePAlgebra LiePAlgebra::restrict_to(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> sel(indices.begin(), indices.end());
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  std::vector<std::int64_t> new_index(dim(), -1);
  std::vector<Monomial> basis;
  for (std::size_t t = 0; t < sel.size(); ++t) {
    new_index.at(sel[t]) = static_cast<std::int64_t>(t);
    basis.push_back(basis_[sel[t]]);
  }
  std::vector<std::vector<BracketTerm>> pairs;
  for (std::size_t a = 0; a < sel.size(); ++a)
    for (std::size_t b = a + 1; b < sel.size(); ++b) {
      std::vector<BracketTerm> terms;
      for (const auto& e : bracket_vector(sel[a], sel[b])) {
        if (new_index[e.index] < 0)
          throw ClosureError("subspace not closed: " +
                             describe_pair(*this, sel[a], sel[b]) + " involves " +
                             to_string(basis_[e.index]));
        terms.push_back({static_cast<std::uint32_t>(new_index[e.index]), e.value});
      }
      std::sort(terms.begin(), terms.end(),
                [](auto& x, auto& y) { return x.index < y.index; });
      pairs.push_back(std::move(terms));
    }
  // Relabel when the subspace is one of the named families.
  AlgebraSpec spec = spec_;
  for (auto f : {Family::po, Family::h, Family::h1, Family::h2}) {
    AlgebraSpec candidate = spec_;
    candidate.family = f;
    if (build_basis(candidate) == basis) {
      spec = candidate;
      break;
    }
  }
  return LiePAlgebra(spec, std::move(basis), pairs);
}

void LiePAlgebra::overwrite_bracket(std::size_t i, std::size_t j,
                                    std::vector<BracketTerm> terms) {
  if (i >= j || j >= dim()) throw ContractError("overwrite_bracket needs i < j < dim");
  auto pairs = pair_terms();
  pairs[pair_index(i, j)] = std::move(terms);
  *this = LiePAlgebra(spec_, basis_, pairs);
}

LiePAlgebra structure_constants(const AlgebraSpec& spec) {
  spec.validate();
  auto basis = build_basis(spec);
  // Temporary algebra provides the monomial lookup for coordinates().
  const std::size_t n = basis.size();
  LiePAlgebra shell(spec, basis,
                    std::vector<std::vector<BracketTerm>>(n * (n - 1) / 2));
  const PrimeField& field = shell.field();
  std::vector<std::vector<BracketTerm>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto value = bracket_raw(AlgebraElement(basis[i]),
                                     AlgebraElement(basis[j]), spec, field);
      SparseVector coords;
      try {
        coords = shell.coordinates(value);
      } catch (const ClosureError& e) {
        throw ClosureError("bracket " + describe_pair(shell, i, j) + " = " +
                           to_string(value) + " escapes the span: " + e.what());
      }
      std::vector<BracketTerm> terms;
      for (const auto& c : coords) {
        for (auto g : {Grading::standard, Grading::symmetric}) {
          const auto& gr = shell.grades(g);
          if (gr[c.index] != gr[i] + gr[j])
            throw ClosureError("bracket " + describe_pair(shell, i, j) +
                               " breaks " + std::string(to_string(g)) +
                               " grade additivity");
        }
        terms.push_back({c.index, c.value});
      }
      pairs.push_back(std::move(terms));
    }
  return LiePAlgebra(spec, std::move(basis), pairs);
}

std::vector<std::size_t> derived_ideal(const LiePAlgebra& L) {
  const std::size_t n = L.dim();
  std::vector<SparseVector> columns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto v = L.bracket_vector(i, j);
      if (!v.empty()) columns.push_back(std::move(v));
    }
  const auto span_rank =
      rank_mod_p(SparseMatrixFp::from_columns(n, columns), L.field());
  std::vector<std::size_t> members;
  for (std::size_t t = 0; t < n; ++t) {
    columns.push_back({{static_cast<std::uint32_t>(t), 1}});
    if (rank_mod_p(SparseMatrixFp::from_columns(n, columns), L.field()) == span_rank)
      members.push_back(t);
    columns.pop_back();
  }
  if (members.size() != span_rank)
    throw ContractError("[L, L] of " + L.spec().label() +
                        " is not spanned by basis monomials");
  return members;
}

namespace {

// sum_t a_t [e_t, e_l], accumulated densely.
void add_ad(const LiePAlgebra& L, const std::vector<std::uint32_t>& a,
            std::size_t l, std::vector<std::uint32_t>& out) {
  const auto p = L.spec().p;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!a[t]) continue;
    const auto b = L.bracket(t, l);
    for (const auto& term : b.terms) {
      const std::uint32_t c = b.negate ? p - term.coeff : term.coeff;
      out[term.index] = (out[term.index] + a[t] * c) % p;
    }
  }
}

std::vector<std::uint32_t> dense(const SparseVector& v, std::size_t n) {
  std::vector<std::uint32_t> d(n, 0);
  for (const auto& e : v) d[e.index] = e.value;
  return d;
}

// Observed sign s with [z, e] = s * grade(e) * e for all e, or 0.
int grading_element_sign(const LiePAlgebra& L) {
  const std::size_t n = L.dim();
  const std::size_t m = L.spec().n / 2;
  const auto p = static_cast<std::int64_t>(L.spec().p);
  std::vector<std::uint32_t> z(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    Monomial mono(L.spec().n);
    mono.set_exponent(i, 1);
    mono.set_exponent(i + m, 1);
    const auto idx = L.index_of(mono);
    if (!idx) return 0;
    z[*idx] = 1;
  }
  bool plus = true, minus = true;
  const auto& gr = L.grades(Grading::symmetric);
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<std::uint32_t> out(n, 0);
    add_ad(L, z, e, out);
    for (std::size_t t = 0; t < n; ++t) {
      const std::int64_t g = t == e ? gr[e] : 0;
      const auto want_plus = static_cast<std::uint32_t>(((g % p) + p) % p);
      const auto want_minus = static_cast<std::uint32_t>((((-g) % p) + p) % p);
      if (out[t] != want_plus) plus = false;
      if (out[t] != want_minus) minus = false;
    }
  }
  return plus ? 1 : (minus ? -1 : 0);
}

}  // namespace

bool grading_element_check(const LiePAlgebra& L) {
  return grading_element_sign(L) == 1;
}

bool AlgebraReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed || c.skipped; });
}

AlgebraReport verify_algebra(const LiePAlgebra& L) {
  AlgebraReport report;
  const std::size_t n = L.dim();
  const auto& spec = L.spec();
  const auto p = spec.p;
  const PrimeField& field = L.field();

  {
    CheckResult c{"dimension formula"};
    if (!L.canonical()) {
      c.skipped = true;
      c.detail = "basis differs from the closed-form family basis";
    } else {
      c.checked = 1;
      c.passed = n == expected_dimension(spec);
      c.detail = "dim " + std::to_string(n) + ", expected " +
                 std::to_string(expected_dimension(spec));
    }
    report.checks.push_back(c);
  }

  {
    CheckResult table{"table matches Poisson bracket"};
    CheckResult anti{"antisymmetry"};
    for (std::size_t i = 0; i < n; ++i) {
      const AlgebraElement ei(L.basis()[i]);
      for (std::size_t j = 0; j < n; ++j) {
        const AlgebraElement ej(L.basis()[j]);
        auto fwd = bracket_raw(ei, ej, spec, field);
        auto rev = bracket_raw(ej, ei, spec, field);
        rev.add(fwd, field);
        ++anti.checked;
        if (!rev.is_zero() && anti.passed) {
          anti.passed = false;
          anti.detail = "fails for " + describe_pair(L, i, j);
        }
        if (i >= j) continue;
        ++table.checked;
        SparseVector coords;
        bool ok = true;
        try {
          coords = L.coordinates(fwd);
        } catch (const ClosureError&) {
          ok = false;
        }
        if ((!ok || coords != L.bracket_vector(i, j)) && table.passed) {
          table.passed = false;
          table.detail = "stored " + describe_pair(L, i, j) + " = " +
                         to_string(L.element(L.bracket_vector(i, j))) +
                         ", bracket gives " + to_string(fwd);
        }
        if (L.bracket_vector(j, i) !=
            [&] {
              auto v = L.bracket_vector(i, j);
              for (auto& e : v) e.value = p - e.value;
              return v;
            }()) {
          anti.passed = false;
          anti.detail = "table not antisymmetric at " + describe_pair(L, i, j);
        }
      }
    }
    report.checks.push_back(table);
    report.checks.push_back(anti);
  }

  {
    CheckResult c{"jacobi identity"};
    for (std::size_t i = 0; i < n && c.passed; ++i)
      for (std::size_t j = i + 1; j < n && c.passed; ++j) {
        const auto ij = dense(L.bracket_vector(i, j), n);
        for (std::size_t l = j + 1; l < n; ++l) {
          std::vector<std::uint32_t> acc(n, 0);
          add_ad(L, ij, l, acc);
          add_ad(L, dense(L.bracket_vector(j, l), n), i, acc);
          add_ad(L, dense(L.bracket_vector(l, i), n), j, acc);
          ++c.checked;
          if (std::any_of(acc.begin(), acc.end(), [](auto x) { return x != 0; })) {
            c.passed = false;
            c.detail = "violated by triple (" + std::to_string(i) + ", " +
                       std::to_string(j) + ", " + std::to_string(l) + ") = (" +
                       to_string(L.basis()[i]) + ", " + to_string(L.basis()[j]) +
                       ", " + to_string(L.basis()[l]) + ")";
            break;
          }
        }
      }
    report.checks.push_back(c);
  }

  for (auto g : {Grading::standard, Grading::symmetric}) {
    CheckResult c{std::string(to_string(g)) + " grade additivity"};
    const auto& gr = L.grades(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (const auto& t : L.bracket(i, j).terms) {
          ++c.checked;
          if (gr[t.index] != gr[i] + gr[j] && c.passed) {
            c.passed = false;
            c.detail = "fails for " + describe_pair(L, i, j);
          }
        }
    report.checks.push_back(c);
  }

  {
    CheckResult c{"symmetric grades sum to zero"};
    const auto& gr = L.grades(Grading::symmetric);
    const long sum = std::accumulate(gr.begin(), gr.end(), 0L);
    c.checked = n;
    c.passed = sum == 0;
    c.detail = "sum " + std::to_string(sum);
    report.checks.push_back(c);
  }

  {
    CheckResult c{"grading element acts diagonally"};
    report.grading_element_sign = grading_element_sign(L);
    c.checked = n;
    c.passed = report.grading_element_sign != 0;
    c.detail = report.grading_element_sign == 0
                   ? "ad_z is not diagonal with eigenvalue +-grade"
                   : (report.grading_element_sign > 0
                          ? "eigenvalue +grade mod p"
                          : "eigenvalue -grade mod p");
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace hamcoh
