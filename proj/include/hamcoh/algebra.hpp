#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hamcoh/gfp.hpp"
#include "hamcoh/monomial.hpp"
#include "hamcoh/sparse_matrix.hpp"

namespace hamcoh {

// po: Poisson algebra, h: Hamiltonian, h1/h2: its first and second derived
// ideals.
enum class Family { po, h, h1, h2 };
enum class Grading { standard, symmetric };

std::string_view to_string(Family f) noexcept;
std::string_view to_string(Grading g) noexcept;
Family parse_family(std::string_view s);
Grading parse_grading(std::string_view s);

struct AlgebraSpec {
  Family family = Family::h;
  unsigned n = 2;
  std::uint32_t p = 3;
  Grading grading = Grading::symmetric;

  // Throws ConfigError unless n is even in [2, 8] and p is an odd prime.
  void validate() const;
  std::string label() const;  // e.g. "h2(2)_5"

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

// p^n + n, p^n + n - 1, p^n - 1, p^n - 2.
std::uint64_t expected_dimension(const AlgebraSpec& spec);

// Whether x^(r) belongs to the monomial basis of spec's family.
bool in_basis(const Monomial& m, const AlgebraSpec& spec);

// Ascending monomial order, exponent-p generators x_i^(p) last.
std::vector<Monomial> build_basis(const AlgebraSpec& spec);

// {f, g} = sum_i (df/dx_i dg/dx_{i+m} - df/dx_{i+m} dg/dx_i). Constants are
// projected out for every family except po. Throws ContractError when an
// operand has a monomial outside the family's basis.
AlgebraElement poisson_bracket(const AlgebraElement& f, const AlgebraElement& g,
                               const AlgebraSpec& spec);

struct BracketTerm {
  std::uint32_t index;
  std::uint32_t coeff;
  friend bool operator==(const BracketTerm&, const BracketTerm&) = default;
};

// Finite-dimensional Lie algebra with a monomial basis and structure
// constants stored for i < j only.
class LiePAlgebra {
 public:
  // pair_terms holds [e_i, e_j] for every i < j in row-major pair order.
  LiePAlgebra(AlgebraSpec spec, std::vector<Monomial> basis,
              const std::vector<std::vector<BracketTerm>>& pair_terms);

  const AlgebraSpec& spec() const noexcept { return spec_; }
  const PrimeField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  std::optional<std::size_t> index_of(const Monomial& m) const;
  // True when the basis is exactly build_basis(spec()).
  bool canonical() const noexcept { return canonical_; }

  // Grades in the algebra's own grading, or in an explicit one.
  const std::vector<int>& grades() const noexcept {
    return grades(spec_.grading);
  }
  const std::vector<int>& grades(Grading g) const noexcept {
    return g == Grading::standard ? standard_grades_ : symmetric_grades_;
  }
  int min_grade() const noexcept;
  int max_grade() const noexcept;
  int grade_range() const noexcept;  // max |grade|

  struct Bracket {
    std::span<const BracketTerm> terms;
    bool negate = false;
  };
  // [e_i, e_j]; empty for i == j.
  Bracket bracket(std::size_t i, std::size_t j) const;
  SparseVector bracket_vector(std::size_t i, std::size_t j) const;

  // Coordinates of f in the basis; ClosureError if f leaves the span.
  SparseVector coordinates(const AlgebraElement& f) const;
  AlgebraElement element(const SparseVector& v) const;

  LiePAlgebra with_grading(Grading g) const;
  // Subalgebra spanned by the given basis indices; ClosureError unless the
  // span is closed under the bracket.
  LiePAlgebra restrict_to(std::span<const std::size_t> indices) const;
  // Replaces [e_i, e_j] (i < j). Used to build corrupted fixtures.
  void overwrite_bracket(std::size_t i, std::size_t j,
                         std::vector<BracketTerm> terms);

  std::vector<std::vector<BracketTerm>> pair_terms() const;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const noexcept {
    return i * (2 * dim() - i - 1) / 2 + (j - i - 1);
  }

  AlgebraSpec spec_;
  PrimeField field_;
  std::vector<Monomial> basis_;
  MonomialCodec codec_;
  std::unordered_map<std::uint64_t, std::uint32_t> lookup_;  // packed key -> index
  bool canonical_ = false;
  std::vector<int> standard_grades_;
  std::vector<int> symmetric_grades_;
  std::vector<std::size_t> offsets_;
  std::vector<BracketTerm> terms_;
};

// Tabulates the bracket over all basis pairs. Throws ClosureError naming the
// pair when a bracket escapes the span or breaks grade additivity.
LiePAlgebra structure_constants(const AlgebraSpec& spec);

// Basis indices spanning [L, L]. Throws ContractError if that span is not
// a coordinate subspace.
std::vector<std::size_t> derived_ideal(const LiePAlgebra& algebra);

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::size_t checked = 0;
  std::string detail;
};

struct AlgebraReport {
  std::vector<CheckResult> checks;
  // +1 if ad_z acts as +grade, -1 if as -grade, 0 if neither.
  int grading_element_sign = 0;
  bool passed() const;
};

AlgebraReport verify_algebra(const LiePAlgebra& algebra);

// True iff [z, e] = (symmetric_grade(e) mod p) e for every basis element,
// z = sum_{i<=m} x_i x_{i+m}.
bool grading_element_check(const LiePAlgebra& algebra);

}  // namespace hamcoh
