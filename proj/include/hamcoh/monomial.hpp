#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hamcoh/gfp.hpp"

namespace hamcoh {

inline constexpr std::size_t kMaxVariables = 8;

// Divided-power monomial x^(r) = prod_i x_i^(r_i). Variables are 0-based
// internally and 1-based in the text syntax.
//
// Ordering is lexicographic on (r_1, ..., r_n), which coincides with the
// order of the packed key from MonomialCodec since every exponent fits its
// bit field.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars);
  Monomial(std::initializer_list<unsigned> exponents);
  static Monomial from_exponents(std::span<const unsigned> exponents);
  // x_var^(power), all other exponents 0.
  static Monomial power(std::size_t num_vars, std::size_t var, unsigned power);

  std::size_t num_vars() const noexcept { return n_; }
  unsigned exponent(std::size_t var) const noexcept { return exps_[var]; }
  void set_exponent(std::size_t var, unsigned e);
  unsigned total_degree() const noexcept;
  bool is_constant() const noexcept { return total_degree() == 0; }
  unsigned max_exponent() const noexcept;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b) noexcept;

 private:
  std::array<std::uint8_t, kMaxVariables> exps_{};
  std::uint8_t n_ = 0;
};

// Packs exponent vectors into integers with ceil(log2(p+1)) bits per
// variable, x_1 in the most significant field.
class MonomialCodec {
 public:
  MonomialCodec(std::size_t num_vars, std::uint32_t p);

  std::uint64_t key(const Monomial& m) const noexcept;
  Monomial decode(std::uint64_t key) const;
  unsigned bits_per_variable() const noexcept { return bits_; }
  // One past the largest key any monomial with exponents <= p can produce.
  std::uint64_t key_bound() const noexcept;

 private:
  std::size_t n_;
  unsigned bits_;
};

struct MonomialProduct {
  Fp coefficient;
  Monomial product;
};

// x^(r) * x^(s) = C(r+s, r) x^(r+s). Returns nullopt when the coefficient
// vanishes mod p. Both factors must have all exponents < p.
std::optional<MonomialProduct> multiply(const Monomial& a, const Monomial& b,
                                        const PrimeField& field);

// d/dx_var x^(r): decrements r_var with coefficient 1, nullopt if r_var = 0.
std::optional<Monomial> derivative(const Monomial& a, std::size_t var);

// sum r_i - 2: constants in grade -2, linear monomials in grade -1.
int standard_grade(const Monomial& a) noexcept;
// deg x_i = -1 for i <= m, +1 for i > m, with n = 2m.
int symmetric_grade(const Monomial& a) noexcept;

// Canonical text form, e.g. "x1^(2)*x2^(1)"; the constant monomial is "1".
std::string to_string(const Monomial& m);
// Accepts "1", "x1", "x1^(2)*x3", "x2^2"; repeated variables add.
Monomial parse_monomial(std::string_view text, std::size_t num_vars);

// Sparse GF(p)-linear combination of monomials: ascending monomial order,
// no stored zeros.
class AlgebraElement {
 public:
  struct Term {
    Monomial monomial;
    Fp coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  AlgebraElement() = default;
  explicit AlgebraElement(Monomial m, Fp c = Fp{1});
  // Terms must already be strictly ascending with nonzero coefficients.
  static AlgebraElement from_sorted_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Fp coefficient(const Monomial& m) const noexcept;

  void add_term(const Monomial& m, Fp c, const PrimeField& field);
  void add(const AlgebraElement& other, const PrimeField& field);
  void scale(Fp c, const PrimeField& field);
  // Removes the constant term, if any.
  void drop_constant();

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::vector<Term> terms_;
};

AlgebraElement derivative(const AlgebraElement& f, std::size_t var);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                        const PrimeField& field);
std::string to_string(const AlgebraElement& f);

}  // namespace hamcoh
