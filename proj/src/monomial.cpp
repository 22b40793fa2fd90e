#include "hamcoh/monomial.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

#include "hamcoh/error.hpp"

namespace hamcoh {

Monomial::Monomial(std::size_t num_vars) {
  if (num_vars > kMaxVariables)
    throw ConfigError("at most " + std::to_string(kMaxVariables) +
                      " variables are supported");
  n_ = static_cast<std::uint8_t>(num_vars);
}

Monomial::Monomial(std::initializer_list<unsigned> exponents)
    : Monomial(exponents.size()) {
  std::size_t i = 0;
  for (auto e : exponents) set_exponent(i++, e);
}

Monomial Monomial::from_exponents(std::span<const unsigned> exponents) {
  Monomial m(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i)
    m.set_exponent(i, exponents[i]);
  return m;
}

Monomial Monomial::power(std::size_t num_vars, std::size_t var,
                         unsigned power) {
  Monomial m(num_vars);
  m.set_exponent(var, power);
  return m;
}

void Monomial::set_exponent(std::size_t var, unsigned e) {
  if (var >= n_) throw ContractError("variable index out of range");
  if (e > 255) throw ContractError("exponent too large");
  exps_[var] = static_cast<std::uint8_t>(e);
}

unsigned Monomial::total_degree() const noexcept {
  unsigned s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += exps_[i];
  return s;
}

unsigned Monomial::max_exponent() const noexcept {
  unsigned m = 0;
  for (std::size_t i = 0; i < n_; ++i) m = std::max<unsigned>(m, exps_[i]);
  return m;
}

std::strong_ordering operator<=>(const Monomial& a,
                                 const Monomial& b) noexcept {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  for (std::size_t i = 0; i < a.n_; ++i)
    if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

MonomialCodec::MonomialCodec(std::size_t num_vars, std::uint32_t p)
    : n_(num_vars),
      bits_(static_cast<unsigned>(std::bit_width(std::uint64_t{p}))) {
  if (bits_ * n_ > 63)
    throw ConfigError("monomial packing exceeds 63 bits");
}

std::uint64_t MonomialCodec::key(const Monomial& m) const noexcept {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) k = (k << bits_) | m.exponent(i);
  return k;
}

Monomial MonomialCodec::decode(std::uint64_t key) const {
  Monomial m(n_);
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  for (std::size_t i = n_; i-- > 0;) {
    m.set_exponent(i, static_cast<unsigned>(key & mask));
    key >>= bits_;
  }
  return m;
}

std::uint64_t MonomialCodec::key_bound() const noexcept {
  return std::uint64_t{1} << (bits_ * n_);
}

std::optional<MonomialProduct> multiply(const Monomial& a, const Monomial& b,
                                        const PrimeField& field) {
  const auto p = field.modulus();
  if (a.num_vars() != b.num_vars())
    throw ContractError("multiplying monomials in different variable counts");
  if (a.max_exponent() >= p || b.max_exponent() >= p)
    throw ContractError("multiply: exponent p factor " +
                        to_string(a.max_exponent() >= p ? a : b) +
                        " is outside the truncated range");
  Monomial prod(a.num_vars());
  Fp c{1};
  for (std::size_t i = 0; i < a.num_vars(); ++i) {
    const unsigned r = a.exponent(i), s = b.exponent(i);
    c = field.mul(c, field.binomial(r + s, r));
    if (c.is_zero()) return std::nullopt;
    prod.set_exponent(i, r + s);
  }
  return MonomialProduct{c, prod};
}

std::optional<Monomial> derivative(const Monomial& a, std::size_t var) {
  if (var >= a.num_vars()) throw ContractError("derivative: bad variable");
  if (a.exponent(var) == 0) return std::nullopt;
  Monomial d = a;
  d.set_exponent(var, a.exponent(var) - 1);
  return d;
}

int standard_grade(const Monomial& a) noexcept {
  return static_cast<int>(a.total_degree()) - 2;
}

int symmetric_grade(const Monomial& a) noexcept {
  const std::size_t m = a.num_vars() / 2;
  int g = 0;
  for (std::size_t i = 0; i < a.num_vars(); ++i)
    g += i < m ? -static_cast<int>(a.exponent(i))
               : static_cast<int>(a.exponent(i));
  return g;
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.num_vars(); ++i) {
    if (m.exponent(i) == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i + 1) + "^(" + std::to_string(m.exponent(i)) +
           ')';
  }
  return out.empty() ? "1" : out;
}

namespace {

unsigned parse_unsigned(std::string_view& s, std::string_view whole) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr == s.data())
    throw ConfigError("malformed monomial '" + std::string(whole) + "'");
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return v;
}

}  // namespace

Monomial parse_monomial(std::string_view text, std::size_t num_vars) {
  Monomial m(num_vars);
  std::string cleaned;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
  std::string_view s = cleaned;
  if (s == "1") return m;
  const auto bad = [&] {
    return ConfigError("malformed monomial '" + std::string(text) + "'");
  };
  if (s.empty()) throw bad();
  while (!s.empty()) {
    if (s.front() != 'x') throw bad();
    s.remove_prefix(1);
    const unsigned var = parse_unsigned(s, text);
    if (var < 1 || var > num_vars)
      throw ConfigError("variable x" + std::to_string(var) +
                          " out of range in '" + std::string(text) + "'");
    unsigned e = 1;
    if (!s.empty() && s.front() == '^') {
      s.remove_prefix(1);
      const bool paren = !s.empty() && s.front() == '(';
      if (paren) s.remove_prefix(1);
      e = parse_unsigned(s, text);
      if (paren) {
        if (s.empty() || s.front() != ')') throw bad();
        s.remove_prefix(1);
      }
    }
    if (m.exponent(var - 1) + e > 255)
      throw ConfigError("exponent too large in '" + std::string(text) + "'");
    m.set_exponent(var - 1, m.exponent(var - 1) + e);
    if (!s.empty()) {
      if (s.front() != '*') throw bad();
      s.remove_prefix(1);
      if (s.empty()) throw bad();
    }
  }
  return m;
}

AlgebraElement::AlgebraElement(Monomial m, Fp c) {
  if (!c.is_zero()) terms_.push_back({std::move(m), c});
}

Fp AlgebraElement::coefficient(const Monomial& m) const noexcept {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& x) { return t.monomial < x; });
  return it != terms_.end() && it->monomial == m ? it->coefficient : Fp{};
}

void AlgebraElement::add_term(const Monomial& m, Fp c,
                              const PrimeField& field) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& x) { return t.monomial < x; });
  if (it != terms_.end() && it->monomial == m) {
    it->coefficient = field.add(it->coefficient, c);
    if (it->coefficient.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term{m, c});
  }
}

void AlgebraElement::add(const AlgebraElement& other, const PrimeField& field) {
  for (const auto& t : other.terms_) add_term(t.monomial, t.coefficient, field);
}

void AlgebraElement::scale(Fp c, const PrimeField& field) {
  if (c.is_zero()) {
    terms_.clear();
    return;
  }
  for (auto& t : terms_) t.coefficient = field.mul(t.coefficient, c);
}

void AlgebraElement::drop_constant() {
  std::erase_if(terms_, [](const Term& t) { return t.monomial.is_constant(); });
}

AlgebraElement AlgebraElement::from_sorted_terms(std::vector<Term> terms) {
  AlgebraElement f;
  f.terms_ = std::move(terms);
  return f;
}

AlgebraElement derivative(const AlgebraElement& f, std::size_t var) {
  // Decrementing one coordinate preserves lexicographic order.
  std::vector<AlgebraElement::Term> terms;
  for (const auto& t : f.terms())
    if (auto d = derivative(t.monomial, var))
      terms.push_back({*d, t.coefficient});
  return AlgebraElement::from_sorted_terms(std::move(terms));
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                        const PrimeField& field) {
  AlgebraElement out;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms())
      if (auto prod = multiply(ta.monomial, tb.monomial, field))
        out.add_term(prod->product,
                     field.mul(prod->coefficient,
                               field.mul(ta.coefficient, tb.coefficient)),
                     field);
  return out;
}

std::string to_string(const AlgebraElement& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    if (t.coefficient.value != 1) out += std::to_string(t.coefficient.value) + '*';
    out += to_string(t.monomial);
  }
  return out;
}

}  // namespace hamcoh
