#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace hamcoh {

// An element of GF(p). The modulus lives in the PrimeField that produced it.
struct Fp {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(Fp, Fp) = default;
  constexpr bool is_zero() const noexcept { return value == 0; }
};

bool is_prime(std::uint64_t n) noexcept;

// Prime field GF(p) for an odd prime p < 2^16, with inverse and factorial
// tables. The modulus is validated once here;
// the arithmetic members assume reduced inputs and do not re-check.
class PrimeField {
 public:
  static constexpr std::uint32_t kMaxModulus = 65521;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  Fp make(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fp{static_cast<std::uint32_t>(r)};
  }

  Fp add(Fp a, Fp b) const noexcept {
    auto s = a.value + b.value;
    return Fp{s >= p_ ? s - p_ : s};
  }
  Fp sub(Fp a, Fp b) const noexcept {
    return Fp{a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  Fp neg(Fp a) const noexcept { return Fp{a.value == 0 ? 0 : p_ - a.value}; }
  Fp mul(Fp a, Fp b) const noexcept {
    return Fp{static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a.value) * b.value) % p_)};
  }

  // Throws ContractError for a = 0.
  Fp inv(Fp a) const;

  // C(a, b) mod p for b <= a <= 2p.
  Fp binomial(unsigned a, unsigned b) const;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> factorial_;          // i! for i < p
  std::vector<std::uint32_t> inverse_factorial_;
};

}  // namespace hamcoh
