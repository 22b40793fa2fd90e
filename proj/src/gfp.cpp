#include "hamcoh/gfp.hpp"

#include <string>

#include "hamcoh/error.hpp"

namespace hamcoh {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p == 2)
    throw ConfigError("characteristic 2 is not supported; use an odd prime");
  if (p > kMaxModulus || !is_prime(p))
    throw ConfigError("modulus " + std::to_string(p) +
                      " is not an odd prime below " +
                      std::to_string(kMaxModulus + 1));

  inverse_.assign(p, 0);
  inverse_[1] = 1;
  // inv(a) = -(p / a) * inv(p mod a)
  for (std::uint32_t a = 2; a < p; ++a)
    inverse_[a] = static_cast<std::uint32_t>(
        (p - static_cast<std::uint64_t>(p / a) * inverse_[p % a] % p) % p);

  factorial_.assign(p, 1);
  inverse_factorial_.assign(p, 1);
  for (std::uint32_t i = 1; i < p; ++i) {
    factorial_[i] = static_cast<std::uint32_t>(std::uint64_t{factorial_[i - 1]} * i % p);
    inverse_factorial_[i] =
        static_cast<std::uint32_t>(std::uint64_t{inverse_factorial_[i - 1]} * inverse_[i] % p);
  }
}

Fp PrimeField::inv(Fp a) const {
  if (a.value == 0) throw ContractError("inverse of zero in GF(" +
                                        std::to_string(p_) + ")");
  return Fp{inverse_[a.value]};
}

Fp PrimeField::binomial(unsigned a, unsigned b) const {
  if (b > a)
    throw ContractError("binomial(" + std::to_string(a) + ", " +
                        std::to_string(b) + "): lower index exceeds upper");
  if (a > 2 * p_)
    throw ContractError("binomial(" + std::to_string(a) +
                        ", .): upper index exceeds 2p");
  // Lucas: a = a1 p + a0, b = b1 p + b0 with a1, b1 <= 2
  const unsigned a1 = a / p_, a0 = a % p_, b1 = b / p_, b0 = b % p_;
  if (b0 > a0 || b1 > a1) return Fp{0};
  const std::uint64_t high = a1 == 2 && b1 == 1 ? 2 : 1;
  const std::uint64_t low = std::uint64_t{factorial_[a0]} * inverse_factorial_[b0] % p_ *
                            inverse_factorial_[a0 - b0] % p_;
  return Fp{static_cast<std::uint32_t>(high * low % p_)};
}

}  // namespace hamcoh
