#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace help {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline bool is_odd_prime(std::int64_t n) { return n != 2 && is_prime(n); }

inline void require_odd_prime(std::int64_t p, const char* where) {
  if (!is_odd_prime(p))
    throw invalid_parameter(std::string(where) + ": " + std::to_string(p) +
                            " is not an odd prime");
}

// Least nonnegative residue.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  using u128 = unsigned __int128;
  std::uint64_t b = static_cast<std::uint64_t>(mod(base, m));
  std::uint64_t result = 1 % static_cast<std::uint64_t>(m);
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::uint64_t>(u128(result) * b % m);
    b = static_cast<std::uint64_t>(u128(b) * b % m);
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a modulo m via extended Euclid; throws if gcd(a, m) != 1.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1)
    throw invalid_parameter(std::to_string(a) + " is not invertible modulo " +
                            std::to_string(m));
  return mod(old_s, m);
}

}  // namespace help
