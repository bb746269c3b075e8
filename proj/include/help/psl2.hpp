#pragma once

// The fragment of the character table of G = PSL(2, p^3) that the unit
// analysis needs (two characters on the classes 1, g, h), and the Sylow
// structure of PSL(2, q) used to dispatch primes r to cited results.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "exactnum.hpp"
#include "modular.hpp"
#include "residue.hpp"

namespace help {

// Column order of the fragment.
enum class PSLClass : std::size_t { Identity = 0, G = 1, H = 2 };

struct PSLFragment {
  std::int64_t p = 3;
  mpz_class group_order;  // p^3 (p^6 - 1) / 2
  int epsilon = -1;
  // Number of classes of elements of order p.
  int order_p_classes = 2;
  // sqrt(eps p^3) = p (1 + 2 sum_{q in Q} zeta^q)
  CycNum sqrt_eps_p3 = CycNum::zero(3);
  std::array<CycNum, 3> eta{CycNum::zero(3), CycNum::zero(3), CycNum::zero(3)};
  std::array<CycNum, 3> eta_prime{CycNum::zero(3), CycNum::zero(3), CycNum::zero(3)};

  // (p^3 + eps) / 2
  Rational degree() const { return eta[0].rational_value(); }
};

// g is the class on which eta takes the value (eps + sqrt(eps p^3)) / 2 with
// the residue-sum square root; h carries the other sign.
inline PSLFragment psl2_fragment(std::int64_t p) {
  require_odd_prime(p, "psl2_fragment");
  const ResidueData rd = residue_sets(p);
  PSLFragment f;
  f.p = p;
  f.epsilon = rd.epsilon;
  const mpz_class q = mpz_class(static_cast<long>(p)) * p * p;
  f.group_order = q * (q * q - 1) / 2;
  f.sqrt_eps_p3 = gauss_sum(p) * Rational(p);

  const Rational eps(rd.epsilon);
  const CycNum e = CycNum::rational(p, eps);
  const CycNum deg = CycNum::rational(p, (Rational(q) + eps) / 2);
  const CycNum at_g = (e + f.sqrt_eps_p3) / Rational(2);
  const CycNum at_h = (e - f.sqrt_eps_p3) / Rational(2);
  f.eta = {deg, at_g, at_h};
  f.eta_prime = {deg, at_h, at_g};
  return f;
}

enum class SylowKind { ElementaryAbelian, Cyclic, Dihedral };

inline const char* to_string(SylowKind k) {
  switch (k) {
    case SylowKind::ElementaryAbelian: return "ElementaryAbelian";
    case SylowKind::Cyclic: return "Cyclic";
    case SylowKind::Dihedral: return "Dihedral";
  }
  return "?";
}

struct SylowShape {
  std::int64_t r = 2;
  SylowKind shape = SylowKind::Cyclic;
  std::uint64_t sylow_order = 1;
  // Empty when the case is the one this library settles (r = p odd);
  // otherwise the citation key of the result that settles it.
  std::string citation;
  bool settled_by_literature() const { return !citation.empty(); }
};

namespace cite {
inline constexpr const char* kDihedral = "HHK Theorem 2.1 / dihedral";
inline constexpr const char* kCyclicOdd = "CpCp Corollary 1 / cyclic";
inline constexpr const char* kElementaryAbelianTwo =
    "CL Corollary 4.1 + Saksonov Corollary 1.7 / elementary abelian";
}  // namespace cite

struct PrimePower {
  std::int64_t p = 0;
  int f = 0;
};

// q = p^f with p prime and f >= 1, or throws.
inline PrimePower prime_power(std::int64_t q) {
  if (q < 2) throw invalid_parameter("prime_power: " + std::to_string(q) + " < 2");
  std::int64_t p = q;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  PrimePower pp{p, 0};
  for (std::int64_t x = q; x > 1; x /= p) {
    if (x % p != 0)
      throw invalid_parameter("prime_power: " + std::to_string(q) + " is not a prime power");
    ++pp.f;
  }
  return pp;
}

// |PSL(2, q)| = q (q^2 - 1) / gcd(2, q - 1)
inline unsigned __int128 psl2_order(std::int64_t q) {
  const auto uq = static_cast<unsigned __int128>(q);
  return uq * (uq * uq - 1) / (q % 2 == 0 ? 1 : 2);
}

// Sylow r-subgroups of PSL(2, q): elementary abelian for r = p, cyclic for odd
// r != p, dihedral for r = 2 != p.
inline SylowShape sylow_shape(std::int64_t q, std::int64_t r) {
  if (q > (std::int64_t{1} << 40)) throw invalid_parameter("sylow_shape: q too large");
  const PrimePower pp = prime_power(q);
  if (!is_prime(r)) throw invalid_parameter("sylow_shape: r = " + std::to_string(r) + " is not prime");
  unsigned __int128 order = psl2_order(q);
  if (order % static_cast<unsigned __int128>(r) != 0)
    throw invalid_parameter("sylow_shape: " + std::to_string(r) + " does not divide |PSL(2," +
                            std::to_string(q) + ")|");
  SylowShape s;
  s.r = r;
  while (order % static_cast<unsigned __int128>(r) == 0) {
    order /= static_cast<unsigned __int128>(r);
    s.sylow_order *= static_cast<std::uint64_t>(r);
  }
  if (r == pp.p) {
    s.shape = SylowKind::ElementaryAbelian;
    if (r == 2) s.citation = cite::kElementaryAbelianTwo;
  } else if (r != 2) {
    s.shape = SylowKind::Cyclic;
    s.citation = cite::kCyclicOdd;
  } else {
    s.shape = SylowKind::Dihedral;
    s.citation = cite::kDihedral;
  }
  return s;
}

inline std::vector<std::int64_t> prime_divisors_of_psl2_order(std::int64_t q) {
  unsigned __int128 n = psl2_order(q);
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; static_cast<unsigned __int128>(d) * d <= n; ++d) {
    if (n % static_cast<unsigned __int128>(d) != 0) continue;
    out.push_back(d);
    while (n % static_cast<unsigned __int128>(d) == 0) n /= static_cast<unsigned __int128>(d);
  }
  if (n > 1) out.push_back(static_cast<std::int64_t>(n));
  return out;
}

}  // namespace help
