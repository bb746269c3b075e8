#pragma once

// Quadratic residues modulo an odd prime and the quadratic Gauss sum in Q(zeta_p).

#include <cstdint>
#include <utility>
#include <vector>

#include "exactnum.hpp"
#include "modular.hpp"

namespace help {

// Legendre symbol (r | p) by Euler's criterion.
inline int legendre(std::int64_t r, std::int64_t p) {
  require_odd_prime(p, "legendre");
  const std::int64_t a = mod(r, p);
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

struct ResidueData {
  std::int64_t p = 3;
  int epsilon = -1;                    // p = epsilon mod 4
  std::vector<std::int64_t> residues;  // Q, least positive representatives
  std::vector<std::int64_t> nonresidues;  // N

  bool is_residue(std::int64_t r) const { return legendre(r, p) == 1; }

  // Least positive non-residue.
  std::int64_t least_nonresidue() const { return nonresidues.front(); }
};

inline ResidueData residue_sets(std::int64_t p) {
  require_odd_prime(p, "residue_sets");
  ResidueData data;
  data.p = p;
  data.epsilon = p % 4 == 1 ? 1 : -1;
  for (std::int64_t r = 1; r < p; ++r)
    (legendre(r, p) == 1 ? data.residues : data.nonresidues).push_back(r);
  return data;
}

// sum_{k in set} zeta^k
inline CycNum root_sum(std::int64_t p, const std::vector<std::int64_t>& exponents) {
  CycNum s = CycNum::zero(p);
  for (auto k : exponents) s.add_root(mod(k, p), Rational(1));
  return s;
}

// 1 + 2 sum_{q in Q} zeta^q, a square root of epsilon * p.
inline CycNum gauss_sum(std::int64_t p) {
  const ResidueData rd = residue_sets(p);
  return CycNum::one(p) + root_sum(p, rd.residues) * Rational(2);
}

// 1 + 2 sum_{n in N} zeta^n, the other square root of epsilon * p.
inline CycNum gauss_sum_nonresidue(std::int64_t p) {
  const ResidueData rd = residue_sets(p);
  return CycNum::one(p) + root_sum(p, rd.nonresidues) * Rational(2);
}

// Evaluates
//   SQ*SQ + SN*SN   and   SN*SQ + SQ*SN
// (SQ, SN the residue / non-residue root sums) in Q(zeta_p) and checks them
// against (eps p + 1)/2 and (-eps p + 1)/2. Returns the two closed forms.
inline std::pair<Rational, Rational> product_identities(std::int64_t p) {
  const ResidueData rd = residue_sets(p);
  const CycNum sq = root_sum(p, rd.residues);
  const CycNum sn = root_sum(p, rd.nonresidues);

  const CycNum same = sq * sq + sn * sn;
  const CycNum cross = sn * sq + sq * sn;

  const Rational eps_p = Rational(rd.epsilon * p);
  const Rational expect_same = (eps_p + 1) / 2;
  const Rational expect_cross = (-eps_p + 1) / 2;

  if (!same.is_rational() || same.rational_value() != expect_same)
    throw identity_violation("p=" + std::to_string(p) + ": SQ^2 + SN^2 = " + same.str() +
                             ", expected " + expect_same.get_str());
  if (!cross.is_rational() || cross.rational_value() != expect_cross)
    throw identity_violation("p=" + std::to_string(p) + ": 2 SQ SN = " + cross.str() +
                             ", expected " + expect_cross.get_str());
  return {expect_same, expect_cross};
}

}  // namespace help
