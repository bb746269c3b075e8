#pragma once

// Partial augmentations of a torsion unit u of order p in V(Z G),
// G = PSL(2, p^3), and what they force on the character eta.
//
// Only the two classes g, h of elements of order p can carry nonzero partial
// augmentations, and they sum to 1. Writing them as (alpha+1, -alpha) (the
// G-branch) or (-alpha, alpha+1) (the H-branch) with alpha >= 0, the value of
// eta on u is
//   (p + eps)/2 + alpha p + (2 alpha + 1) p sum_{k in S} zeta^k,
// with S the quadratic residues on the G-branch and the non-residues on the
// H-branch. The spectrum of D(u) follows from that value: D affords eta and
// is never constructed.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "char_table.hpp"
#include "exactnum.hpp"
#include "psl2.hpp"
#include "residue.hpp"

namespace help {

enum class Branch { G, H };

inline const char* to_string(Branch b) { return b == Branch::G ? "G" : "H"; }
inline Branch flip(Branch b) { return b == Branch::G ? Branch::H : Branch::G; }

struct PAVector {
  std::int64_t eps_g = 1;
  std::int64_t eps_h = 0;
  std::int64_t alpha = 0;
  Branch branch = Branch::G;

  static PAVector g_branch(std::int64_t alpha) { return {alpha + 1, -alpha, alpha, Branch::G}; }
  static PAVector h_branch(std::int64_t alpha) { return {-alpha, alpha + 1, alpha, Branch::H}; }
  static PAVector of(Branch b, std::int64_t alpha) {
    return b == Branch::G ? g_branch(alpha) : h_branch(alpha);
  }

  // (eps_g, eps_h) with eps_g + eps_h = 1.
  static PAVector from_augmentations(std::int64_t eps_g, std::int64_t eps_h) {
    if (eps_g + eps_h != 1)
      throw invalid_parameter("partial augmentations (" + std::to_string(eps_g) + ", " +
                              std::to_string(eps_h) + ") do not sum to 1");
    return eps_g > 0 ? g_branch(eps_g - 1) : h_branch(-eps_g);
  }

  friend bool operator==(const PAVector&, const PAVector&) = default;

  std::string str() const {
    return "(" + std::to_string(eps_g) + "," + std::to_string(eps_h) + ")";
  }
};

// Multiplicities mult[l] of the eigenvalue zeta^l, l = 0 .. p-1.
struct EigLayout {
  std::int64_t p = 3;
  std::vector<std::int64_t> mult;

  std::int64_t degree() const {
    std::int64_t d = 0;
    for (auto m : mult) d += m;
    return d;
  }

  // sum_l mult[l] zeta^l
  CycNum trace() const {
    CycNum t = CycNum::zero(p);
    for (std::int64_t l = 0; l < p; ++l)
      if (mult[static_cast<std::size_t>(l)] != 0)
        t.add_root(l, Rational(mult[static_cast<std::size_t>(l)]));
    return t;
  }

  friend bool operator==(const EigLayout&, const EigLayout&) = default;
};

// Eigenvalues of D(u^k) are the k-th powers of those of D(u).
inline EigLayout power_map(const EigLayout& layout, std::int64_t k) {
  EigLayout out{layout.p, std::vector<std::int64_t>(layout.mult.size(), 0)};
  for (std::int64_t l = 0; l < layout.p; ++l)
    out.mult[static_cast<std::size_t>(mod(k * l, layout.p))] += layout.mult[static_cast<std::size_t>(l)];
  return out;
}

// Largest alpha whose layout has no negative multiplicity: the number of
// full blocks (p^2 - p)/2 - alpha p must stay nonnegative.
inline std::int64_t max_admissible_alpha(std::int64_t p) { return (p - 1) / 2; }

inline std::vector<PAVector> admissible_pa(std::int64_t p) {
  require_odd_prime(p, "admissible_pa");
  std::vector<PAVector> out;
  for (std::int64_t a = 0; a <= max_admissible_alpha(p); ++a) out.push_back(PAVector::g_branch(a));
  for (std::int64_t a = 0; a <= max_admissible_alpha(p); ++a) out.push_back(PAVector::h_branch(a));
  return out;
}

inline CycNum unit_char_value(std::int64_t p, const PAVector& pa) {
  const ResidueData rd = residue_sets(p);
  const auto& set = pa.branch == Branch::G ? rd.residues : rd.nonresidues;
  const Rational base = Rational(p + rd.epsilon) / 2 + Rational(pa.alpha * p);
  return CycNum::rational(p, base) + root_sum(p, set) * Rational((2 * pa.alpha + 1) * p);
}

// eps_g eta(g) + eps_h eta(h), straight from the fragment.
inline CycNum unit_char_value_from_fragment(const PSLFragment& f, const PAVector& pa) {
  return f.eta[1] * Rational(pa.eps_g) + f.eta[2] * Rational(pa.eps_h);
}

inline EigLayout eigenvalue_layout(std::int64_t p, const PAVector& pa) {
  const ResidueData rd = residue_sets(p);
  const std::int64_t blocks = (p * p - p) / 2 - pa.alpha * p;
  if (blocks < 0 || pa.alpha < 0)
    throw inadmissible("alpha = " + std::to_string(pa.alpha) + " exceeds " +
                       std::to_string(max_admissible_alpha(p)) + " at p = " + std::to_string(p) +
                       ": negative eigenvalue multiplicity");
  EigLayout layout{p, std::vector<std::int64_t>(static_cast<std::size_t>(p), blocks)};
  layout.mult[0] += (p + rd.epsilon) / 2 + pa.alpha * p;
  const auto& set = pa.branch == Branch::G ? rd.residues : rd.nonresidues;
  for (auto k : set) layout.mult[static_cast<std::size_t>(k)] += (2 * pa.alpha + 1) * p;
  return layout;
}

namespace detail {

// A primitive n-th root of unity inside Q(zeta_p) for n | 2p, as sign * zeta^e.
struct RootOfUnity {
  int sign = 1;
  std::int64_t e = 0;
};

inline RootOfUnity primitive_root(std::int64_t p, std::int64_t n) {
  if (n == 1) return {1, 0};
  if (n == 2) return {-1, 0};
  if (n == p) return {1, 1};
  return {-1, (p + 1) / 2};  // n == 2p: (-zeta^((p+1)/2))^2 = zeta
}

inline CycNum root_power(std::int64_t p, RootOfUnity xi, std::int64_t k) {
  CycNum r = CycNum::zeta_power(p, xi.e * k);
  if (xi.sign < 0 && mod(k, 2) == 1) r = -r;
  return r;
}

}  // namespace detail

// Luthar-Passi multiplicity of xi^l as an eigenvalue of D(u), u of order n:
//   mu_l = (1/n) sum_{d | n} Tr_{Q(xi^d)/Q}( chi(u^d) xi^(-d l) ),
// xi a fixed primitive n-th root of unity. All values must live in Q(zeta_p),
// which restricts n to the divisors of 2p. char_on_powers[d] = chi(u^d).
inline Rational lp_multiplicities(std::int64_t p, std::int64_t n,
                                  const std::map<std::int64_t, CycNum>& char_on_powers,
                                  std::int64_t l) {
  require_odd_prime(p, "lp_multiplicities");
  if (n < 1 || (2 * p) % n != 0)
    throw invalid_parameter("lp_multiplicities: order " + std::to_string(n) +
                            " does not divide 2p; its character values leave Q(zeta_" +
                            std::to_string(p) + ")");
  const detail::RootOfUnity xi = detail::primitive_root(p, n);
  Rational sum = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    auto it = char_on_powers.find(d);
    if (it == char_on_powers.end())
      throw incomplete_input("lp_multiplicities: no character value for u^" + std::to_string(d));
    const CycNum term = it->second * detail::root_power(p, xi, -d * l);
    const std::int64_t sub_order = n / d;
    sum += sub_order <= 2 ? term.rational_value() : rational_trace(term);
  }
  return sum / n;
}

// One entry per class of H (class numbering of HeisenbergGroup). The
// identity class carries no partial augmentation and is ignored.
using ClassAssignment = std::vector<std::optional<PAVector>>;

// eta restricted to H under the given assignment.
inline ClassFunction eta_on_classes(std::int64_t p, const ClassAssignment& assignment) {
  const HeisenbergGroup group(p);
  if (assignment.size() != group.class_count())
    throw incomplete_input("assignment covers " + std::to_string(assignment.size()) + " of " +
                           std::to_string(group.class_count()) + " classes");
  const ResidueData rd = residue_sets(p);
  std::map<std::pair<int, std::int64_t>, CycNum> cache;
  ClassFunction eta;
  eta.reserve(assignment.size());
  const Rational degree = (Rational(p * p * p) + rd.epsilon) / 2;
  eta.push_back(CycNum::rational(p, degree));
  for (std::size_t k = 1; k < assignment.size(); ++k) {
    if (!assignment[k])
      throw incomplete_input("assignment has no partial augmentation for class " +
                             std::to_string(k));
    const PAVector& pa = *assignment[k];
    const auto key = std::make_pair(static_cast<int>(pa.branch), pa.alpha);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, unit_char_value(p, pa)).first;
    eta.push_back(it->second);
  }
  return eta;
}

// <eta|_H, psi>_H. A genuine restriction gives a rational number; the caller
// decides whether it is a nonnegative integer.
inline Rational restriction_constraint(std::int64_t p, const ClassAssignment& assignment,
                                       const ClassFunction& psi) {
  const CharTable table(p);
  const CycNum v = inner_product(table, eta_on_classes(p, assignment), psi);
  if (!v.is_rational())
    throw invalid_parameter("restriction_constraint: assignment is not compatible with power maps (" +
                            v.str() + ")");
  return v.rational_value();
}

inline bool is_nonnegative_integer(const Rational& r) { return is_integer(r) && r >= 0; }

}  // namespace help
