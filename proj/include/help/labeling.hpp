#pragma once

// Partial-augmentation labelings of a hypothetical Heisenberg subgroup H.
//
// Noncentral elements of H carry (1,0) or (0,1), and the label of w^k is
// the label of w for k a residue and the other one for k a non-residue. So a
// labeling is fixed by one choice per noncentral cyclic subgroup class:
// <c> and <b c^i>, i = 0 .. p-1. With c labelled `c_branch`, the element
// b^(a_i) c^(i a_i) gets the same label as c, a_i in {1, n}.

#include <cstdint>
#include <string>
#include <vector>

#include "heisenberg.hpp"
#include "help_engine.hpp"
#include "residue.hpp"

namespace help {

struct SignAssignment {
  std::vector<std::int64_t> a;  // a_0 .. a_{p-1}, each 1 or n
  std::int64_t n = 2;           // a fixed non-residue
  Branch c_branch = Branch::G;

  std::int64_t prime() const { return static_cast<std::int64_t>(a.size()); }

  // beta_i = (a_i | p)
  int beta(std::size_t i) const { return a[i] == 1 ? 1 : -1; }

  // a_i = n exactly where uses_n[i] is set.
  static SignAssignment from_bits(const std::vector<bool>& uses_n, Branch c_branch = Branch::G) {
    const auto p = static_cast<std::int64_t>(uses_n.size());
    require_odd_prime(p, "SignAssignment");
    SignAssignment s;
    s.n = residue_sets(p).least_nonresidue();
    s.c_branch = c_branch;
    for (bool b : uses_n) s.a.push_back(b ? s.n : 1);
    return s;
  }

  // Same, with bit i of `mask`.
  static SignAssignment from_mask(std::int64_t p, std::uint64_t mask,
                                  Branch c_branch = Branch::G) {
    require_odd_prime(p, "SignAssignment");
    if (p > 63) throw invalid_parameter("SignAssignment::from_mask: p > 63");
    std::vector<bool> bits;
    for (std::int64_t i = 0; i < p; ++i) bits.push_back((mask >> i) & 1u);
    return from_bits(bits, c_branch);
  }

  std::string str() const {
    std::string out = "a=(";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
    return out + ") c:" + to_string(c_branch);
  }
};

inline void validate(const SignAssignment& s) {
  const std::int64_t p = s.prime();
  require_odd_prime(p, "SignAssignment");
  if (legendre(s.n, p) != -1)
    throw invalid_parameter("SignAssignment: n = " + std::to_string(s.n) +
                            " is not a non-residue mod " + std::to_string(p));
  for (auto ai : s.a)
    if (ai != 1 && ai != s.n)
      throw invalid_parameter("SignAssignment: a_i = " + std::to_string(ai) + " not in {1, n}");
}

// Partial augmentation of the central elements z^k: z itself is on
// `z_branch` with parameter alpha.
struct CentralChoice {
  Branch z_branch = Branch::G;
  std::int64_t alpha = 0;
};

// chi(z^r b^x c^y) = zeta^(s x + t y)
struct LinearChar {
  std::int64_t s = 0, t = 0;
  bool trivial(std::int64_t p) const { return mod(s, p) == 0 && mod(t, p) == 0; }
  // Exponent of chi(w^-1).
  std::int64_t inverse_exponent(const HeisenbergElement& w, std::int64_t p) const {
    return mod(-(s * w.b + t * w.c), p);
  }
  LinearChar power(std::int64_t k, std::int64_t p) const { return {mod(k * s, p), mod(k * t, p)}; }
};

// Branch lookups in O(1) via precomputed residue and inverse tables.
class Labeling {
 public:
  Labeling(const SignAssignment& s, CentralChoice central = {})
      : p_(s.prime()), central_(central), assignment_(s) {
    validate(s);
    legendre_.resize(static_cast<std::size_t>(p_));
    inverse_.resize(static_cast<std::size_t>(p_));
    for (std::int64_t k = 1; k < p_; ++k) {
      legendre_[static_cast<std::size_t>(k)] = legendre(k, p_);
      inverse_[static_cast<std::size_t>(k)] = inverse_mod(k, p_);
    }
    c_sign_ = s.c_branch == Branch::G ? 1 : -1;
    z_sign_ = central.z_branch == Branch::G ? 1 : -1;
  }

  std::int64_t prime() const { return p_; }
  const SignAssignment& assignment() const { return assignment_; }
  const CentralChoice& central() const { return central_; }
  int legendre_of(std::int64_t k) const { return legendre_[static_cast<std::size_t>(mod(k, p_))]; }

  // Label of a noncentral element. b^s c^t is, modulo the center, the k-th
  // power of c (s = 0, k = t) or of b c^i (k = s, i = t / s).
  Branch noncentral_branch(const HeisenbergElement& w) const {
    int sign;
    if (w.b == 0) {
      sign = legendre_of(w.c) * c_sign_;
    } else {
      const std::int64_t i = w.c * inverse_[static_cast<std::size_t>(w.b)] % p_;
      sign = legendre_of(w.b) * assignment_.beta(static_cast<std::size_t>(i)) * c_sign_;
    }
    return sign > 0 ? Branch::G : Branch::H;
  }

  PAVector pa_of(const HeisenbergElement& w) const {
    if (w.is_central()) {
      const int sign = legendre_of(w.z) * z_sign_;
      return PAVector::of(sign > 0 ? Branch::G : Branch::H, central_.alpha);
    }
    return PAVector::of(noncentral_branch(w), 0);
  }

 private:
  std::int64_t p_;
  CentralChoice central_;
  SignAssignment assignment_;
  std::vector<int> legendre_;
  std::vector<std::int64_t> inverse_;
  int c_sign_ = 1, z_sign_ = 1;
};

// Per-class partial augmentations; the identity class stays empty.
inline ClassAssignment class_assignment(const SignAssignment& s, CentralChoice central = {}) {
  const Labeling lab(s, central);
  const HeisenbergGroup group(s.prime());
  ClassAssignment out(group.class_count());
  for (std::size_t k = 1; k < out.size(); ++k)
    out[k] = lab.pa_of(group.class_representative(k));
  return out;
}

}  // namespace help
