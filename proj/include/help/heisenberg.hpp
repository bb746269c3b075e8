#pragma once

// The Heisenberg group of order p^3 and exponent p,
//   H = < z, b, c | z^p = b^p = c^p = 1, z central, c^-1 b c = z b >,
// with elements z^r b^s c^t stored as exponent triples.

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "modular.hpp"

namespace help {

struct HeisenbergElement {
  std::int64_t z = 0, b = 0, c = 0;

  bool is_identity() const { return z == 0 && b == 0 && c == 0; }
  bool is_central() const { return b == 0 && c == 0; }

  friend auto operator<=>(const HeisenbergElement&, const HeisenbergElement&) = default;

  std::string str() const {
    return "z^" + std::to_string(z) + " b^" + std::to_string(b) + " c^" + std::to_string(c);
  }
};

struct ConjugacyClass {
  HeisenbergElement representative;
  std::int64_t size = 1;
  std::vector<HeisenbergElement> members;
};

class HeisenbergGroup {
 public:
  explicit HeisenbergGroup(std::int64_t p) : p_(p) {
    if (p == 2) throw invalid_parameter("heisenberg: p = 2 has no exponent-p Heisenberg group");
    require_odd_prime(p, "heisenberg");
  }

  std::int64_t prime() const { return p_; }
  std::int64_t order() const { return p_ * p_ * p_; }

  HeisenbergElement identity() const { return {}; }
  HeisenbergElement z() const { return {1, 0, 0}; }
  HeisenbergElement b() const { return {0, 1, 0}; }
  HeisenbergElement c() const { return {0, 0, 1}; }

  HeisenbergElement make(std::int64_t z, std::int64_t b, std::int64_t c) const {
    return {mod(z, p_), mod(b, p_), mod(c, p_)};
  }

  // Moving c^t past b^s' costs z^(-t s'), since c b = z^-1 b c.
  HeisenbergElement multiply(const HeisenbergElement& x, const HeisenbergElement& y) const {
    return make(x.z + y.z - x.c * y.b, x.b + y.b, x.c + y.c);
  }

  HeisenbergElement inverse(const HeisenbergElement& x) const {
    return make(-x.z - x.c * x.b, -x.b, -x.c);
  }

  HeisenbergElement power(HeisenbergElement x, std::int64_t k) const {
    k = mod(k, p_);
    HeisenbergElement acc;
    while (k > 0) {
      if (k & 1) acc = multiply(acc, x);
      x = multiply(x, x);
      k >>= 1;
    }
    return acc;
  }

  // g^-1 x g
  HeisenbergElement conjugate(const HeisenbergElement& x, const HeisenbergElement& g) const {
    return multiply(multiply(inverse(g), x), g);
  }

  // [x, y] = x^-1 y^-1 x y
  HeisenbergElement commutator(const HeisenbergElement& x, const HeisenbergElement& y) const {
    return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
  }

  std::int64_t element_order(const HeisenbergElement& x) const {
    std::int64_t n = 1;
    for (HeisenbergElement y = x; !y.is_identity(); y = multiply(y, x)) ++n;
    return n;
  }

  std::size_t index_of(const HeisenbergElement& x) const {
    return static_cast<std::size_t>(x.z + p_ * (x.b + p_ * x.c));
  }

  HeisenbergElement element(std::size_t index) const {
    const auto i = static_cast<std::int64_t>(index);
    return {i % p_, (i / p_) % p_, i / (p_ * p_)};
  }

  std::vector<HeisenbergElement> elements() const {
    std::vector<HeisenbergElement> all;
    all.reserve(static_cast<std::size_t>(order()));
    for (std::size_t i = 0; i < static_cast<std::size_t>(order()); ++i) all.push_back(element(i));
    return all;
  }

  std::vector<HeisenbergElement> center() const {
    std::vector<HeisenbergElement> zs;
    for (std::int64_t r = 0; r < p_; ++r) zs.push_back({r, 0, 0});
    return zs;
  }

  // Classes are numbered: z^r -> r for the p central classes, then the
  // noncentral classes {z^* b^s c^t} in lexicographic order of (s, t) != (0, 0).
  std::size_t class_count() const { return static_cast<std::size_t>(p_ * p_ + p_ - 1); }

  std::size_t class_of(const HeisenbergElement& x) const {
    if (x.is_central()) return static_cast<std::size_t>(x.z);
    return static_cast<std::size_t>(p_ + x.b * p_ + x.c - 1);
  }

  HeisenbergElement class_representative(std::size_t k) const {
    const auto i = static_cast<std::int64_t>(k);
    if (i < p_) return {i, 0, 0};
    const std::int64_t st = i - p_ + 1;
    return {0, st / p_, st % p_};
  }

  std::int64_t class_size(std::size_t k) const {
    return static_cast<std::int64_t>(k) < p_ ? 1 : p_;
  }

  std::size_t inverse_class(std::size_t k) const {
    return class_of(inverse(class_representative(k)));
  }

  // Classes computed as conjugation orbits over the whole group, independent
  // of the closed-form numbering. O(p^6); intended for small p.
  std::vector<ConjugacyClass> classes_by_orbit() const {
    std::vector<ConjugacyClass> out(class_count());
    std::vector<bool> seen(static_cast<std::size_t>(order()), false);
    const auto all = elements();
    for (const auto& x : all) {
      if (seen[index_of(x)]) continue;
      std::set<HeisenbergElement> orbit;
      for (const auto& g : all) orbit.insert(conjugate(x, g));
      for (const auto& y : orbit) seen[index_of(y)] = true;
      const std::size_t k = class_of(*orbit.begin());
      for (const auto& y : orbit)
        if (class_of(y) != k)
          throw internal_consistency("conjugation orbit of " + x.str() +
                                     " straddles two numbered classes");
      out[k].representative = class_representative(k);
      out[k].size = static_cast<std::int64_t>(orbit.size());
      out[k].members.assign(orbit.begin(), orbit.end());
    }
    return out;
  }

 private:
  std::int64_t p_;
};

inline HeisenbergGroup heisenberg(std::int64_t p) { return HeisenbergGroup(p); }

}  // namespace help
