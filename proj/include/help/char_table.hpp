#pragma once

// Ordinary character table of the Heisenberg group H of order p^3.
//
// Rows 0 .. p^2-1 are the linear characters chi(s,t), inflated from
// H/Z(H) = C_p x C_p: chi(s,t)(z^r b^x c^y) = zeta^(s x + t y). Row
// p^2 - 1 + j is the degree-p character psi_j, which is p zeta^(j r) on z^r
// and vanishes off the center. Entries are generated on demand; every entry
// is an integer multiple of a p-th root of unity.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "exactnum.hpp"
#include "heisenberg.hpp"

namespace help {

using ClassFunction = std::vector<CycNum>;

// coeff * zeta^exponent
struct RootMultiple {
  std::int64_t coeff = 0;
  std::int64_t exponent = 0;
};

class CharTable {
 public:
  explicit CharTable(std::int64_t p) : group_(p) {}

  const HeisenbergGroup& group() const { return group_; }
  std::int64_t prime() const { return group_.prime(); }
  std::size_t class_count() const { return group_.class_count(); }
  std::size_t row_count() const { return group_.class_count(); }

  std::size_t linear_index(std::int64_t s, std::int64_t t) const {
    const std::int64_t p = prime();
    return static_cast<std::size_t>(mod(s, p) * p + mod(t, p));
  }
  std::size_t nonlinear_index(std::int64_t j) const {
    const std::int64_t p = prime();
    return static_cast<std::size_t>(p * p - 1 + mod(j, p));
  }

  bool is_linear(std::size_t row) const {
    return static_cast<std::int64_t>(row) < prime() * prime();
  }

  std::int64_t degree(std::size_t row) const { return is_linear(row) ? 1 : prime(); }

  std::vector<std::int64_t> degrees() const {
    std::vector<std::int64_t> d(row_count());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = degree(i);
    return d;
  }

  std::string label(std::size_t row) const {
    const std::int64_t p = prime();
    const auto i = static_cast<std::int64_t>(row);
    if (is_linear(row))
      return "chi(" + std::to_string(i / p) + "," + std::to_string(i % p) + ")";
    return "psi_" + std::to_string(i - p * p + 1);
  }

  // For a linear row, the pair (s, t) with b -> zeta^s, c -> zeta^t.
  std::pair<std::int64_t, std::int64_t> linear_params(std::size_t row) const {
    const auto i = static_cast<std::int64_t>(row);
    return {i / prime(), i % prime()};
  }

  RootMultiple entry(std::size_t row, const HeisenbergElement& x) const {
    const std::int64_t p = prime();
    const auto i = static_cast<std::int64_t>(row);
    if (is_linear(row)) return {1, mod((i / p) * x.b + (i % p) * x.c, p)};
    if (!x.is_central()) return {0, 0};
    const std::int64_t j = i - p * p + 1;
    return {p, mod(j * x.z, p)};
  }

  RootMultiple entry(std::size_t row, std::size_t cls) const {
    return entry(row, group_.class_representative(cls));
  }

  CycNum value(std::size_t row, std::size_t cls) const {
    const RootMultiple e = entry(row, cls);
    return CycNum::zeta_power(prime(), e.exponent) * Rational(e.coeff);
  }

  ClassFunction row(std::size_t r) const {
    ClassFunction f;
    f.reserve(class_count());
    for (std::size_t k = 0; k < class_count(); ++k) f.push_back(value(r, k));
    return f;
  }

 private:
  HeisenbergGroup group_;
};

inline CharTable char_table_heisenberg(std::int64_t p) { return CharTable(p); }

// <f, g> = (1/|H|) sum_h f(h) g(h^-1), summed class by class.
inline CycNum inner_product(const CharTable& table, const ClassFunction& f,
                            const ClassFunction& g) {
  const std::size_t n = table.class_count();
  if (f.size() != n || g.size() != n)
    throw invalid_parameter("inner_product: class functions must have " + std::to_string(n) +
                            " entries");
  const HeisenbergGroup& h = table.group();
  CycAccumulator acc(table.prime());
  for (std::size_t k = 0; k < n; ++k)
    acc.add_product(f[k], g[h.inverse_class(k)], Rational(h.class_size(k)));
  return acc.value() / Rational(h.order());
}

namespace detail {

// sum over classes of size * coeff_a * coeff_b * zeta^(ea + eb), exactly, in
// machine integers. Magnitudes are bounded by p^3 * p^2, far below 2^63.
class MonomialSum {
 public:
  explicit MonomialSum(std::int64_t p) : p_(p), raw_(static_cast<std::size_t>(p), 0) {}
  void add(std::int64_t weight, RootMultiple a, RootMultiple b) {
    if (a.coeff == 0 || b.coeff == 0) return;
    raw_[static_cast<std::size_t>((a.exponent + b.exponent) % p_)] += weight * a.coeff * b.coeff;
  }
  // True iff the sum equals the rational integer `expect`.
  bool equals(std::int64_t expect) const {
    // Canonical form: subtract raw[p-1] from every slot.
    const std::int64_t top = raw_.back();
    if (raw_[0] - top != expect) return false;
    for (std::size_t j = 1; j + 1 < raw_.size(); ++j)
      if (raw_[j] != top) return false;
    return true;
  }

 private:
  std::int64_t p_;
  std::vector<std::int64_t> raw_;
};

inline RootMultiple conj(RootMultiple a, std::int64_t p) { return {a.coeff, mod(-a.exponent, p)}; }

}  // namespace detail

struct OrthogonalityReport {
  bool exhaustive = true;
  std::size_t pairs_checked = 0;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};

// Row pairs (i, j) with i <= j: sum_k |C_k| chi_i(k) conj(chi_j(k)) = |H| [i == j].
// Pairs above `max_pairs` are replaced by a fixed-seed random sample.
inline OrthogonalityReport check_row_orthogonality(const CharTable& t,
                                                   std::size_t max_pairs = 50'000'000) {
  const HeisenbergGroup& h = t.group();
  const std::size_t n = t.class_count();
  const std::int64_t p = t.prime();
  OrthogonalityReport rep;
  auto check = [&](std::size_t i, std::size_t j) {
    detail::MonomialSum sum(p);
    for (std::size_t k = 0; k < n; ++k)
      sum.add(h.class_size(k), t.entry(i, k), detail::conj(t.entry(j, k), p));
    ++rep.pairs_checked;
    if (!sum.equals(i == j ? h.order() : 0)) ++rep.failures;
  };
  const std::size_t total_pairs = n * (n + 1) / 2;
  if (total_pairs * n <= max_pairs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) check(i, j);
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(0x5eed'0001);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t samples = std::max<std::size_t>(max_pairs / n, 64);
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t i = pick(rng);
      check(i, s % 4 == 0 ? i : pick(rng));
    }
  }
  return rep;
}

// Column pairs (k, l): sum_i chi_i(k) conj(chi_i(l)) = |C_H(x_k)| [k == l].
inline OrthogonalityReport check_column_orthogonality(const CharTable& t,
                                                      std::size_t max_pairs = 50'000'000) {
  const HeisenbergGroup& h = t.group();
  const std::size_t n = t.class_count();
  const std::int64_t p = t.prime();
  OrthogonalityReport rep;
  auto check = [&](std::size_t k, std::size_t l) {
    detail::MonomialSum sum(p);
    for (std::size_t i = 0; i < n; ++i)
      sum.add(1, t.entry(i, k), detail::conj(t.entry(i, l), p));
    ++rep.pairs_checked;
    if (!sum.equals(k == l ? h.order() / h.class_size(k) : 0)) ++rep.failures;
  };
  const std::size_t total_pairs = n * (n + 1) / 2;
  if (total_pairs * n <= max_pairs) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) check(k, l);
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(0x5eed'0002);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t samples = std::max<std::size_t>(max_pairs / n, 64);
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t k = pick(rng);
      check(k, s % 4 == 0 ? k : pick(rng));
    }
  }
  return rep;
}

}  // namespace help
