#pragma once

// Exact arithmetic in Q and in the cyclotomic field Q(zeta_p), p an odd prime.
//
// Elements of Q(zeta_p) are stored in the power basis 1, zeta, ..., zeta^(p-2).
// The relation 1 + zeta + ... + zeta^(p-1) = 0 eliminates zeta^(p-1), so every
// element has exactly one coefficient vector and equality is plain comparison.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "modular.hpp"

namespace help {

// GMP rationals keep themselves in lowest terms with a positive denominator
// after every arithmetic operation.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

class CycNum;
CycNum reduce(std::int64_t p, std::span<const Rational> raw);

class CycNum {
 public:
  static CycNum zero(std::int64_t p) {
    require_odd_prime(p, "CycNum");
    return CycNum(p, std::vector<Rational>(static_cast<std::size_t>(p - 1)));
  }

  static CycNum rational(std::int64_t p, const Rational& q) {
    CycNum r = zero(p);
    r.coeffs_[0] = q;
    return r;
  }

  static CycNum one(std::int64_t p) { return rational(p, 1); }

  // zeta^k for any integer k.
  static CycNum zeta_power(std::int64_t p, std::int64_t k) {
    CycNum r = zero(p);
    r.add_root(mod(k, p), Rational(1));
    return r;
  }

  std::int64_t prime() const { return p_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
  }

  bool is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
  }

  // Throws internal_consistency when the value is not in Q.
  Rational rational_value() const {
    if (!is_rational())
      throw internal_consistency("cyclotomic value " + str() + " is not rational");
    return coeffs_[0];
  }

  // Adds c * zeta^e (0 <= e < p) in place, keeping canonical form.
  void add_root(std::int64_t e, const Rational& c) {
    if (e < p_ - 1) {
      coeffs_[static_cast<std::size_t>(e)] += c;
    } else {
      for (auto& x : coeffs_) x -= c;
    }
  }

  // Minimal-support representation as a length-p raw vector: the canonical
  // coefficients shifted by a multiple of (1, ..., 1). zeta^(p-1) comes out
  // as the single term (p-1, 1) instead of p-1 terms of -1.
  std::vector<std::pair<std::int64_t, Rational>> sparse_terms() const {
    std::size_t zeros = 1 + static_cast<std::size_t>(
                                std::count(coeffs_.begin(), coeffs_.end(), 0));
    Rational shift = 0;
    if (2 * zeros < static_cast<std::size_t>(p_)) {
      std::map<Rational, std::size_t> freq;
      for (const auto& c : coeffs_) ++freq[c];
      std::size_t best = zeros;
      for (const auto& [value, count] : freq) {
        if (count > best) {
          best = count;
          shift = value;
        }
      }
    }
    std::vector<std::pair<std::int64_t, Rational>> terms;
    for (std::int64_t j = 0; j < p_ - 1; ++j) {
      Rational c = coeffs_[static_cast<std::size_t>(j)] - shift;
      if (c != 0) terms.emplace_back(j, std::move(c));
    }
    if (shift != 0) terms.emplace_back(p_ - 1, -shift);
    return terms;
  }

  std::string str() const {
    std::string out;
    for (std::int64_t j = 0; j < p_ - 1; ++j) {
      const Rational& c = coeffs_[static_cast<std::size_t>(j)];
      if (c == 0) continue;
      std::string term = c.get_str();
      if (j > 0) term = (c == 1 ? "" : c == -1 ? "-" : term + "*") + (j == 1 ? std::string("z") : "z^" + std::to_string(j));
      if (!out.empty() && term[0] != '-') out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  CycNum& operator+=(const CycNum& o) {
    check_same_field(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  CycNum& operator-=(const CycNum& o) {
    check_same_field(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }
  CycNum& operator*=(const Rational& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
  }
  CycNum& operator/=(const Rational& q) {
    if (q == 0) throw invalid_parameter("CycNum: division by zero");
    for (auto& c : coeffs_) c /= q;
    return *this;
  }

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const Rational& q) { return a *= q; }
  friend CycNum operator*(const Rational& q, CycNum a) { return a *= q; }
  friend CycNum operator/(CycNum a, const Rational& q) { return a /= q; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);

  friend bool operator==(const CycNum& a, const CycNum& b) {
    return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
  }

  void check_same_field(const CycNum& o) const {
    if (o.p_ != p_)
      throw incompatible_field("Q(zeta_" + std::to_string(p_) + ") vs Q(zeta_" +
                               std::to_string(o.p_) + ")");
  }

 private:
  friend CycNum reduce(std::int64_t p, std::span<const Rational> raw);
  friend class CycAccumulator;

  CycNum(std::int64_t p, std::vector<Rational> coeffs) : p_(p), coeffs_(std::move(coeffs)) {}

  std::int64_t p_ = 3;
  std::vector<Rational> coeffs_;
};

// Canonical representative of sum raw[j] zeta^j, raw.size() <= p.
inline CycNum reduce(std::int64_t p, std::span<const Rational> raw) {
  require_odd_prime(p, "reduce");
  if (raw.size() > static_cast<std::size_t>(p))
    throw invalid_parameter("reduce: raw vector longer than p");
  std::vector<Rational> c(static_cast<std::size_t>(p - 1));
  std::copy_n(raw.begin(), std::min(raw.size(), c.size()), c.begin());
  if (raw.size() == static_cast<std::size_t>(p)) {
    const Rational& top = raw[static_cast<std::size_t>(p - 1)];
    if (top != 0)
      for (auto& x : c) x -= top;
  }
  return CycNum(p, std::move(c));
}

inline CycNum reduce(std::int64_t p, std::initializer_list<Rational> raw) {
  return reduce(p, std::span<const Rational>(raw.begin(), raw.size()));
}

// Sums of products accumulated in the redundant length-p form; reduced once at the end.
class CycAccumulator {
 public:
  explicit CycAccumulator(std::int64_t p) : p_(p), raw_(static_cast<std::size_t>(p)) {}

  void add(const CycNum& a) {
    check(a);
    for (std::size_t j = 0; j < a.coeffs_.size(); ++j)
      if (a.coeffs_[j] != 0) raw_[j] += a.coeffs_[j];
  }

  void add_term(std::int64_t exponent, const Rational& c) {
    raw_[static_cast<std::size_t>(mod(exponent, p_))] += c;
  }

  void add_product(const CycNum& a, const CycNum& b, const Rational& weight = 1) {
    check(a);
    check(b);
    add_product_terms(a.sparse_terms(), b.sparse_terms(), weight);
  }

  void add_product_terms(const std::vector<std::pair<std::int64_t, Rational>>& ta,
                         const std::vector<std::pair<std::int64_t, Rational>>& tb,
                         const Rational& weight = 1) {
    Rational prod;
    for (const auto& [i, x] : ta) {
      for (const auto& [j, y] : tb) {
        prod = x * y;
        if (weight != 1) prod *= weight;
        raw_[static_cast<std::size_t>((i + j) % p_)] += prod;
      }
    }
  }

  CycNum value() const { return reduce(p_, raw_); }

 private:
  void check(const CycNum& a) const {
    if (a.prime() != p_)
      throw incompatible_field("accumulator over Q(zeta_" + std::to_string(p_) +
                               ") given element of Q(zeta_" + std::to_string(a.prime()) + ")");
  }

  std::int64_t p_;
  std::vector<Rational> raw_;
};

inline CycNum operator*(const CycNum& a, const CycNum& b) {
  a.check_same_field(b);
  CycAccumulator acc(a.prime());
  acc.add_product(a, b);
  return acc.value();
}

inline CycNum multiply(const CycNum& a, const CycNum& b) { return a * b; }

// The automorphism zeta -> zeta^k of Q(zeta_p).
inline CycNum galois(const CycNum& a, std::int64_t k) {
  const std::int64_t p = a.prime();
  if (mod(k, p) == 0)
    throw invalid_parameter("galois: " + std::to_string(k) + " is not invertible modulo " +
                            std::to_string(p));
  std::vector<Rational> raw(static_cast<std::size_t>(p));
  for (std::int64_t j = 0; j < p - 1; ++j)
    raw[static_cast<std::size_t>(mod(j * k, p))] = a.coeffs()[static_cast<std::size_t>(j)];
  return reduce(p, raw);
}

// Complex conjugation.
inline CycNum conj(const CycNum& a) { return galois(a, -1); }

// Tr_{Q(zeta)/Q}(a) = (p-1) c_0 - sum_{j>=1} c_j.
inline Rational rational_trace(const CycNum& a) {
  Rational t = Rational(a.prime() - 1) * a.coeffs()[0];
  for (std::size_t j = 1; j < a.coeffs().size(); ++j) t -= a.coeffs()[j];
  return t;
}

// Double-precision value at zeta = exp(2 pi i / p). Absolute error stays below
// 1e-9 while every coefficient is under 1e6 in magnitude and p < 1000.
inline std::complex<double> embed_complex(const CycNum& a) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(a.prime());
  std::complex<double> sum = 0.0;
  for (std::size_t j = 0; j < a.coeffs().size(); ++j) {
    const double c = a.coeffs()[j].get_d();
    if (c != 0.0) sum += c * std::polar(1.0, step * static_cast<double>(j));
  }
  return sum;
}

}  // namespace help
