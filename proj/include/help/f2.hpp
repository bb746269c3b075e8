#pragma once

// Dense matrices over F_2 with rows packed into 64-bit words.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace help {

using BitVector = std::vector<bool>;

class F2Matrix {
 public:
  F2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_) {
    if (rows == 0 || cols == 0) throw invalid_parameter("F2Matrix: dimensions must be positive");
  }

  static F2Matrix identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = bits_[r * words_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    w = v ? (w | mask) : (w & ~mask);
  }

  // row dst ^= row src
  void add_row(std::size_t dst, std::size_t src) {
    for (std::size_t k = 0; k < words_; ++k) bits_[dst * words_ + k] ^= bits_[src * words_ + k];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < words_; ++k) std::swap(bits_[a * words_ + k], bits_[b * words_ + k]);
  }

  BitVector multiply(const BitVector& x) const {
    if (x.size() != cols_) throw invalid_parameter("F2Matrix::multiply: length mismatch");
    BitVector y(rows_, false);
    for (std::size_t r = 0; r < rows_; ++r) {
      bool acc = false;
      for (std::size_t c = 0; c < cols_; ++c) acc ^= get(r, c) && x[c];
      y[r] = acc;
    }
    return y;
  }

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

  std::string str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> bits_;
};

namespace detail {

// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<std::size_t> f2_rref(F2Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && !m.get(sel, col)) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(row, sel);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != row && m.get(r, col)) m.add_row(r, row);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t f2_rank(const F2Matrix& m) {
  F2Matrix work = m;
  return detail::f2_rref(work).size();
}

// Basis of {x : M x = 0}, one vector per free column.
inline std::vector<BitVector> f2_nullspace(const F2Matrix& m) {
  F2Matrix work = m;
  const auto pivots = detail::f2_rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector v(m.cols(), false);
    v[free] = true;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (work.get(i, free)) v[pivots[i]] = true;
    basis.push_back(std::move(v));
  }
  return basis;
}

// m x m, zero diagonal, ones elsewhere.
inline F2Matrix lemma_matrix(std::size_t m) {
  if (m == 0) throw invalid_parameter("lemma_matrix: m must be at least 1");
  F2Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a.set(i, j, i != j);
  return a;
}

}  // namespace help
