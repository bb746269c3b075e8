#include <gtest/gtest.h>

#include "gen.hpp"
#include "help/f2.hpp"
#include "help/residue.hpp"

using namespace help;

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(2, 5), -1);
  EXPECT_EQ(legendre(4, 7), 1);
  EXPECT_EQ(legendre(21, 3), 0);
  EXPECT_EQ(legendre(-1, 5), 1);
  EXPECT_EQ(legendre(-1, 7), -1);
  EXPECT_THROW(legendre(1, 9), invalid_parameter);
  EXPECT_THROW(legendre(1, 2), invalid_parameter);
}

TEST(Legendre, MultiplicativeAndBalanced) {
  for (std::int64_t p = 3; p < 200; ++p) {
    if (!is_odd_prime(p)) continue;
    int sum = 0;
    for (std::int64_t a = 1; a < p; ++a) sum += legendre(a, p);
    EXPECT_EQ(sum, 0) << p;
    for (int k = 0; k < 20; ++k) {
      const std::int64_t a = gen::uniform(-500, 500), b = gen::uniform(-500, 500);
      EXPECT_EQ(legendre(a * b, p), legendre(a, p) * legendre(b, p));
    }
  }
}

TEST(ResidueSets, Examples) {
  const auto r3 = residue_sets(3);
  EXPECT_EQ(r3.epsilon, -1);
  EXPECT_EQ(r3.residues, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(r3.nonresidues, (std::vector<std::int64_t>{2}));
  const auto r5 = residue_sets(5);
  EXPECT_EQ(r5.epsilon, 1);
  EXPECT_EQ(r5.residues, (std::vector<std::int64_t>{1, 4}));
  EXPECT_EQ(r5.nonresidues, (std::vector<std::int64_t>{2, 3}));
  const auto r7 = residue_sets(7);
  EXPECT_EQ(r7.residues, (std::vector<std::int64_t>{1, 2, 4}));
  EXPECT_EQ(r7.nonresidues, (std::vector<std::int64_t>{3, 5, 6}));
}

TEST(ResidueSets, PartitionAndCosetAction) {
  for (std::int64_t p = 3; p < 120; ++p) {
    if (!is_odd_prime(p)) continue;
    const auto rd = residue_sets(p);
    EXPECT_EQ(rd.residues.size(), static_cast<std::size_t>((p - 1) / 2));
    EXPECT_EQ(rd.nonresidues.size(), static_cast<std::size_t>((p - 1) / 2));
    EXPECT_EQ(rd.epsilon, p % 4 == 1 ? 1 : -1);
    const std::int64_t n = rd.least_nonresidue();
    for (auto q : rd.residues) EXPECT_EQ(legendre(q * n, p), -1);
  }
}

TEST(GaussSum, Examples) {
  EXPECT_EQ(gauss_sum(3), reduce(3, {1, 2}));
  EXPECT_EQ(gauss_sum(3) * gauss_sum(3), CycNum::rational(3, -3));
  EXPECT_EQ(gauss_sum(5), reduce(5, {1, 2, 0, 0, 2}));
  EXPECT_EQ(gauss_sum(5) * gauss_sum(5), CycNum::rational(5, 5));
  for (auto p : gen::small_primes()) EXPECT_TRUE((gauss_sum(p) + gauss_sum_nonresidue(p)).is_zero());
}

TEST(ProductIdentities, Examples) {
  EXPECT_EQ(product_identities(3), std::make_pair(Rational(-1), Rational(2)));
  EXPECT_EQ(product_identities(5), std::make_pair(Rational(3), Rational(-2)));
  EXPECT_EQ(product_identities(7), std::make_pair(Rational(-3), Rational(4)));
}

TEST(F2, RankExamples) {
  EXPECT_EQ(f2_rank(lemma_matrix(3)), 2u);
  EXPECT_EQ(f2_rank(lemma_matrix(5)), 4u);
  EXPECT_EQ(f2_rank(lemma_matrix(4)), 4u);
  EXPECT_EQ(f2_rank(lemma_matrix(1)), 0u);
}

TEST(F2, NullspaceExamples) {
  for (std::size_t m : {3u, 7u}) {
    const auto basis = f2_nullspace(lemma_matrix(m));
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(basis[0], BitVector(m, true));
  }
  EXPECT_TRUE(f2_nullspace(F2Matrix::identity(6)).empty());
}

TEST(F2, LemmaMatrixShape) {
  EXPECT_EQ(lemma_matrix(1).str(), "0\n");
  EXPECT_EQ(lemma_matrix(3).str(), "011\n101\n110\n");
  const auto m5 = lemma_matrix(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(m5.get(i, j), i != j);
}

TEST(F2, EvenSizeSquaresToIdentity) {
  for (std::size_t m = 2; m <= 40; m += 2) {
    const F2Matrix a = lemma_matrix(m);
    for (std::size_t c = 0; c < m; ++c) {
      BitVector e(m, false);
      e[c] = true;
      EXPECT_EQ(a.multiply(a.multiply(e)), e);
    }
  }
}

TEST(F2, RankNullityOnRandomMatrices) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = static_cast<std::size_t>(gen::uniform(1, 90));
    const auto cols = static_cast<std::size_t>(gen::uniform(1, 90));
    F2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, gen::uniform(0, 3) == 0);
    const auto kernel = f2_nullspace(m);
    EXPECT_EQ(f2_rank(m) + kernel.size(), cols);
    for (const auto& v : kernel) EXPECT_EQ(m.multiply(v), BitVector(rows, false));
  }
}

TEST(F2, RowOperationsPreserveRank) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(gen::uniform(2, 70));
    F2Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, gen::uniform(0, 1) == 1);
    const std::size_t before = f2_rank(m);
    const auto a = static_cast<std::size_t>(gen::uniform(0, static_cast<std::int64_t>(n) - 1));
    auto b = static_cast<std::size_t>(gen::uniform(0, static_cast<std::int64_t>(n) - 1));
    if (a == b) b = (b + 1) % n;
    m.add_row(a, b);
    m.swap_rows(a, b);
    EXPECT_EQ(f2_rank(m), before);
  }
}

TEST(F2, RejectsEmpty) { EXPECT_THROW(F2Matrix(0, 3), invalid_parameter); }
