#include <gtest/gtest.h>

#include "gen.hpp"
#include "help/help_engine.hpp"
#include "help/labeling.hpp"
#include "help/theorem.hpp"

using namespace help;

TEST(AdmissiblePA, Examples) {
  const auto at3 = admissible_pa(3);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (const auto& pa : at3) pairs.emplace_back(pa.eps_g, pa.eps_h);
  EXPECT_EQ(pairs, (std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 0}, {2, -1}, {0, 1}, {-1, 2}}));
  EXPECT_EQ(admissible_pa(5).size(), 6u);
  for (const auto& pa : admissible_pa(5)) EXPECT_LE(pa.alpha, 2);
  EXPECT_EQ(PAVector::from_augmentations(1, 0), at3[0]);
  EXPECT_EQ(PAVector::from_augmentations(-1, 2), PAVector::h_branch(1));
  EXPECT_THROW(PAVector::from_augmentations(1, 1), invalid_parameter);
}

TEST(UnitValue, Examples) {
  EXPECT_EQ(unit_char_value(3, PAVector::g_branch(0)), reduce(3, {1, 3}));
  EXPECT_EQ(unit_char_value(3, PAVector::g_branch(1)), reduce(3, {4, 9}));
  EXPECT_EQ(unit_char_value(3, PAVector::h_branch(0)), reduce(3, {-2, -3}));
}

TEST(UnitValue, MatchesFragmentAndGalois) {
  for (auto p : gen::small_primes()) {
    const PSLFragment f = psl2_fragment(p);
    const std::int64_t n = residue_sets(p).least_nonresidue();
    for (std::int64_t a = 0; a <= max_admissible_alpha(p); ++a) {
      EXPECT_EQ(unit_char_value(p, PAVector::g_branch(a)), unit_char_value_from_fragment(f, PAVector::g_branch(a)));
      EXPECT_EQ(unit_char_value(p, PAVector::h_branch(a)), unit_char_value_from_fragment(f, PAVector::h_branch(a)));
      EXPECT_EQ(galois(unit_char_value(p, PAVector::g_branch(a)), n), unit_char_value(p, PAVector::h_branch(a)));
    }
  }
}

TEST(Layout, Examples) {
  EXPECT_EQ(eigenvalue_layout(3, PAVector::g_branch(0)).mult, (std::vector<std::int64_t>{4, 6, 3}));
  EXPECT_EQ(eigenvalue_layout(3, PAVector::h_branch(0)).mult, (std::vector<std::int64_t>{4, 3, 6}));
  EXPECT_EQ(eigenvalue_layout(3, PAVector::g_branch(1)).mult, (std::vector<std::int64_t>{4, 9, 0}));
  EXPECT_THROW(eigenvalue_layout(3, PAVector::g_branch(2)), inadmissible);
}

TEST(Layout, DegreeAndTrace) {
  for (auto p : gen::small_primes()) {
    const std::int64_t degree = (p * p * p + residue_sets(p).epsilon) / 2;
    for (const auto& pa : admissible_pa(p)) {
      const EigLayout l = eigenvalue_layout(p, pa);
      EXPECT_EQ(l.degree(), degree);
      EXPECT_EQ(l.trace(), unit_char_value(p, pa));
      for (auto m : l.mult) EXPECT_GE(m, 0);
    }
  }
}

TEST(LutharPassi, ExamplesAtThree) {
  const PSLFragment f = psl2_fragment(3);
  const std::map<std::int64_t, CycNum> powers{{1, f.eta[1]}, {3, f.eta[0]}};
  EXPECT_EQ(lp_multiplicities(3, 3, powers, 0), 4);
  EXPECT_EQ(lp_multiplicities(3, 3, powers, 1), 6);
  EXPECT_EQ(lp_multiplicities(3, 3, powers, 2), 3);
}

TEST(LutharPassi, TrivialUnitsAreNonnegative) {
  for (auto p : gen::small_primes()) {
    const PSLFragment f = psl2_fragment(p);
    for (std::size_t cls : {1u, 2u}) {
      const std::map<std::int64_t, CycNum> powers{{1, f.eta[cls]}, {p, f.eta[0]}};
      Rational total = 0;
      for (std::int64_t l = 0; l < p; ++l) {
        const Rational mu = lp_multiplicities(p, p, powers, l);
        EXPECT_TRUE(is_nonnegative_integer(mu));
        total += mu;
      }
      EXPECT_EQ(total, f.degree());
    }
  }
}

TEST(LutharPassi, AllPrimitiveRootOrders) {
  // Order 2p with the unit acting as -1 times an order-p unit: the spectrum is
  // the order-p spectrum shifted to the odd exponents.
  const std::int64_t p = 5;
  const PSLFragment f = psl2_fragment(p);
  const CycNum deg = f.eta[0];
  const std::map<std::int64_t, CycNum> powers{
      {1, -f.eta[1]}, {2, galois(f.eta[1], 2)}, {p, -deg}, {2 * p, deg}};
  Rational total = 0;
  for (std::int64_t l = 0; l < 2 * p; ++l) {
    const Rational mu = lp_multiplicities(p, 2 * p, powers, l);
    EXPECT_TRUE(is_nonnegative_integer(mu));
    total += mu;
  }
  EXPECT_EQ(total, f.degree());
  const std::map<std::int64_t, CycNum> involution{{1, CycNum::rational(p, -3)}, {2, CycNum::rational(p, 7)}};
  EXPECT_EQ(lp_multiplicities(p, 2, involution, 0), 2);
  EXPECT_EQ(lp_multiplicities(p, 2, involution, 1), 5);
}

TEST(LutharPassi, Errors) {
  const std::map<std::int64_t, CycNum> powers{{1, CycNum::one(3)}};
  EXPECT_THROW(lp_multiplicities(3, 3, powers, 0), incomplete_input);
  EXPECT_THROW(lp_multiplicities(3, 4, powers, 0), invalid_parameter);
}

namespace {

ClassFunction linear_row(const CharTable& t, const LinearChar& chi) {
  return t.row(t.linear_index(chi.s, chi.t));
}

}  // namespace

TEST(Restriction, Examples) {
  const std::int64_t p = 3;
  const CharTable t(p);
  const HeisenbergGroup& h = t.group();

  // All a_i = 1: every b c^i is labelled like c, so chi(p-1, 0) has gamma = 3.
  const SignAssignment all_q = SignAssignment::from_mask(p, 0);
  const ClassAssignment ca = class_assignment(all_q);
  EXPECT_EQ(restriction_constraint(p, ca, linear_row(t, {p - 1, 0})), -1);
  // The trivial character gives (1 + eps)/2 regardless of the labeling.
  EXPECT_EQ(restriction_constraint(p, ca, t.row(t.linear_index(0, 0))), 0);

  // Balanced labelings: find characters with gamma 2 and gamma 1.
  bool seen_two = false, seen_one = false;
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    const SignAssignment s = SignAssignment::from_mask(p, mask);
    const Labeling lab(s);
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) {
        if (a == 0 && b == 0) continue;
        const auto [gamma, delta] = ledger_gamma_delta(h, lab, {a, b});
        const Rational v = restriction_constraint(p, class_assignment(s), linear_row(t, {a, b}));
        if (gamma == 2) {
          EXPECT_EQ(v, 0);
          seen_two = true;
        }
        if (gamma == 1) {
          EXPECT_EQ(v, 1);
          seen_one = true;
        }
      }
  }
  EXPECT_TRUE(seen_two);
  EXPECT_TRUE(seen_one);
}

TEST(Restriction, LinearInTheAssignment) {
  const std::int64_t p = 5;
  const CharTable t(p);
  const HeisenbergGroup& h = t.group();
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = SignAssignment::from_mask(p, static_cast<std::uint64_t>(gen::uniform(0, 31)));
    ClassAssignment ca = class_assignment(s, {Branch::G, gen::uniform(0, 2)});
    const auto row = static_cast<std::size_t>(gen::uniform(0, static_cast<std::int64_t>(t.row_count()) - 1));
    const ClassFunction psi = t.row(row);
    const Rational before = restriction_constraint(p, ca, psi);

    // Flip one noncentral class together with its Galois-conjugate partners so
    // the assignment stays compatible with power maps.
    const auto k = static_cast<std::size_t>(gen::uniform(p, static_cast<std::int64_t>(h.class_count()) - 1));
    const HeisenbergElement rep = h.class_representative(k);
    CycNum delta = CycNum::zero(p);
    for (std::int64_t e = 1; e < p; ++e) {
      const std::size_t cls = h.class_of(h.power(rep, e));
      const PAVector old = *ca[cls];
      const PAVector flipped = PAVector::of(flip(old.branch), 0);
      const RootMultiple r = t.entry(row, h.inverse(h.power(rep, e)));
      delta += (unit_char_value(p, flipped) - unit_char_value(p, old)) * CycNum::zeta_power(p, r.exponent) *
               make_rational(r.coeff * h.class_size(cls), h.order());
      ca[cls] = flipped;
    }
    const Rational after = restriction_constraint(p, ca, psi);
    EXPECT_EQ(CycNum::rational(p, after - before), delta);
  }
}

TEST(Restriction, Errors) {
  const CharTable t(3);
  EXPECT_THROW(restriction_constraint(3, ClassAssignment(4), t.row(0)), incomplete_input);
  ClassAssignment ca = class_assignment(SignAssignment::from_mask(3, 0));
  ca[1] = std::nullopt;
  EXPECT_THROW(restriction_constraint(3, ca, t.row(0)), incomplete_input);
}

TEST(PowerMap, FlipsBranches) {
  const EigLayout g = eigenvalue_layout(3, PAVector::g_branch(0));
  EXPECT_EQ(power_map(g, 2).mult, (std::vector<std::int64_t>{4, 3, 6}));
  EXPECT_EQ(power_map(g, 1), g);
}
