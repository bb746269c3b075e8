// Walks through the p = 3 case by hand: the admissible partial augmentations
// of a unit of order 3, the spectrum each one forces on eta, and which of
// them can sit in the center of a Heisenberg subgroup.

#include <iostream>

#include "help/help.hpp"

int main() {
  using namespace help;
  const std::int64_t p = 3;
  const PSLFragment f = psl2_fragment(p);
  std::cout << "|PSL(2,27)| = " << f.group_order.get_str() << ", eta(1) = " << f.degree().get_str()
            << "\n";
  std::cout << "eta(g) = " << f.eta[1].str() << ", eta(h) = " << f.eta[2].str() << "\n\n";

  for (const auto& pa : admissible_pa(p)) {
    const EigLayout layout = eigenvalue_layout(p, pa);
    std::cout << "pa " << pa.str() << "  eta(u) = " << unit_char_value(p, pa).str() << "  spectrum";
    for (auto m : layout.mult) std::cout << " " << m;
    std::cout << "\n";
  }

  const DichotomyResult d = noncentral_pa_dichotomy(p);
  std::cout << "\nsums of exactly " << d.target.get_str() << " cube roots of unity:\n";
  for (const auto& row : d.rows)
    std::cout << "  " << row.pa.str() << (row.attains_target ? "  yes" : "  no") << "\n";

  const Certificate c = verify_theorem(p);
  std::cout << "\n" << to_string(c.conclusion.kind) << "\n";
  return c.conclusion.kind == ConclusionKind::NoHeisenbergSubgroup ? 0 : 1;
}
