#pragma once

// Independent check of verify_theorem for small p: every labeling of H, with
// every choice of partial augmentation on the center, is restricted against
// every irreducible character of H by literally summing over the p^3 group
// elements. No closed form from the theorem engine is used for the verdict.

#include <cstdint>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "char_table.hpp"
#include "labeling.hpp"
#include "theorem.hpp"

namespace help {

inline constexpr std::int64_t kOracleMaxPrime = 7;

struct OracleVerdict {
  std::size_t labelings = 0;
  std::size_t violated = 0;
  std::size_t closed_form_checks = 0;
  std::size_t ledger_checks = 0;
};

namespace detail {

// <eta|_H, row> for one labeling, as a sum over all elements.
inline CycNum literal_inner_product(const CharTable& table, const Labeling& lab, std::size_t row,
                                    const std::vector<std::vector<std::pair<std::int64_t, Rational>>>& values,
                                    std::int64_t max_alpha) {
  const HeisenbergGroup& h = table.group();
  const std::int64_t p = h.prime();
  // bins[id][e]: total weight of zeta^e from chi(x^-1) over elements x with value id
  std::vector<std::vector<Rational>> bins(values.size(), std::vector<Rational>(static_cast<std::size_t>(p)));
  for (std::size_t i = 0; i < static_cast<std::size_t>(h.order()); ++i) {
    const HeisenbergElement x = h.element(i);
    std::size_t id = 0;
    if (!x.is_identity()) {
      const PAVector pa = lab.pa_of(x);
      id = 1 + static_cast<std::size_t>((pa.branch == Branch::G ? 0 : max_alpha + 1) + pa.alpha);
    }
    const RootMultiple chi = detail::conj(table.entry(row, x), p);
    if (chi.coeff != 0) bins[id][static_cast<std::size_t>(chi.exponent)] += chi.coeff;
  }
  CycAccumulator acc(p);
  for (std::size_t id = 0; id < values.size(); ++id) {
    std::vector<std::pair<std::int64_t, Rational>> weights;
    for (std::int64_t e = 0; e < p; ++e)
      if (bins[id][static_cast<std::size_t>(e)] != 0) weights.emplace_back(e, bins[id][static_cast<std::size_t>(e)]);
    if (!weights.empty()) acc.add_product_terms(values[id], weights);
  }
  return acc.value() / Rational(h.order());
}

}  // namespace detail

inline Certificate brute_force_oracle(std::int64_t p, OracleVerdict* verdict = nullptr) {
  require_odd_prime(p, "brute_force_oracle");
  if (p > kOracleMaxPrime)
    throw invalid_parameter("brute_force_oracle: p = " + std::to_string(p) + " exceeds " +
                            std::to_string(kOracleMaxPrime));
  const ResidueData rd = residue_sets(p);
  const Rational eps(rd.epsilon);
  const CharTable table(p);
  const HeisenbergGroup& h = table.group();
  const std::int64_t max_alpha = max_admissible_alpha(p);

  std::vector<std::vector<std::pair<std::int64_t, Rational>>> values;
  values.push_back(CycNum::rational(p, (Rational(p * p * p) + eps) / 2).sparse_terms());
  for (Branch br : {Branch::G, Branch::H})
    for (std::int64_t a = 0; a <= max_alpha; ++a)
      values.push_back(unit_char_value(p, PAVector::of(br, a)).sparse_terms());

  std::vector<CentralChoice> centrals;
  for (Branch br : {Branch::G, Branch::H})
    for (std::int64_t a = 0; a <= max_alpha; ++a) centrals.push_back({br, a});

  OracleVerdict v;
  for (Branch cb : {Branch::G, Branch::H}) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
      const SignAssignment s = SignAssignment::from_mask(p, mask, cb);
      for (const auto& central : centrals) {
        const Labeling lab(s, central);
        bool violated = false;
        for (std::size_t row = 0; row < table.row_count(); ++row) {
          const CycNum ip = detail::literal_inner_product(table, lab, row, values, max_alpha);
          if (!ip.is_rational())
            throw oracle_disagreement("labeling " + s.str() + " gives irrational multiplicity " + ip.str());
          if (!is_nonnegative_integer(ip.rational_value())) violated = true;

          if (!table.is_linear(row) || row == table.linear_index(0, 0)) continue;
          const auto [s_par, t_par] = table.linear_params(row);
          const LinearChar chi{s_par, t_par};
          const auto [gamma, delta] = ledger_gamma_delta(h, lab, chi);
          if (ip.rational_value() != (1 + eps * gamma - eps * delta) / 2)
            throw oracle_disagreement("labeling " + s.str() + ", chi(" + std::to_string(s_par) + "," +
                                      std::to_string(t_par) + "): literal " + ip.str() +
                                      " vs closed form with gamma " + std::to_string(gamma));
          ++v.closed_form_checks;
          if (central.z_branch == Branch::G && central.alpha == 0) {
            const LedgerRecord rec = contribution_ledger(p, s, chi, central);
            if (rec.total != ip.rational_value())
              throw oracle_disagreement("labeling " + s.str() + ": ledger total " + rec.total.get_str() +
                                        " vs literal " + ip.str());
            ++v.ledger_checks;
          }
        }
        ++v.labelings;
        v.violated += violated;
      }
    }
  }

  Certificate cert;
  cert.p = p;
  cert.epsilon = rd.epsilon;
  StepRecord step;
  step.name = "brute_force_restriction";
  step.anchor = "ledger";
  step.inputs_digest = digest({{"p", p}, {"oracle", true}});
  step.values = {{"labelings", v.labelings},
                 {"violated", v.violated},
                 {"closed_form_checks", v.closed_form_checks},
                 {"ledger_checks", v.ledger_checks}};
  step.status = v.violated == v.labelings ? StepStatus::Ok : StepStatus::Violated;
  cert.steps.push_back(std::move(step));
  cert.conclusion.kind = v.violated == v.labelings ? ConclusionKind::NoHeisenbergSubgroup
                                                   : ConclusionKind::Inconclusive;
  if (v.violated != v.labelings) cert.conclusion.failing_step = "brute_force_restriction";
  if (verdict) *verdict = v;
  return cert;
}

}  // namespace help
