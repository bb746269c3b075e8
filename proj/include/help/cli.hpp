#pragma once

// Command-line front end. run() is kept here, not in the executable, so the
// tests can drive it with in-memory streams.
//
// Exit codes: 0 verified, 1 violation or counterexample, 2 usage error.

#include <cstdint>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "certificate.hpp"
#include "char_table.hpp"
#include "f2.hpp"
#include "help_engine.hpp"
#include "oracle.hpp"
#include "psl2.hpp"
#include "residue.hpp"
#include "theorem.hpp"

namespace help::cli {

inline constexpr int kVerified = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;

inline constexpr std::int64_t kMaxTheoremPrime = 199;
inline constexpr std::int64_t kMaxGaussPrime = 997;
inline constexpr std::int64_t kMaxTablePrime = 23;
inline constexpr std::int64_t kMaxLemmaSize = 1001;

enum class Format { Text, Json };

struct RunConfig {
  std::string command;
  std::int64_t p = 0;
  std::int64_t m = 0;
  std::int64_t q = 0;
  std::int64_t order = 0;
  std::string output_path;
  Format format = Format::Text;
  bool oracle = false;
  bool no_cap = false;
};

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_cap(std::int64_t value, std::int64_t cap, const std::string& what, bool no_cap) {
  if (!no_cap && value > cap)
    throw UsageError(what + " = " + std::to_string(value) + " exceeds the cap " + std::to_string(cap) +
                     " (pass --unsafe-no-cap to override)");
}

inline void require_prime_arg(std::int64_t p, const std::string& flag) {
  if (!is_odd_prime(p)) throw UsageError(flag + " must be an odd prime, got " + std::to_string(p));
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw UsageError("write to " + path + " failed");
}

inline std::string certificate_text(const Certificate& c) {
  std::string out = "p = " + std::to_string(c.p) + ", epsilon = " + std::to_string(c.epsilon) + "\n";
  for (const auto& s : c.steps) {
    out += "  " + s.name + ": " + to_string(s.status);
    if (s.expected_violation) out += " (expected)";
    out += "\n";
  }
  out += std::string("conclusion: ") + to_string(c.conclusion.kind);
  if (!c.conclusion.citation.empty()) out += " [" + c.conclusion.citation + "]";
  if (!c.conclusion.failing_step.empty()) out += " at " + c.conclusion.failing_step;
  return out + "\n";
}

inline int cmd_theorem(const RunConfig& cfg, std::ostream& out) {
  if (cfg.p == 2) {
    if (cfg.oracle) throw UsageError("--oracle needs an odd prime p <= " + std::to_string(kOracleMaxPrime));
  } else {
    require_prime_arg(cfg.p, "--p");
    require_cap(cfg.p, kMaxTheoremPrime, "--p", cfg.no_cap);
    if (cfg.oracle && cfg.p > kOracleMaxPrime)
      throw UsageError("--oracle is limited to p <= " + std::to_string(kOracleMaxPrime));
  }

  const Certificate cert = verify_theorem(cfg.p);
  nlohmann::json doc = to_json(cert);
  bool agree = true;
  std::optional<Certificate> oracle;
  if (cfg.oracle) {
    try {
      oracle = brute_force_oracle(cfg.p);
      agree = oracle->conclusion.kind == cert.conclusion.kind;
    } catch (const oracle_disagreement& e) {
      agree = false;
      doc["oracle_error"] = e.what();
    }
  }

  if (!cfg.output_path.empty()) write_file(cfg.output_path, doc.dump(2) + "\n");

  if (cfg.format == Format::Json) {
    nlohmann::json report = doc;
    if (oracle) report["oracle"] = to_json(*oracle);
    if (cfg.oracle) report["oracle_agrees"] = agree;
    out << report.dump(2) << "\n";
  } else {
    out << certificate_text(cert);
    if (oracle) out << "oracle:\n" << certificate_text(*oracle);
    if (cfg.oracle) out << "oracle agrees: " << (agree ? "yes" : "no") << "\n";
  }

  const bool verified = cert.conclusion.kind != ConclusionKind::Inconclusive;
  return verified && agree ? kVerified : kViolation;
}

inline int cmd_lemma(const RunConfig& cfg, std::ostream& out) {
  if (cfg.m < 1) throw UsageError("--m must be at least 1");
  require_cap(cfg.m, kMaxLemmaSize, "--m", cfg.no_cap);
  const auto m = static_cast<std::size_t>(cfg.m);
  const F2Matrix a = lemma_matrix(m);
  const std::size_t rank = f2_rank(a);
  const auto kernel = f2_nullspace(a);
  // The statement claims rank m - 1; for even m it fails.
  const bool holds = rank == m - 1;
  const bool odd = m % 2 == 1;

  if (cfg.format == Format::Json) {
    out << nlohmann::json{{"m", cfg.m}, {"rank", rank}, {"kernel_dimension", kernel.size()},
                          {"m_odd", odd}, {"rank_is_m_minus_1", holds}}
               .dump(2)
        << "\n";
  } else {
    out << "m = " << m << ", rank(J - I) over F2 = " << rank << ", kernel dimension " << kernel.size()
        << "\n";
    if (holds) out << "rank = m - 1: holds\n";
    else out << "rank = m - 1: fails" << (odd ? "" : " (m even: counterexample without the odd hypothesis)")
             << "\n";
  }
  return holds ? kVerified : kViolation;
}

inline int cmd_gauss(const RunConfig& cfg, std::ostream& out) {
  require_prime_arg(cfg.p, "--p");
  require_cap(cfg.p, kMaxGaussPrime, "--p", cfg.no_cap);
  const ResidueData rd = residue_sets(cfg.p);
  const CycNum g = gauss_sum(cfg.p);
  const CycNum sq = g * g;
  const bool square_ok = sq == CycNum::rational(cfg.p, rd.epsilon * cfg.p);
  bool products_ok = true;
  std::string same = "?", cross = "?", error;
  try {
    const auto [s, c] = product_identities(cfg.p);
    same = s.get_str();
    cross = c.get_str();
  } catch (const identity_violation& e) {
    products_ok = false;
    error = e.what();
  }
  const auto z = embed_complex(g);

  if (cfg.format == Format::Json) {
    nlohmann::json j{{"p", cfg.p},
                     {"epsilon", rd.epsilon},
                     {"gauss_sum", to_json(g)},
                     {"gauss_sum_squared", to_json(sq)},
                     {"square_is_eps_p", square_ok},
                     {"residue_products", same},
                     {"cross_products", cross},
                     {"product_identities", products_ok},
                     {"embedding", {z.real(), z.imag()}}};
    if (!error.empty()) j["error"] = error;
    out << j.dump(2) << "\n";
  } else {
    out << "p = " << cfg.p << ", epsilon = " << rd.epsilon << "\n";
    out << "1 + 2 sum_Q zeta^q = " << g.str() << "\n";
    out << "squared = " << sq.str() << (square_ok ? " (= eps p)" : " (MISMATCH)") << "\n";
    out << "embedding = " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i\n";
    if (products_ok)
      out << "product identities (Q.Q, Q.N): " << same << ", " << cross << " (hold)\n";
    else out << "product identities fail: " << error << "\n";
  }
  return square_ok && products_ok ? kVerified : kViolation;
}

inline nlohmann::json heisenberg_table_json(const CharTable& t) {
  const HeisenbergGroup& h = t.group();
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t k = 0; k < h.class_count(); ++k) {
    const auto r = h.class_representative(k);
    classes.push_back({{"representative", {r.z, r.b, r.c}}, {"size", h.class_size(k)}});
  }
  // Each entry is [coefficient, exponent] for coefficient * zeta^exponent.
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t k = 0; k < t.class_count(); ++k) {
      const RootMultiple e = t.entry(r, k);
      values.push_back({e.coeff, e.exponent});
    }
    rows.push_back({{"label", t.label(r)}, {"degree", t.degree(r)}, {"values", values}});
  }
  return {{"p", t.prime()}, {"classes", classes}, {"characters", rows}};
}

inline nlohmann::json fragment_json(const PSLFragment& f) {
  return {{"p", f.p},
          {"group_order", f.group_order.get_str()},
          {"epsilon", f.epsilon},
          {"classes", {"1", "g", "h"}},
          {"eta", {to_json(f.eta[0]), to_json(f.eta[1]), to_json(f.eta[2])}},
          {"eta_prime", {to_json(f.eta_prime[0]), to_json(f.eta_prime[1]), to_json(f.eta_prime[2])}}};
}

inline int cmd_tables(const RunConfig& cfg, std::ostream& out) {
  require_prime_arg(cfg.p, "--p");
  require_cap(cfg.p, kMaxTablePrime, "--p", cfg.no_cap);
  const PSLFragment f = psl2_fragment(cfg.p);
  const CharTable t(cfg.p);
  const nlohmann::json doc{{"psl2_fragment", fragment_json(f)}, {"heisenberg", heisenberg_table_json(t)}};
  if (!cfg.output_path.empty()) write_file(cfg.output_path, doc.dump(2) + "\n");

  if (cfg.format == Format::Json) {
    out << doc.dump(2) << "\n";
    return kVerified;
  }
  out << "PSL(2, " << cfg.p << "^3), order " << f.group_order.get_str() << "\n";
  out << "  class   eta                      eta'\n";
  const char* names[] = {"1", "g", "h"};
  for (std::size_t k = 0; k < 3; ++k)
    out << "  " << names[k] << "       " << f.eta[k].str() << "    " << f.eta_prime[k].str() << "\n";
  const HeisenbergGroup& h = t.group();
  out << "Heisenberg group of order " << h.order() << ", " << h.class_count() << " classes\n";
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    out << "  " << t.label(r) << ":";
    for (std::size_t k = 0; k < t.class_count(); ++k) out << " " << t.value(r, k).str();
    out << "\n";
  }
  return kVerified;
}

inline int cmd_lp(const RunConfig& cfg, std::ostream& out) {
  const PrimePower pp = [&] {
    try {
      return prime_power(cfg.q);
    } catch (const std::exception&) {
      throw UsageError("--q must be a prime power, got " + std::to_string(cfg.q));
    }
  }();
  if (pp.f != 3 || pp.p == 2)
    throw UsageError("--q must be p^3 for an odd prime p, got " + std::to_string(cfg.q));
  const std::int64_t p = pp.p;
  require_cap(p, kMaxTheoremPrime, "p", cfg.no_cap);
  // Table 1 only covers the identity and the two classes of order p.
  if (cfg.order != 1 && cfg.order != p)
    throw UsageError("--order must be 1 or " + std::to_string(p) + " for q = " + std::to_string(cfg.q));

  const PSLFragment f = psl2_fragment(p);
  const Rational degree = f.degree();
  bool ok = true;
  nlohmann::json report{{"q", cfg.q}, {"order", cfg.order}, {"degree", degree.get_str()}};
  std::string text;
  const std::vector<std::pair<std::string, std::size_t>> classes =
      cfg.order == 1 ? std::vector<std::pair<std::string, std::size_t>>{{"1", 0}}
                     : std::vector<std::pair<std::string, std::size_t>>{{"g", 1}, {"h", 2}};
  for (const auto& [name, cls] : classes) {
    std::map<std::int64_t, CycNum> powers{{1, f.eta[cls]}};
    powers.emplace(cfg.order, f.eta[0]);
    nlohmann::json mus = nlohmann::json::array();
    Rational total = 0;
    text += "  " + name + ":";
    for (std::int64_t l = 0; l < cfg.order; ++l) {
      const Rational mu = lp_multiplicities(p, cfg.order, powers, l);
      ok &= is_nonnegative_integer(mu);
      total += mu;
      mus.push_back(mu.get_str());
      text += " " + mu.get_str();
    }
    ok &= total == degree;
    text += "  (sum " + total.get_str() + ")\n";
    report["multiplicities"][name] = mus;
  }
  report["nonnegative_integers"] = ok;

  if (cfg.format == Format::Json) out << report.dump(2) << "\n";
  else out << "eta on trivial units of order " << cfg.order << " in PSL(2, " << cfg.q << "), degree "
           << degree.get_str() << "\n" << text << (ok ? "all multiplicities are nonnegative integers\n"
                                                      : "NEGATIVE OR FRACTIONAL MULTIPLICITY\n");
  return ok ? kVerified : kViolation;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Checks the absence of Heisenberg subgroups of order p^3 in V(Z PSL(2, p^3))"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--unsafe-no-cap", cfg.no_cap, "Lift the parameter caps");

  auto* theorem = app.add_subcommand("theorem", "Run the full verification for one prime");
  theorem->add_option("--p", cfg.p, "Prime p")->required();
  theorem->add_flag("--oracle", cfg.oracle, "Cross-check by brute force (p <= 7)");
  theorem->add_option("--json", cfg.output_path, "Write the certificate to FILE");

  auto* lemma = app.add_subcommand("lemma", "Rank of J - I over F2");
  lemma->add_option("--m", cfg.m, "Matrix size")->required();

  auto* gauss = app.add_subcommand("gauss", "Gaussian sum and product identities");
  gauss->add_option("--p", cfg.p, "Prime p")->required();

  auto* tables = app.add_subcommand("tables", "Dump the character table data");
  tables->add_option("--p", cfg.p, "Prime p")->required();
  tables->add_option("--json", cfg.output_path, "Also write the tables to FILE");

  auto* lp = app.add_subcommand("lp", "Luthar-Passi multiplicities of trivial units");
  lp->add_option("--q", cfg.q, "Field size p^3")->required();
  lp->add_option("--order", cfg.order, "Unit order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kVerified : kUsage;
  }
  cfg.format = format == "json" ? Format::Json : Format::Text;
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "theorem") return detail::cmd_theorem(cfg, out);
    if (cfg.command == "lemma") return detail::cmd_lemma(cfg, out);
    if (cfg.command == "gauss") return detail::cmd_gauss(cfg, out);
    if (cfg.command == "tables") return detail::cmd_tables(cfg, out);
    return detail::cmd_lp(cfg, out);
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace help::cli
