#pragma once

// Machine-readable record of a verification run: one StepRecord per checked
// claim, plus the overall conclusion. Serialized as JSON; the schema string
// is bumped on any incompatible change.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "exactnum.hpp"
#include "json.hpp"

namespace help {

inline constexpr const char* kCertificateSchema = "help-certificate/1";

enum class StepStatus { Ok, Violated };

inline const char* to_string(StepStatus s) { return s == StepStatus::Ok ? "OK" : "VIOLATED"; }

struct StepRecord {
  std::string name;
  std::string anchor;
  std::string inputs_digest;
  nlohmann::json values = nlohmann::json::object();
  StepStatus status = StepStatus::Ok;
  // Set on the final contradiction step, whose candidate constraints are
  // expected to be unsatisfiable.
  bool expected_violation = false;

  bool passed() const {
    return status == (expected_violation ? StepStatus::Violated : StepStatus::Ok);
  }
};

enum class ConclusionKind { NoHeisenbergSubgroup, Inconclusive, LiteratureCase };

inline const char* to_string(ConclusionKind k) {
  switch (k) {
    case ConclusionKind::NoHeisenbergSubgroup: return "NoHeisenbergSubgroup";
    case ConclusionKind::Inconclusive: return "Inconclusive";
    case ConclusionKind::LiteratureCase: return "LiteratureCase";
  }
  return "?";
}

struct Conclusion {
  ConclusionKind kind = ConclusionKind::Inconclusive;
  std::string citation;      // LiteratureCase only
  std::string failing_step;  // Inconclusive only
};

struct Certificate {
  std::int64_t p = 0;
  int epsilon = 0;
  std::vector<StepRecord> steps;
  Conclusion conclusion;

  bool all_steps_passed() const {
    for (const auto& s : steps)
      if (!s.passed()) return false;
    return true;
  }
};

// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string digest(const nlohmann::json& inputs) { return fnv1a_hex(inputs.dump()); }

// Exact values as strings so that no JSON reader rounds them.
inline nlohmann::json to_json(const Rational& r) { return r.get_str(); }

inline nlohmann::json to_json(const CycNum& a) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(c.get_str());
  return coeffs;
}

inline nlohmann::json to_json(const StepRecord& s) {
  return {{"name", s.name},
          {"paper_anchor", s.anchor},
          {"inputs_digest", s.inputs_digest},
          {"values", s.values},
          {"status", to_string(s.status)},
          {"expected_violation", s.expected_violation}};
}

inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  nlohmann::json conclusion = {{"kind", to_string(c.conclusion.kind)}};
  if (!c.conclusion.citation.empty()) conclusion["citation"] = c.conclusion.citation;
  if (!c.conclusion.failing_step.empty()) conclusion["failing_step"] = c.conclusion.failing_step;
  return {{"schema", kCertificateSchema},
          {"p", c.p},
          {"epsilon", c.epsilon},
          {"steps", steps},
          {"conclusion", conclusion}};
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != kCertificateSchema)
    throw invalid_parameter("unsupported certificate schema " + j.at("schema").dump());
  Certificate c;
  c.p = j.at("p").get<std::int64_t>();
  c.epsilon = j.at("epsilon").get<int>();
  for (const auto& s : j.at("steps")) {
    StepRecord r;
    r.name = s.at("name").get<std::string>();
    r.anchor = s.at("paper_anchor").get<std::string>();
    r.inputs_digest = s.at("inputs_digest").get<std::string>();
    r.values = s.at("values");
    r.status = s.at("status").get<std::string>() == "OK" ? StepStatus::Ok : StepStatus::Violated;
    r.expected_violation = s.at("expected_violation").get<bool>();
    c.steps.push_back(std::move(r));
  }
  const auto& k = j.at("conclusion");
  const std::string kind = k.at("kind").get<std::string>();
  if (kind == "NoHeisenbergSubgroup") c.conclusion.kind = ConclusionKind::NoHeisenbergSubgroup;
  else if (kind == "LiteratureCase") c.conclusion.kind = ConclusionKind::LiteratureCase;
  else c.conclusion.kind = ConclusionKind::Inconclusive;
  c.conclusion.citation = k.value("citation", "");
  c.conclusion.failing_step = k.value("failing_step", "");
  return c;
}

}  // namespace help
