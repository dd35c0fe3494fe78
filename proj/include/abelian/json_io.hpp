#pragma once

// JSON encodings of the result types. Rationals are "p/q" strings and big
// integers are decimal strings, so every document parses back exactly.

#include <optional>
#include <string>

#include <json.hpp>

#include "abelian/coprime.hpp"
#include "abelian/descriptor.hpp"
#include "abelian/exponents.hpp"
#include "abelian/scan.hpp"
#include "abelian/special_values.hpp"

namespace abelian {

using nlohmann::json;

inline void to_json(json& j, const SpecialValueResult& r) {
  j = json{{"value", r.value}, {"error_bound", r.abs_error_bound}, {"terms_used", r.terms_used}};
}

inline void from_json(const json& j, SpecialValueResult& r) {
  r.value = j.at("value").get<double>();
  r.abs_error_bound = j.at("error_bound").get<double>();
  r.terms_used = j.at("terms_used").get<u64>();
}

inline json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

inline json comparisons_json(const ComparisonExponents& c) {
  json j{{"weber", to_string(c.weber)},
         {"landau", to_string(c.landau)},
         {"lao_ps", to_string(c.lao_ps)},
         {"conjectural", to_string(c.conjectural)},
         {"sittinger", to_string(c.sittinger)}};
  j["paper"] = c.paper ? json(to_string(*c.paper)) : json(nullptr);
  return j;
}

inline ComparisonExponents comparisons_from_json(const json& j) {
  ComparisonExponents c{rational_from_json(j.at("weber")),       rational_from_json(j.at("landau")),
                        rational_from_json(j.at("lao_ps")),      rational_from_json(j.at("conjectural")),
                        std::nullopt,                            rational_from_json(j.at("sittinger"))};
  if (j.contains("paper") && !j.at("paper").is_null()) c.paper = rational_from_json(j.at("paper"));
  return c;
}

inline void to_json(json& j, const LPSolution& s) {
  json a = json::object();
  for (int k = 2; k <= 12; ++k) a["A" + std::to_string(k)] = s.A(k);
  j = json{{"n", s.degree}, {"feasible", s.feasible}, {"assignments", a}, {"objective", to_string(s.objective)}};
  j["delta"] = s.delta ? json(to_string(*s.delta)) : json(nullptr);
}

inline void from_json(const json& j, LPSolution& s) {
  s.degree = j.at("n").get<int>();
  s.feasible = j.at("feasible").get<bool>();
  for (int k = 2; k <= 12; ++k) s.assignments[static_cast<std::size_t>(k - 2)] = j.at("assignments").at("A" + std::to_string(k)).get<int>();
  s.objective = rational_from_json(j.at("objective"));
  if (j.contains("delta") && !j.at("delta").is_null()) {
    s.delta = rational_from_json(j.at("delta"));
  } else {
    s.delta.reset();
  }
}

inline void to_json(json& j, const ThetaTableRow& r) {
  j = json{{"n", r.degree},
           {"theta", to_string(r.theta)},
           {"one_minus_theta", to_string(r.one_minus_theta)},
           {"conjectural", to_string(r.conjectural)}};
}

inline void from_json(const json& j, ThetaTableRow& r) {
  r.degree = j.at("n").get<int>();
  r.theta = rational_from_json(j.at("theta"));
  r.one_minus_theta = rational_from_json(j.at("one_minus_theta"));
  r.conjectural = rational_from_json(j.at("conjectural"));
}

inline void to_json(json& j, const CoprimeReport& r) {
  json exps{{"sittinger", to_string(r.exponents.sittinger)}};
  exps["paper"] = r.exponents.paper ? json(to_string(*r.exponents.paper)) : json(nullptr);
  j = json{{"x", r.x},
           {"m", r.m},
           {"exact_count", r.exact_count.str()},
           {"N_K", r.ideal_count},
           {"zeta_K_m", r.zeta_K_m},
           {"main_term", r.main_term},
           {"residual", r.residual},
           {"comparison_exponents", exps},
           {"method", r.method}};
}

inline void from_json(const json& j, CoprimeReport& r) {
  r.x = j.at("x").get<double>();
  r.m = j.at("m").get<int>();
  r.exact_count = BigInt(j.at("exact_count").get<std::string>());
  r.ideal_count = j.at("N_K").get<u64>();
  r.zeta_K_m = j.at("zeta_K_m").get<SpecialValueResult>();
  r.main_term = j.at("main_term").get<double>();
  r.residual = j.at("residual").get<double>();
  const auto& e = j.at("comparison_exponents");
  r.exponents.sittinger = rational_from_json(e.at("sittinger"));
  if (!e.at("paper").is_null()) {
    r.exponents.paper = rational_from_json(e.at("paper"));
  } else {
    r.exponents.paper.reset();
  }
  r.method = j.at("method").get<std::string>();
}

/// Summary document for a scan (rows go to CSV).
inline void to_json(json& j, const ScanReport& r) {
  json exps = json::object();
  for (const auto& [name, alpha] : r.exponents) exps[name] = to_string(alpha);
  j = json{{"field", r.field},
           {"degree", r.degree},
           {"rho", r.rho},
           {"points", r.rows.size()},
           {"x_min", r.rows.empty() ? 0.0 : r.rows.front().x},
           {"x_max", r.rows.empty() ? 0.0 : r.rows.back().x},
           {"exponents", exps},
           {"bound_constants", r.bound_constants}};
  j["fitted_slope"] = r.fitted_slope ? json(*r.fitted_slope) : json(nullptr);
}

inline void from_json(const json& j, ScanReport& r) {
  r.field = j.at("field").get<std::string>();
  r.degree = j.at("degree").get<unsigned>();
  r.rho = j.at("rho").get<SpecialValueResult>();
  r.exponents.clear();
  for (const auto& [name, v] : j.at("exponents").items()) r.exponents[name] = rational_from_json(v);
  r.bound_constants = j.at("bound_constants").get<std::map<std::string, double>>();
  if (j.at("fitted_slope").is_null()) {
    r.fitted_slope.reset();
  } else {
    r.fitted_slope = j.at("fitted_slope").get<double>();
  }
}

/// Degree, discriminant and characters of a field.
inline json field_info_json(const FieldDescriptor& fd) {
  json chars = json::array();
  for (const auto& chi : fd.characters()) {
    chars.push_back({{"conductor", chi.conductor()}, {"order", chi.order()}});
  }
  return json{{"field", fd.label()},
              {"descriptor", field_to_json(fd)},
              {"modulus", fd.modulus()},
              {"degree", fd.degree()},
              {"discriminant_magnitude", fd.discriminant_magnitude().str()},
              {"characters", chars}};
}

inline json splitting_json(const SplittingData& sd) {
  return json{{"p", sd.prime}, {"e", sd.ramification}, {"f", sd.residue_degree}, {"g", sd.num_primes}};
}

}  // namespace abelian
