#ifndef HMZF_SERIALIZATION_HPP
#define HMZF_SERIALIZATION_HPP

#include <json.hpp>

#include <string>

#include "hmzf/composition.hpp"
#include "hmzf/formal_sum.hpp"
#include "hmzf/graded.hpp"
#include "hmzf/hurwitz.hpp"
#include "hmzf/identity_checks.hpp"

namespace hmzf {

// Structured output is nlohmann ordered JSON throughout: key order is fixed
// by construction order, so identical invocations serialize byte-identically.
using Json = nlohmann::ordered_json;

inline std::string real_str(const Real& r) { return r.str(); }

inline Json to_json(const Composition& c) { return Json(c.parts()); }

inline Composition composition_from_json(const Json& j) {
  std::vector<int> parts;
  for (const auto& v : j) parts.push_back(v.get<int>());
  return Composition(std::move(parts));
}

inline Json to_json(const FormalSum& s) {
  Json out = Json::array();
  for (const auto& [c, q] : s) {
    Json term;
    term["coeff"] = rational_str(q);
    term["composition"] = to_json(c);
    out.push_back(term);
  }
  return out;
}

inline FormalSum formal_sum_from_json(const Json& j) {
  FormalSum s;
  for (const auto& term : j) {
    s.add(composition_from_json(term.at("composition")),
          parse_rational(term.at("coeff").get<std::string>()));
  }
  return s;
}

inline Json to_json(const Complex& z) {
  Json out;
  out["re"] = real_str(z.real());
  out["im"] = real_str(z.imag());
  return out;
}

inline Complex complex_from_json(const Json& j) {
  return Complex(Real(j.at("re").get<std::string>()), Real(j.at("im").get<std::string>()));
}

inline Json to_json(const EvalResult& r) {
  Json out;
  out["value"] = to_json(r.value);
  out["error_bound"] = real_str(r.error_bound);
  Json params;
  params["truncation"] = r.params.truncation;
  params["em_order"] = r.params.em_order;
  params["precision"] = r.params.precision;
  params["certified"] = r.params.certified;
  params["refinements"] = r.params.refinements;
  out["params"] = params;
  return out;
}

inline Json to_json(const GeneratorMonomial& m) {
  Json out = Json::array();
  for (const auto& [g, e] : m.exponents()) {
    Json factor;
    factor["generator"] = to_json(g);
    factor["exponent"] = e;
    out.push_back(factor);
  }
  return out;
}

inline Json to_json(const GeneratorPolynomial& p) {
  Json out = Json::array();
  for (const auto& [m, q] : p) {
    Json term;
    term["coeff"] = rational_str(q);
    term["monomial"] = to_json(m);
    out.push_back(term);
  }
  return out;
}

inline GeneratorPolynomial generator_polynomial_from_json(const Json& j) {
  GeneratorPolynomial p;
  for (const auto& term : j) {
    std::map<Composition, int> exps;
    for (const auto& factor : term.at("monomial")) {
      exps.emplace(composition_from_json(factor.at("generator")),
                   factor.at("exponent").get<int>());
    }
    p.add(GeneratorMonomial(std::move(exps)),
          parse_rational(term.at("coeff").get<std::string>()));
  }
  return p;
}

inline Json to_json(const GeneratorTable& t) {
  Json gens;
  for (int n = 2; n <= t.max_weight(); ++n) {
    Json group = Json::array();
    for (const Composition& g : t.generators(n)) group.push_back(to_json(g));
    gens[std::to_string(n)] = group;
  }
  Json out;
  out["max_weight"] = t.max_weight();
  out["generators"] = gens;
  return out;
}

inline Json to_json(const CheckReport& r) {
  Json out;
  out["identity"] = r.identity;
  out["tolerance"] = real_str(r.tolerance);
  Json pts = Json::array();
  for (const Complex& z : r.points) pts.push_back(to_json(z));
  out["points"] = pts;
  Json res = Json::array();
  for (const Real& x : r.residuals) res.push_back(real_str(x));
  out["residuals"] = res;
  out["max_residual"] = real_str(r.max_residual);
  out["pass"] = r.pass;
  return out;
}

inline Json to_json(const IndependenceCertificate& c) {
  Json out;
  Json cands = Json::array();
  for (const Composition& cand : c.candidates) cands.push_back(to_json(cand));
  out["candidates"] = cands;
  out["degree_bound"] = c.degree_bound;
  out["column_labels"] = c.column_labels;
  out["rows"] = c.rows;
  out["cols"] = c.cols;
  out["numeric_rank"] = c.numeric_rank;
  out["threshold"] = c.threshold;
  out["singular_values"] = c.singular_values;
  out["relation_found"] = c.relation_found;
  if (c.relation_found) {
    Json rel = Json::array();
    for (const auto& v : c.relation) {
      Json entry;
      entry["re"] = v.real();
      entry["im"] = v.imag();
      rel.push_back(entry);
    }
    out["relation"] = rel;
    out["holdout_residual"] = c.holdout_residual;
  }
  return out;
}

inline Json to_json(const FreenessReport& r) {
  Json out;
  out["max_weight"] = r.max_weight;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json jr;
    jr["weight"] = row.weight;
    jr["dim"] = row.dim;
    jr["monomial_count"] = row.monomial_count;
    jr["rank"] = row.rank;
    jr["generator_count"] = row.generator_count;
    jr["lyndon_count"] = row.lyndon_count;
    jr["independent"] = row.independent;
    jr["spanning"] = row.spanning;
    jr["lyndon_match"] = row.lyndon_match;
    rows.push_back(jr);
  }
  out["rows"] = rows;
  out["euler_product_ok"] = r.euler_product_ok;
  out["dimension_deviation_weights"] = r.dimension_deviation_weights;
  out["all_ok"] = r.all_ok;
  return out;
}

}  // namespace hmzf

#endif
