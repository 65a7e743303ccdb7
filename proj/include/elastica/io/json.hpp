#ifndef ELASTICA_IO_JSON_HPP
#define ELASTICA_IO_JSON_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastica/analysis.hpp"
#include "elastica/gallery.hpp"
#include "elastica/poisson.hpp"
#include "elastica/synthesis.hpp"

namespace elastica::io {

using nlohmann::json;

/// Raised for documents that do not match the expected schema.
class SchemaError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// {"k": int, "casimirs": [{"degree": int, "terms": [{"exps": [...], "coef": float}]}]}
inline json casimirs_to_json(const CasimirSet& set) {
  json doc;
  doc["k"] = set.k;
  doc["casimirs"] = json::array();
  for (const auto& c : set.C) {
    json entry;
    entry["degree"] = c.homogeneous_degree();
    entry["terms"] = json::array();
    for (const auto& [e, coef] : c.terms()) entry["terms"].push_back({{"exps", e}, {"coef", coef}});
    doc["casimirs"].push_back(entry);
  }
  return doc;
}

inline CasimirSet casimirs_from_json(const json& doc) {
  CasimirSet set;
  set.k = doc.at("k").get<int>();
  const auto nv = static_cast<std::size_t>(set.k + 2);
  for (const auto& entry : doc.at("casimirs")) {
    MultiPoly c(nv);
    for (const auto& t : entry.at("terms")) c.add_term(t.at("exps").get<std::vector<int>>(), t.at("coef").get<double>());
    set.C.push_back(std::move(c));
  }
  return set;
}

/// {"k": int, "p": [float...], "anchor": {"x": float, "duds": float}, "sigma": +-1}
struct CurvatureSpecDoc {
  int k = 1;
  CurvatureSpec spec;
};

inline CurvatureSpecDoc curvature_spec_from_json(const json& doc) {
  auto need = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw SchemaError(std::string("curvature spec: missing field '") + key + "'");
    return doc.at(key);
  };
  CurvatureSpecDoc out;
  const json& k = need("k");
  if (!k.is_number_integer() || k.get<int>() < 1) throw SchemaError("curvature spec: 'k' must be an integer >= 1");
  out.k = k.get<int>();
  const json& p = need("p");
  if (!p.is_array()) throw SchemaError("curvature spec: 'p' must be an array of numbers");
  std::vector<double> coefs;
  for (const auto& v : p) {
    if (!v.is_number()) throw SchemaError("curvature spec: 'p' must be an array of numbers");
    coefs.push_back(v.get<double>());
  }
  out.spec.p = Polynomial(coefs);
  if (out.spec.p.degree() > out.k - 1) throw SchemaError("curvature spec: degree of 'p' exceeds k-1");
  const json& anchor = need("anchor");
  if (!anchor.is_object() || !anchor.contains("x") || !anchor.contains("duds") || !anchor["x"].is_number() ||
      !anchor["duds"].is_number())
    throw SchemaError("curvature spec: 'anchor' must be {\"x\": number, \"duds\": number}");
  out.spec.anchor_x = anchor["x"].get<double>();
  out.spec.duds_at_anchor = anchor["duds"].get<double>();
  if (!(std::abs(out.spec.duds_at_anchor) < 1.0)) throw SchemaError("curvature spec: |anchor.duds| must be < 1");
  const json& sigma = need("sigma");
  if (!sigma.is_number_integer() || (sigma.get<int>() != 1 && sigma.get<int>() != -1))
    throw SchemaError("curvature spec: 'sigma' must be 1 or -1");
  out.spec.sigma0 = sigma.get<int>();
  return out;
}

inline json curvature_spec_to_json(const CurvatureSpecDoc& d) {
  return {{"k", d.k},
          {"p", std::vector<double>(d.spec.p.coefficients().begin(), d.spec.p.coefficients().end())},
          {"anchor", {{"x", d.spec.anchor_x}, {"duds", d.spec.duds_at_anchor}}},
          {"sigma", d.spec.sigma0}};
}

/// {"intervals": [{"x0", "x1", "kind0", "kind1", "class", "L": float|"inf", "tau": float|null, "action"}]}
inline json classification_to_json(const std::vector<IntervalReport>& reports) {
  json doc;
  doc["intervals"] = json::array();
  for (const auto& r : reports) {
    json e;
    e["x0"] = r.interval.x0.x;
    e["x1"] = r.interval.x1.x;
    e["kind0"] = to_string(r.interval.x0.kind);
    e["kind1"] = to_string(r.interval.x1.kind);
    e["dF0"] = r.interval.x0.dF;
    e["dF1"] = r.interval.x1.dF;
    e["class"] = to_string(r.motion);
    const bool bounded = r.motion != MotionClass::Unbounded && r.motion != MotionClass::DegenerateVerticalLine;
    if (bounded && r.period.finite) e["L"] = r.period.L;
    else e["L"] = "inf";
    e["tau"] = r.period.tau ? json(*r.period.tau) : json(nullptr);
    e["action"] = bounded ? json(r.period.action) : json(nullptr);
    doc["intervals"].push_back(e);
  }
  return doc;
}

}  // namespace elastica::io

#endif  // ELASTICA_IO_JSON_HPP
