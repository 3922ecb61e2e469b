#pragma once

// JSON document format for CoverSpec:
//
//   {
//     "labels":       ["r1", "r2", ...],
//     "depths":       [["r1", "r2", "3/2"], ...],   unlisted pairs are 0
//     "v_phi":        0,
//     "e":            1,
//     "ram_index":    1,
//     "residue_char": 3,
//     "genus_Y":      1,
//     "frobenius":    {"r1": "r2", ...},            optional, unlisted = fixed
//     "eps":          {"r1,r2": -1, ...},           optional
//     "inertia":      [{"r1": "r2", ...}, ...]      optional
//   }

#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dcover/branch_data.hpp"

namespace dcover {

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing required field '") + key + "'");
  return *it;
}

inline std::int64_t as_int(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError("field '" + what + "' must be an integer");
  return v.get<std::int64_t>();
}

inline Permutation parse_permutation(const nlohmann::json& v, const BranchDatum& b, const std::string& what) {
  if (!v.is_object()) throw ParseError("field '" + what + "' must be an object mapping label to label");
  Permutation p = identity_permutation(b.size());
  for (const auto& [from, to] : v.items()) {
    if (!to.is_string()) throw ParseError("field '" + what + "': image of '" + from + "' must be a label");
    p[b.index_of(from)] = b.index_of(to.get<std::string>());
  }
  if (!is_bijection(p, b.size())) throw ValidationError("field '" + what + "' is not a bijection of labels");
  return p;
}

inline nlohmann::json permutation_json(const Permutation& p, const BranchDatum& b) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < p.size(); ++i) out[b.labels[i]] = b.labels[p[i]];
  return out;
}

}  // namespace detail

/// Parses a CoverSpec document. Structural problems (syntax, missing or
/// unknown fields, duplicate labels, asymmetric or malformed depths) throw;
/// global invariants such as ultrametricity are left to validate_branch_datum.
inline CoverSpec parse_cover_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("top-level value must be an object");

  static const std::set<std::string> known = {"labels", "depths",  "v_phi",     "e",   "ram_index",
                                              "residue_char", "genus_Y", "frobenius", "eps", "inertia"};
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) throw ParseError("unknown field '" + key + "'");

  CoverSpec spec;
  BranchDatum& b = spec.branch;

  const auto& labels = detail::require(doc, "labels");
  if (!labels.is_array()) throw ParseError("field 'labels' must be an array of strings");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!l.is_string()) throw ParseError("field 'labels' must be an array of strings");
    if (!seen.insert(l.get<std::string>()).second)
      throw ValidationError("duplicate label '" + l.get<std::string>() + "'");
    b.labels.push_back(l.get<std::string>());
  }

  b.v_phi = detail::as_int(detail::require(doc, "v_phi"), "v_phi");
  b.field_degree_e = detail::as_int(detail::require(doc, "e"), "e");
  b.ram_index = detail::as_int(detail::require(doc, "ram_index"), "ram_index");
  b.residue_char = detail::as_int(detail::require(doc, "residue_char"), "residue_char");
  b.genus_Y = detail::as_int(detail::require(doc, "genus_Y"), "genus_Y");
  if (b.field_degree_e < 1) throw ValidationError("field 'e' must be positive");

  const std::size_t n = b.size();
  b.depth = DepthMatrix(n);
  std::vector<bool> assigned(n * n, false);
  const auto& depths = detail::require(doc, "depths");
  if (!depths.is_array()) throw ParseError("field 'depths' must be an array of [label, label, rational]");
  for (const auto& t : depths) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string())
      throw ParseError("depth entries must be [label, label, \"num/den\"]");
    std::size_t i = b.index_of(t[0].get<std::string>());
    std::size_t j = b.index_of(t[1].get<std::string>());
    if (i == j) throw ValidationError("depth entry pairs label '" + b.labels[i] + "' with itself");
    Rational d = parse_rational(t[2].get<std::string>());
    if (d < 0) throw ValidationError("negative depth for (" + b.labels[i] + ", " + b.labels[j] + ")");
    if (b.field_degree_e % den(d) != 0)
      throw ValidationError("depth " + format_rational(d) + " for (" + b.labels[i] + ", " + b.labels[j] +
                            ") has denominator not dividing e = " + std::to_string(b.field_degree_e));
    if (assigned[i * n + j] && b.depth(i, j) != d)
      throw ValidationError("depth matrix is not symmetric at (" + b.labels[i] + ", " + b.labels[j] + ")");
    assigned[i * n + j] = assigned[j * n + i] = true;
    b.depth.set(i, j, d);
  }

  spec.galois.frobenius = identity_permutation(n);
  if (auto it = doc.find("frobenius"); it != doc.end())
    spec.galois.frobenius = detail::parse_permutation(*it, b, "frobenius");
  if (auto it = doc.find("eps"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("field 'eps' must be an object");
    for (const auto& [id, value] : it->items()) {
      if (!value.is_number_integer() || (value.get<int>() != 1 && value.get<int>() != -1))
        throw ValidationError("eps value for '" + id + "' must be +1 or -1");
      spec.galois.eps[id] = value.get<int>();
    }
  }
  if (auto it = doc.find("inertia"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("field 'inertia' must be an array");
    for (const auto& g : *it) spec.galois.inertia.push_back(detail::parse_permutation(g, b, "inertia"));
  }
  return spec;
}

/// Document model of a spec in canonical form.
inline nlohmann::json cover_spec_json(const CoverSpec& spec) {
  const BranchDatum& b = spec.branch;
  nlohmann::json doc;
  doc["labels"] = b.labels;
  nlohmann::json depths = nlohmann::json::array();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (b.depth(i, j) != 0) depths.push_back({b.labels[i], b.labels[j], format_rational(b.depth(i, j))});
  doc["depths"] = depths;
  doc["v_phi"] = b.v_phi;
  doc["e"] = b.field_degree_e;
  doc["ram_index"] = b.ram_index;
  doc["residue_char"] = b.residue_char;
  doc["genus_Y"] = b.genus_Y;
  doc["frobenius"] = detail::permutation_json(spec.galois.frobenius, b);
  doc["eps"] = nlohmann::json::object();
  for (const auto& [id, v] : spec.galois.eps) doc["eps"][id] = v;
  doc["inertia"] = nlohmann::json::array();
  for (const auto& g : spec.galois.inertia) doc["inertia"].push_back(detail::permutation_json(g, b));
  return doc;
}

inline std::string render_cover_spec(const CoverSpec& spec) { return cover_spec_json(spec).dump(2) + "\n"; }

}  // namespace dcover
