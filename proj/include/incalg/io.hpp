#pragma once

// JSON encodings. Objects keep insertion order; pairs are keyed "x,y" by
// element labels; scalars are integers or "n/d" strings over Q and integers
// in [0,p) over F_p.
//
//   poset         {"elements": [..], "covers": [[a,b], ..]}
//   element       {"coeffs": {"x,y": scalar, ..}}
//   endomorphism  {"basis_order": ["x,y", ..], "matrix": [[..], ..]}
//                 or {"images": {"x,y": {"u,v": scalar, ..}, ..}}
//   theta         {"map": {"x,y": "u,v", ..}}
//   sigma, c      {"x,y": scalar, ..}
//   alpha         {"basis_order": [..], "images": [element, ..]}
//   kappa         [scalar, ..]
//   decomposition {"alpha", "theta", "sigma", "c", "kappa"}

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "incalg/analysis.hpp"
#include "incalg/structure.hpp"
#include "incalg/synthesis.hpp"

namespace incalg::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void schema(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::SchemaError, "field '" + field + "': " + what);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Labels and pairs

inline Json label_json(const Poset& P, Vertex v) {
  if (P.label_is_numeric(v)) return std::stoll(P.label(v));
  return P.label(v);
}

inline std::string label_text(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j.get<std::string>();
  schema(field, "label must be a string or an integer");
}

inline std::string pair_key(const Poset& P, const Pair& p) { return P.label(p.lo) + "," + P.label(p.hi); }

inline Pair parse_pair_key(const Poset& P, const std::string& key, const std::string& field) {
  auto comma = key.find(',');
  if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos)
    schema(field, "expected a key of the form \"x,y\", got \"" + key + "\"");
  auto a = P.find(key.substr(0, comma)), b = P.find(key.substr(comma + 1));
  if (!a || !b) schema(field, "unknown element in \"" + key + "\"");
  if (!P.leq(*a, *b)) schema(field, "\"" + key + "\" is not a comparable pair x <= y");
  return {*a, *b};
}

inline Pair parse_strict_pair_key(const Poset& P, const std::string& key, const std::string& field) {
  auto p = parse_pair_key(P, key, field);
  if (p.lo == p.hi) schema(field, "\"" + key + "\" is not a strict pair");
  return p;
}

// ---------------------------------------------------------------------------
// Poset

inline Poset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
    schema("poset", "expected an object with \"elements\" and \"covers\"");
  if (!j["elements"].is_array()) schema("elements", "expected an array");
  if (!j["covers"].is_array()) schema("covers", "expected an array");
  std::vector<Poset::LabelSpec> labels;
  for (std::size_t i = 0; i < j["elements"].size(); ++i) {
    const auto& e = j["elements"][i];
    labels.push_back({label_text(e, "elements[" + std::to_string(i) + "]"), e.is_number_integer()});
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < j["covers"].size(); ++i) {
    const auto& c = j["covers"][i];
    std::string field = "covers[" + std::to_string(i) + "]";
    if (!c.is_array() || c.size() != 2) schema(field, "expected a pair [a, b]");
    covers.emplace_back(label_text(c[0], field), label_text(c[1], field));
  }
  return Poset::from_cover_relations(labels, covers);
}

inline Json poset_to_json(const Poset& P) {
  Json j;
  j["elements"] = Json::array();
  for (Vertex v = 0; v < P.size(); ++v) j["elements"].push_back(label_json(P, v));
  j["covers"] = Json::array();
  for (const auto& c : P.covers()) j["covers"].push_back(Json::array({label_json(P, c.lo), label_json(P, c.hi)}));
  return j;
}

// ---------------------------------------------------------------------------
// Scalars

inline Json scalar_to_json(const RationalField&, const Rational& r) {
  if (r.is_integer() && r.get().get_num().fits_slong_p()) return r.get().get_num().get_si();
  return r.str();
}
inline Json scalar_to_json(const PrimeField&, const Residue& r) { return r.value(); }

template <ExactField F>
typename F::value_type scalar_from_json(const F& K, const Json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(std::numeric_limits<long>::max()))
        return K.parse(std::to_string(j.get<unsigned long long>()));
      return K.from_int(j.get<long>());
    }
    if (j.is_string()) return K.parse(j.get<std::string>());
  } catch (const Error& e) {
    schema(field, e.what());
  }
  schema(field, "expected an integer or a \"n/d\" string");
}

// ---------------------------------------------------------------------------
// Elements and maps

template <ExactField F>
Json element_to_json(const Element<F>& e) {
  Json coeffs = Json::object();
  const auto& alg = *e.algebra();
  for (const auto& [i, s] : e.coeffs()) coeffs[alg.pair_key(i)] = scalar_to_json(alg.field(), s);
  return Json{{"coeffs", coeffs}};
}

template <ExactField F>
Element<F> element_from_json(const AlgebraPtr<F>& alg, const Json& j, const std::string& field) {
  const Json* coeffs = &j;
  if (j.is_object() && j.contains("coeffs")) coeffs = &j["coeffs"];
  if (!coeffs->is_object()) schema(field, "expected {\"coeffs\": {\"x,y\": scalar}}");
  Element<F> e(alg);
  for (const auto& [key, val] : coeffs->items()) {
    auto p = parse_pair_key(alg->poset(), key, field + "." + key);
    e.add(alg->index(p), scalar_from_json(alg->field(), val, field + "." + key));
  }
  return e;
}

template <ExactField F>
Json basis_order_json(const Algebra<F>& alg) {
  Json order = Json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i) order.push_back(alg.pair_key(i));
  return order;
}

/// Maps position in a serialized basis_order to the canonical index.
template <ExactField F>
std::vector<std::size_t> read_basis_order(const Algebra<F>& alg, const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != alg.dim())
    schema(field, "expected an array of all " + std::to_string(alg.dim()) + " basis keys");
  std::vector<std::size_t> pos;
  std::vector<bool> seen(alg.dim(), false);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string f = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_string()) schema(f, "expected a \"x,y\" key");
    auto idx = alg.index(parse_pair_key(alg.poset(), j[i].get<std::string>(), f));
    if (seen[idx]) schema(f, "basis key repeated");
    seen[idx] = true;
    pos.push_back(idx);
  }
  return pos;
}

template <ExactField F>
Json map_to_json(const LinearMap<F>& L) {
  const auto& alg = *L.algebra();
  Json rows = Json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < alg.dim(); ++j) row.push_back(scalar_to_json(alg.field(), L.matrix()(i, j)));
    rows.push_back(row);
  }
  return Json{{"basis_order", basis_order_json(alg)}, {"matrix", rows}};
}

template <ExactField F>
LinearMap<F> map_from_json(const AlgebraPtr<F>& alg, const Json& j) {
  const std::size_t d = alg->dim();
  Matrix<F> m(d, d, alg->field());
  if (j.is_object() && j.contains("matrix")) {
    std::vector<std::size_t> pos(d);
    for (std::size_t i = 0; i < d; ++i) pos[i] = i;
    if (j.contains("basis_order")) pos = read_basis_order(*alg, j["basis_order"], "basis_order");
    const auto& rows = j["matrix"];
    if (!rows.is_array() || rows.size() != d) schema("matrix", "expected " + std::to_string(d) + " rows");
    for (std::size_t r = 0; r < d; ++r) {
      if (!rows[r].is_array() || rows[r].size() != d)
        schema("matrix[" + std::to_string(r) + "]", "expected " + std::to_string(d) + " entries");
      for (std::size_t c = 0; c < d; ++c)
        m(pos[r], pos[c]) = scalar_from_json(alg->field(), rows[r][c],
                                             "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return LinearMap<F>(alg, std::move(m));
  }
  if (j.is_object() && j.contains("images")) {
    const auto& im = j["images"];
    if (!im.is_object()) schema("images", "expected an object keyed by basis \"x,y\"");
    std::vector<Element<F>> images;
    for (std::size_t i = 0; i < d; ++i) images.push_back(Element<F>::basis(alg, i));
    std::vector<bool> given(d, false);
    for (const auto& [key, val] : im.items()) {
      auto idx = alg->index(parse_pair_key(alg->poset(), key, "images." + key));
      images[idx] = element_from_json(alg, val, "images." + key);
      given[idx] = true;
    }
    for (std::size_t i = 0; i < d; ++i)
      if (!given[i]) schema("images", "missing image of " + alg->pair_key(i));
    return LinearMap<F>::from_images(alg, images);
  }
  schema("map", "expected \"matrix\" or \"images\"");
}

// ---------------------------------------------------------------------------
// Invariant data

inline Json theta_to_json(const Poset& P, const BasisBijection& th) {
  Json m = Json::object();
  for (const auto& s : P.strict_pairs()) m[pair_key(P, s)] = pair_key(P, th(s));
  return Json{{"map", m}};
}

inline BasisBijection theta_from_json(const Poset& P, const Json& j) {
  if (!j.is_object() || !j.contains("map") || !j["map"].is_object())
    schema("theta", "expected {\"map\": {\"x,y\": \"u,v\"}}");
  std::map<Pair, Pair> m;
  for (const auto& [key, val] : j["map"].items()) {
    if (!val.is_string()) schema("map." + key, "expected a \"u,v\" string");
    m.emplace(parse_strict_pair_key(P, key, "map." + key),
              parse_strict_pair_key(P, val.get<std::string>(), "map." + key));
  }
  return BasisBijection::from_map(P, std::move(m));
}

template <ExactField F>
Json pairmap_to_json(const F& K, const Poset& P, const PairMap<typename F::value_type>& m) {
  Json j = Json::object();
  for (const auto& s : P.strict_pairs())
    if (auto it = m.find(s); it != m.end()) j[pair_key(P, s)] = scalar_to_json(K, it->second);
  return j;
}

/// Every strict pair must be present unless `partial`.
template <ExactField F>
PairMap<typename F::value_type> pairmap_from_json(const F& K, const Poset& P, const Json& j, const std::string& name,
                                                  bool partial = false) {
  if (!j.is_object()) schema(name, "expected {\"x,y\": scalar}");
  PairMap<typename F::value_type> m;
  for (const auto& [key, val] : j.items())
    m[parse_strict_pair_key(P, key, name + "." + key)] = scalar_from_json(K, val, name + "." + key);
  if (!partial)
    for (const auto& s : P.strict_pairs())
      if (!m.count(s)) schema(name, "missing pair \"" + pair_key(P, s) + "\"");
  return m;
}

template <ExactField F>
Json kappa_to_json(const F& K, const Kappa<F>& k) {
  Json j = Json::array();
  for (const auto& s : k) j.push_back(scalar_to_json(K, s));
  return j;
}

template <ExactField F>
Kappa<F> kappa_from_json(const F& K, const Json& j) {
  if (!j.is_array()) schema("kappa", "expected an array of scalars");
  Kappa<F> k;
  for (std::size_t i = 0; i < j.size(); ++i) k.push_back(scalar_from_json(K, j[i], "kappa[" + std::to_string(i) + "]"));
  return k;
}

template <ExactField F>
Json alpha_to_json(const ShiftData<F>& a) {
  Json im = Json::array();
  for (const auto& e : a.images()) im.push_back(element_to_json(e));
  return Json{{"basis_order", basis_order_json(*a.algebra())}, {"images", im}};
}

template <ExactField F>
ShiftData<F> alpha_from_json(const AlgebraPtr<F>& alg, const Json& j) {
  if (!j.is_object() || !j.contains("images")) schema("alpha", "expected {\"basis_order\", \"images\"}");
  const auto& im = j["images"];
  std::vector<Element<F>> images(alg->dim(), Element<F>(alg));
  if (im.is_array()) {
    std::vector<std::size_t> pos(alg->dim());
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    if (j.contains("basis_order")) pos = read_basis_order(*alg, j["basis_order"], "basis_order");
    if (im.size() != alg->dim()) schema("images", "expected " + std::to_string(alg->dim()) + " images");
    for (std::size_t i = 0; i < im.size(); ++i)
      images[pos[i]] = element_from_json(alg, im[i], "images[" + std::to_string(i) + "]");
  } else if (im.is_object()) {
    for (const auto& [key, val] : im.items())
      images[alg->index(parse_pair_key(alg->poset(), key, "images." + key))] =
          element_from_json(alg, val, "images." + key);
  } else {
    schema("images", "expected an array or an object");
  }
  return ShiftData<F>(alg, std::move(images));
}

template <ExactField F>
Json decomposition_to_json(const Decomposition<F>& d) {
  const auto& alg = *d.alpha.algebra();
  const auto& P = alg.poset();
  return Json{{"alpha", alpha_to_json(d.alpha)},
              {"theta", theta_to_json(P, d.theta)},
              {"sigma", pairmap_to_json(alg.field(), P, d.sigma)},
              {"c", pairmap_to_json(alg.field(), P, d.c)},
              {"kappa", kappa_to_json(alg.field(), d.kappa)}};
}

template <ExactField F>
Decomposition<F> decomposition_from_json(const AlgebraPtr<F>& alg, const Json& j) {
  for (const char* k : {"alpha", "theta", "sigma", "c", "kappa"})
    if (!j.contains(k)) schema(k, "missing from decomposition bundle");
  const auto& P = alg->poset();
  return {alpha_from_json(alg, j["alpha"]), theta_from_json(P, j["theta"]),
          pairmap_from_json(alg->field(), P, j["sigma"], "sigma"), pairmap_from_json(alg->field(), P, j["c"], "c"),
          kappa_from_json(alg->field(), j["kappa"])};
}

inline Json walk_to_json(const Poset& P, const Walk& w) {
  Json j = Json::array();
  for (auto v : w.vertices) j.push_back(label_json(P, v));
  return j;
}

}  // namespace incalg::io
