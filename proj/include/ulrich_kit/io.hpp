#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ulrich_kit/bridgeland.hpp"
#include "ulrich_kit/complexes.hpp"
#include "ulrich_kit/grammar.hpp"
#include "ulrich_kit/num_class.hpp"
#include "ulrich_kit/table.hpp"
#include "ulrich_kit/ulrich.hpp"

namespace ulrich_kit {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::Parse, "rational must be an integer or a \"p/q\" string");
}

inline Json to_json(const Window& w) { return Json::array({w.lo, w.hi}); }

inline Json to_json(const CohomologyTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows()) rows.push_back({{"i", row.i}, {"t", row.t}, {"h", row.h}});
  return {{"window", to_json(table.window())}, {"rows", rows}};
}

inline CohomologyTable table_from_json(const Json& j) {
  const auto& w = j.at("window");
  CohomologyTable table(Window{w.at(0).get<int>(), w.at(1).get<int>()});
  for (const auto& row : j.at("rows")) {
    const auto h = row.at("h").get<std::int64_t>();
    if (h < 0) throw Error(ErrorKind::Parse, "negative cohomology dimension");
    table.set(row.at("i").get<int>(), row.at("t").get<int>(), h);
  }
  return table;
}

/// {"r", "e1", ..., "e<dim>"} on Picard-rank-one lattices; {"r", "c": [[c_jk]]} on product lattices.
inline Json to_json(const NumClass& c) {
  Json out;
  out["r"] = to_json(c.r());
  if (c.product_lattice()) {
    Json grid = Json::array();
    for (int j = 0; j < c.rows(); ++j) {
      Json row = Json::array();
      for (int k = 0; k < c.cols(); ++k) row.push_back(to_json(c.at(j, k)));
      grid.push_back(row);
    }
    out["c"] = grid;
  } else {
    for (int j = 1; j < c.rows(); ++j) out["e" + std::to_string(j)] = to_json(c.at(j));
  }
  return out;
}

inline NumClass num_class_from_json(const Json& j, const VarietyModel& model) {
  NumClass c(model);
  if (c.product_lattice()) {
    const auto& grid = j.at("c");
    for (int a = 0; a < c.rows(); ++a)
      for (int b = 0; b < c.cols(); ++b) c.at(a, b) = rational_from_json(grid.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)));
    return c;
  }
  c.at(0) = rational_from_json(j.at("r"));
  for (int k = 1; k < c.rows(); ++k) {
    const std::string key = "e" + std::to_string(k);
    if (j.contains(key)) c.at(k) = rational_from_json(j.at(key));
  }
  return c;
}

inline Json to_json(const ChargeValue& z) { return {{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

inline Json to_json(const Witness& w) { return {{"i", w.i}, {"t", w.t}, {"h", w.h}}; }

inline Json to_json(const UlrichVerdict& v) {
  Json criteria = Json::array();
  for (const auto& c : v.criteria) {
    Json entry{{"name", c.name}, {"twists", c.twists}, {"witness", c.witness ? to_json(*c.witness) : Json()}};
    if (c.complex_degree) entry["degree"] = *c.complex_degree;
    entry["note"] = c.note;
    criteria.push_back(entry);
  }
  return {{"passed", v.passed}, {"mode", mode_name(v.mode)}, {"criteria", criteria}};
}

inline SheafDescriptor sheaf_from_json(const Json& j, const VarietyModel& model) {
  if (j.is_string()) return parse_descriptor(j.get<std::string>(), model);
  if (!j.is_object() || !j.contains("abstract")) throw Error(ErrorKind::Parse, "sheaf must be a descriptor string or {\"abstract\": {...}}");
  const Json& a = j.at("abstract");
  AbstractSheaf out;
  out.rank = a.at("rank").get<int>();
  if (a.contains("class")) out.num_class = num_class_from_json(a.at("class"), model);
  if (a.contains("table")) out.table = table_from_json(a.at("table"));
  out.label = a.value("label", std::string());
  SheafDescriptor desc = out;
  validate(desc, model);
  return desc;
}

inline Json sheaf_to_json(const SheafDescriptor& desc) {
  if (!desc.is<AbstractSheaf>()) return to_string(desc);
  const auto& a = desc.as<AbstractSheaf>();
  Json body{{"rank", a.rank}};
  if (a.num_class) body["class"] = to_json(*a.num_class);
  if (a.table) body["table"] = to_json(*a.table);
  if (!a.label.empty()) body["label"] = a.label;
  return {{"abstract", body}};
}

/// {"variety": spec, "sheaves": {"<degree>": sheaf}, "glue": [{"from", "to", "nonzero"}]}.
inline FormalComplex object_from_json(const Json& j, const std::optional<VarietyModel>& override_model = std::nullopt) {
  const VarietyModel model = override_model ? *override_model : VarietyModel::parse(j.at("variety").get<std::string>());
  if (override_model && j.contains("variety") && !(VarietyModel::parse(j.at("variety").get<std::string>()) == *override_model))
    throw Error(ErrorKind::ModelMismatch, "object file variety differs from --variety");
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [key, value] : j.at("sheaves").items()) {
    int degree = 0;
    try {
      std::size_t used = 0;
      degree = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "sheaf degree keys must be integers: " + key);
    }
    sheaves.emplace(degree, sheaf_from_json(value, model));
  }
  std::vector<Glue> glue;
  if (j.contains("glue"))
    for (const auto& g : j.at("glue")) {
      const int from = g.at("from").get<int>();
      const int to = g.at("to").get<int>();
      glue.push_back(Glue{from, to, from - to + 1, g.value("nonzero", true)});
    }
  return FormalComplex(model, std::move(sheaves), std::move(glue));
}

inline Json to_json(const FormalComplex& e) {
  Json sheaves = Json::object();
  for (const auto& [deg, s] : e.sheaves()) sheaves[std::to_string(deg)] = sheaf_to_json(s);
  Json glue = Json::array();
  for (const auto& g : e.glue()) glue.push_back({{"from", g.from_degree}, {"to", g.to_degree}, {"nonzero", g.nonzero}});
  return {{"variety", e.model().spec()}, {"sheaves", sheaves}, {"glue", glue}};
}

inline FormalComplex load_object(const std::string& path, const std::optional<VarietyModel>& override_model = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, path + ": " + ex.what());
  }
  return object_from_json(j, override_model);
}

}  // namespace ulrich_kit
