#include "fmlinv/io.hpp"

#include <fstream>
#include <sstream>

namespace fmlinv {

namespace {

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key, "missing field");
  return *it;
}

const Json& require_array(const Json& value, const std::string& path) {
  if (!value.is_array()) throw ParseError(path, "expected an array");
  return value;
}

long parse_integer(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) throw ParseError(path, "expected an integer");
  return value.get<long>();
}

Scalar parse_scalar(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Scalar(value.get<long>());
  if (value.is_string()) {
    if (auto q = parse_rational(value.get<std::string>())) return *q;
    throw ParseError(path, "not a rational number: \"" + value.get<std::string>() + "\"");
  }
  throw ParseError(path, "expected a rational string or an integer");
}

Vector parse_vector(const Json& value, const std::string& path, std::size_t n) {
  require_array(value, path);
  if (value.size() != n)
    throw ParseError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(value.size()));
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(parse_scalar(value[i], index_path(path, i)));
  return v;
}

std::vector<Vector> parse_vectors(const Json& value, const std::string& path, std::size_t n) {
  require_array(value, path);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(parse_vector(value[i], index_path(path, i), n));
  return out;
}

Matrix parse_matrix(const Json& value, const std::string& path, std::size_t n) {
  require_array(value, path);
  if (value.size() != n) throw ParseError(path, "expected " + std::to_string(n) + " rows");
  return Matrix::from_rows(parse_vectors(value, path, n), n);
}

FirstOrderFamily parse_family(const Json& value, const std::string& path) {
  const std::string chars_path = path + ".characters";
  const Json& chars = require_array(require(value, path, "characters"), chars_path);
  FirstOrderFamily f;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const std::string p = index_path(chars_path, i);
    FirstOrderCharacter c;
    c.eps_p = parse_scalar(require(chars[i], p, "eps_p"), p + ".eps_p");
    c.eps_w = parse_scalar(require(chars[i], p, "eps_w"), p + ".eps_w");
    if (chars[i].contains("base_delta_p")) c.base_delta_p = parse_scalar(chars[i]["base_delta_p"], p + ".base_delta_p");
    if (chars[i].contains("base_weight")) c.base_weight = parse_scalar(chars[i]["base_weight"], p + ".base_weight");
    f.characters.push_back(std::move(c));
  }
  return f;
}

}  // namespace

const Flag& Workspace::refinement(const std::string& name) const {
  for (const auto& r : refinements)
    if (r.name == name) return r.flag;
  throw std::out_of_range("no refinement named \"" + name + "\"");
}

const FirstOrderFamily& Workspace::family(const std::string& name) const {
  for (const auto& [key, f] : families)
    if (key == name) return f;
  throw std::out_of_range("no family named \"" + name + "\"");
}

Workspace parse_workspace(const Json& doc) {
  Workspace w;
  const long p = parse_integer(require(doc, "$", "p"), "$.p");
  const long dim = parse_integer(require(doc, "$", "dimension"), "$.dimension");
  if (dim < 0) throw ParseError("$.dimension", "must be non-negative");
  const auto n = static_cast<std::size_t>(dim);
  w.module.p = p;
  w.module.phi = parse_matrix(require(doc, "$", "phi"), "$.phi", n);
  w.module.monodromy = parse_matrix(require(doc, "$", "monodromy"), "$.monodromy", n);

  const Json& fil = require_array(require(doc, "$", "filtration"), "$.filtration");
  std::vector<FiltrationStep> steps;
  for (std::size_t i = 0; i < fil.size(); ++i) {
    const std::string path = index_path("$.filtration", i);
    const long jump = parse_integer(require(fil[i], path, "jump"), path + ".jump");
    const auto gens = parse_vectors(require(fil[i], path, "generators"), path + ".generators", n);
    steps.push_back({jump, Subspace::span(n, gens)});
  }
  w.module.filtration = Filtration(n, std::move(steps));

  if (doc.contains("candidates")) {
    const Json& cands = require_array(doc["candidates"], "$.candidates");
    for (std::size_t i = 0; i < cands.size(); ++i)
      w.candidates.push_back(Subspace::span(n, parse_vectors(cands[i], index_path("$.candidates", i), n)));
  }

  if (doc.contains("refinements")) {
    const Json& refs = require_array(doc["refinements"], "$.refinements");
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const std::string path = index_path("$.refinements", i);
      const Json& name = require(refs[i], path, "name");
      if (!name.is_string()) throw ParseError(path + ".name", "expected a string");
      auto vectors = parse_vectors(require(refs[i], path, "flag"), path + ".flag", n);
      if (vectors.size() != n) throw ParseError(path + ".flag", "a full flag needs " + std::to_string(n) + " vectors");
      try {
        w.refinements.push_back({name.get<std::string>(), Flag(std::move(vectors))});
      } catch (const std::invalid_argument&) {
        throw ParseError(path + ".flag", "flag vectors are linearly dependent");
      }
    }
  }

  if (doc.contains("families")) {
    const Json& fams = doc["families"];
    if (!fams.is_object()) throw ParseError("$.families", "expected an object");
    for (const auto& [key, value] : fams.items()) w.families.emplace_back(key, parse_family(value, "$.families." + key));
  }
  return w;
}

Workspace load_workspace(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("$", "cannot open " + file.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_workspace(doc);
}

Json rational_json(const Scalar& value) { return to_string(value); }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Json module_json(const FilteredModule& m) {
  Json out;
  out["p"] = m.p;
  out["dimension"] = m.dim();
  out["phi"] = matrix_json(m.phi);
  out["monodromy"] = matrix_json(m.monodromy);
  Json fil = Json::array();
  for (const auto& step : m.filtration.steps()) {
    Json gens = Json::array();
    for (const auto& b : step.space.basis()) gens.push_back(vector_json(b));
    fil.push_back({{"jump", step.jump}, {"generators", gens}});
  }
  out["filtration"] = fil;
  return out;
}

Json workspace_json(const Workspace& w) {
  Json out = module_json(w.module);
  if (!w.candidates.empty()) {
    Json cands = Json::array();
    for (const auto& c : w.candidates) {
      Json gens = Json::array();
      for (const auto& b : c.basis()) gens.push_back(vector_json(b));
      cands.push_back(gens);
    }
    out["candidates"] = cands;
  }
  if (!w.refinements.empty()) {
    Json refs = Json::array();
    for (const auto& r : w.refinements) {
      Json flag = Json::array();
      for (const auto& v : r.flag.vectors()) flag.push_back(vector_json(v));
      refs.push_back({{"name", r.name}, {"flag", flag}});
    }
    out["refinements"] = refs;
  }
  if (!w.families.empty()) {
    Json fams = Json::object();
    for (const auto& [name, f] : w.families) fams[name] = family_json(f);
    out["families"] = fams;
  }
  return out;
}

Json character_json(const Character& c) {
  return {{"delta_p", rational_json(c.value_at_p)}, {"weight", rational_json(c.weight)}};
}

Json family_json(const FirstOrderFamily& f) {
  Json chars = Json::array();
  for (const auto& c : f.characters) {
    Json entry{{"eps_p", rational_json(c.eps_p)}, {"eps_w", rational_json(c.eps_w)}};
    if (c.base_delta_p) entry["base_delta_p"] = rational_json(*c.base_delta_p);
    if (c.base_weight) entry["base_weight"] = rational_json(*c.base_weight);
    chars.push_back(entry);
  }
  return {{"characters", chars}};
}

}  // namespace fmlinv
