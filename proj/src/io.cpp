#include "feyncomb/io.hpp"

#include <fstream>
#include <sstream>

#include "feyncomb/errors.hpp"

namespace feyncomb {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError("missing field '" + where + key + "'");
  return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw InputError("field '" + where + key + "' must be a string");
  return v.get<std::string>();
}

LegDirection parse_dir(const std::string& s, const std::string& where) {
  if (s == "in") return LegDirection::In;
  if (s == "out") return LegDirection::Out;
  throw InputError("field '" + where + "dir' must be \"in\" or \"out\"");
}

Rational parse_component(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("field '" + where + "' must be an integer or a \"p/q\" string");
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

Fixture parse_fixture(const json& j) {
  if (!j.is_object()) throw InputError("fixture must be a JSON object");
  const std::string type = j.contains("type") ? string_field(j, "type", "") : "graph";
  if (type != "graph" && type != "ribbon") throw InputError("field 'type' must be \"graph\" or \"ribbon\"");

  Graph g;
  const json& vs = field(j, "vertices", "");
  if (!vs.is_array()) throw InputError("field 'vertices' must be an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_string()) throw InputError("field 'vertices[" + std::to_string(i) + "]' must be a string");
    g.add_vertex(vs[i].get<std::string>());
  }
  const json& es = j.contains("edges") ? j.at("edges") : json::array();
  if (!es.is_array()) throw InputError("field 'edges' must be an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "].";
    g.add_edge(string_field(es[i], "id", where), string_field(es[i], "tail", where),
               string_field(es[i], "head", where));
  }
  const json& ls = j.contains("external") ? j.at("external") : json::array();
  if (!ls.is_array()) throw InputError("field 'external' must be an array");
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const std::string where = "external[" + std::to_string(i) + "].";
    const std::string dir = ls[i].contains("dir") ? string_field(ls[i], "dir", where) : "in";
    g.add_leg(string_field(ls[i], "id", where), string_field(ls[i], "vertex", where), parse_dir(dir, where));
  }

  Fixture f;
  f.is_ribbon = type == "ribbon";
  if (!f.is_ribbon) {
    if (j.contains("rotation")) throw InputError("field 'rotation' is only allowed when type is \"ribbon\"");
    f.graph = with_default_rotation(g);
    return f;
  }
  const json& rot = field(j, "rotation", "");
  if (!rot.is_object()) throw InputError("field 'rotation' must be an object");
  Rotation r(g.num_vertices());
  const RibbonGraph names = with_default_rotation(g);
  for (const auto& [vid, darts] : rot.items()) {
    const std::size_t v = g.vertex_index(vid);
    if (!darts.is_array()) throw InputError("field 'rotation." + vid + "' must be an array");
    for (const auto& d : darts) {
      if (!d.is_string()) throw InputError("field 'rotation." + vid + "' must list half-edge names");
      r[v].push_back(names.parse_dart(d.get<std::string>()));
    }
  }
  f.graph = RibbonGraph(g, std::move(r));
  return f;
}

Fixture load_fixture(const std::string& path) { return parse_fixture(read_json_file(path)); }

json fixture_to_json(const Fixture& f) {
  const Graph& g = f.graph.graph();
  json j;
  j["type"] = f.is_ribbon ? "ribbon" : "graph";
  j["vertices"] = g.vertices();
  j["edges"] = json::array();
  for (const auto& e : g.edges()) {
    j["edges"].push_back({{"id", e.id}, {"tail", g.vertices()[e.tail]}, {"head", g.vertices()[e.head]}});
  }
  j["external"] = json::array();
  for (const auto& l : g.legs()) {
    j["external"].push_back({{"id", l.id}, {"vertex", g.vertices()[l.vertex]}, {"dir", l.dir == LegDirection::In ? "in" : "out"}});
  }
  if (f.is_ribbon) {
    j["rotation"] = json::object();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      json darts = json::array();
      for (const auto& d : f.graph.rotation()[v]) darts.push_back(f.graph.dart_name(d));
      j["rotation"][g.vertices()[v]] = darts;
    }
  }
  return j;
}

ExternalAssignment parse_momenta(const json& j) {
  if (!j.is_object()) throw InputError("momenta must be a JSON object keyed by leg id");
  ExternalAssignment ext;
  for (const auto& [id, entry] : j.items()) {
    const std::string where = id + ".";
    const json& p = field(entry, "p", where);
    if (!p.is_array() || p.size() != 4) throw InputError("field '" + where + "p' must be an array of 4 components");
    ExternalMomentum m;
    for (std::size_t i = 0; i < 4; ++i) m.p.c[i] = parse_component(p[i], where + "p[" + std::to_string(i) + "]");
    const std::string dir = entry.contains("dir") ? string_field(entry, "dir", where) : "in";
    m.sign = parse_dir(dir, where) == LegDirection::In ? 1 : -1;
    ext.emplace(id, m);
  }
  return ext;
}

ExternalAssignment load_momenta(const std::string& path) { return parse_momenta(read_json_file(path)); }

json poly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    json m = json::object();
    for (const auto& [v, e] : mono.factors()) m[v] = e;
    terms.push_back({{"coeff", rational_string(coeff)}, {"monomial", m}});
  }
  return terms;
}

}  // namespace feyncomb
