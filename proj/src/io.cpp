#include "qcompose/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcompose/error.hpp"

namespace qcompose {

namespace {

using nlohmann::json;

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

// Field access with type errors reported as ParseError.
template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

std::size_t to_index(const json& value, const char* what) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw Error(ErrorKind::ParseError, std::string(what) + " must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

}  // namespace

WeightedGraph parse_graph(std::string_view json_text) {
  const json doc = parse_text(json_text);
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "graph must be a JSON object");
  const std::size_t n = to_index(doc.contains("n") ? doc.at("n") : json(), "n");
  std::vector<Edge> edges;
  const json list = doc.contains("edges") ? doc.at("edges") : json::array();
  if (!list.is_array()) throw Error(ErrorKind::ParseError, "edges must be an array");
  for (const json& e : list) {
    if (!e.is_array() || e.size() != 3 || !e[2].is_number()) {
      throw Error(ErrorKind::ParseError, "each edge must be [u, v, weight]");
    }
    edges.push_back(Edge{to_index(e[0], "edge endpoint"), to_index(e[1], "edge endpoint"),
                         e[2].get<double>()});
  }
  std::map<Vertex, double> boundary;
  if (doc.contains("boundary")) {
    const json& b = doc.at("boundary");
    if (!b.is_object()) throw Error(ErrorKind::ParseError, "boundary must be an object");
    for (const auto& [key, value] : b.items()) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != key.size() || !value.is_number()) {
        throw Error(ErrorKind::ParseError, "boundary entries must map vertex -> weight");
      }
      boundary[v] = value.get<double>();
    }
  }
  return WeightedGraph(n, std::move(edges), std::move(boundary));
}

std::string graph_to_json(const WeightedGraph& g) {
  json doc;
  doc["n"] = g.vertex_count();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(json::array({e.u, e.v, e.weight}));
  doc["edges"] = std::move(edges);
  json boundary = json::object();
  for (const auto& [v, w] : g.boundary()) boundary[std::to_string(v)] = w;
  doc["boundary"] = std::move(boundary);
  return doc.dump();
}

CostProfile parse_profile(std::string_view json_text) {
  const json doc = parse_text(json_text);
  CostProfile profile;
  profile.subroutine_times = field<std::vector<double>>(doc, "subroutine_times");
  profile.extra_ops = doc.contains("L") ? field<double>(doc, "L") : 0.0;
  profile.weights = field<std::vector<std::vector<double>>>(doc, "weights");
  if (doc.contains("Q")) {
    const std::size_t q = to_index(doc.at("Q"), "Q");
    if (q != profile.weights.size()) {
      throw Error(ErrorKind::InvalidProfile, "Q does not match the number of weight rows");
    }
  }
  validate_profile(profile);
  return profile;
}

std::string profile_to_json(const CostProfile& profile) {
  json doc;
  doc["Q"] = profile.calls();
  doc["subroutine_times"] = profile.subroutine_times;
  doc["L"] = profile.extra_ops;
  doc["weights"] = profile.weights;
  return doc.dump();
}

ComposedInstance parse_instance(std::string_view json_text) {
  const json doc = parse_text(json_text);
  const std::size_t m = to_index(doc.contains("m") ? doc.at("m") : json(), "m");
  ComposedInstance inst;
  for (const std::string& hex : field<std::vector<std::string>>(doc, "blocks")) {
    inst.blocks.push_back(HInput::split(BitString::from_hex(hex, 2 * m)));
  }
  validate_composed(inst);
  return inst;
}

std::string instance_to_json(const ComposedInstance& inst) {
  json doc;
  doc["m"] = inst.inner_length();
  json blocks = json::array();
  for (const HInput& b : inst.blocks) blocks.push_back(b.joined().to_hex());
  doc["blocks"] = std::move(blocks);
  return doc.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qcompose
