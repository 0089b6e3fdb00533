#pragma once

#include <charconv>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "mbqc/open_graph.hpp"

namespace mbqc {

enum class GeometryError {
  none,
  bad_json,
  missing_field,
  bad_field_type,
  bad_vertex,
  duplicate_vertex,
  bad_edge,
  unknown_edge_vertex,
  self_loop,
  duplicate_edge,
  unknown_input,
  duplicate_input,
  unknown_output,
  duplicate_output,
  bad_angle,
  unknown_angle_vertex,
  angle_on_output,
  missing_angle,
};

inline std::string_view to_string(GeometryError error) {
  switch (error) {
    case GeometryError::none: return "none";
    case GeometryError::bad_json: return "bad_json";
    case GeometryError::missing_field: return "missing_field";
    case GeometryError::bad_field_type: return "bad_field_type";
    case GeometryError::bad_vertex: return "bad_vertex";
    case GeometryError::duplicate_vertex: return "duplicate_vertex";
    case GeometryError::bad_edge: return "bad_edge";
    case GeometryError::unknown_edge_vertex: return "unknown_edge_vertex";
    case GeometryError::self_loop: return "self_loop";
    case GeometryError::duplicate_edge: return "duplicate_edge";
    case GeometryError::unknown_input: return "unknown_input";
    case GeometryError::duplicate_input: return "duplicate_input";
    case GeometryError::unknown_output: return "unknown_output";
    case GeometryError::duplicate_output: return "duplicate_output";
    case GeometryError::bad_angle: return "bad_angle";
    case GeometryError::unknown_angle_vertex: return "unknown_angle_vertex";
    case GeometryError::angle_on_output: return "angle_on_output";
    case GeometryError::missing_angle: return "missing_angle";
  }
  return "unknown";
}

struct ParseResult {
  std::optional<OpenGraph> graph;
  GeometryError error = GeometryError::none;
  std::string message;

  bool ok() const { return graph.has_value(); }
};

namespace detail {

inline ParseResult parse_failure(GeometryError error, std::string message) {
  return ParseResult{std::nullopt, error, std::move(message)};
}

inline std::optional<QubitId> to_qubit_id(const nlohmann::json& value) {
  if (!value.is_number_unsigned()) return std::nullopt;
  const auto raw = value.get<std::uint64_t>();
  if (raw > 0xffffffffull) return std::nullopt;
  return static_cast<QubitId>(raw);
}

inline ParseResult parse_id_list(const nlohmann::json& doc, const char* field,
                                 GeometryError bad, GeometryError dup,
                                 std::vector<QubitId>& out) {
  for (const auto& entry : doc.at(field)) {
    const auto id = to_qubit_id(entry);
    if (!id) {
      return parse_failure(bad, std::string(field) +
                                    " entries must be unsigned integers");
    }
    out.push_back(*id);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    return parse_failure(dup, std::string("duplicate entry in ") + field);
  }
  return {};
}

}  // namespace detail

// Accepted document shape:
//   {"vertices": [1, 2], "edges": [[1, 2]], "inputs": [1], "outputs": [2],
//    "angles": {"1": "1/4"}}
// Angles are rational multiples of pi, one per non-output vertex.
inline ParseResult parse_geometry(std::string_view text) {
  using detail::parse_failure;

  const nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    return parse_failure(GeometryError::bad_json, "input is not valid JSON");
  }
  if (!doc.is_object()) {
    return parse_failure(GeometryError::bad_json,
                         "top-level value must be an object");
  }
  for (const char* field : {"vertices", "edges", "inputs", "outputs"}) {
    if (!doc.contains(field)) {
      return parse_failure(GeometryError::missing_field,
                           std::string("missing field: ") + field);
    }
    if (!doc.at(field).is_array()) {
      return parse_failure(GeometryError::bad_field_type,
                           std::string(field) + " must be an array");
    }
  }
  if (!doc.contains("angles")) {
    return parse_failure(GeometryError::missing_field, "missing field: angles");
  }
  if (!doc.at("angles").is_object()) {
    return parse_failure(GeometryError::bad_field_type,
                         "angles must be an object");
  }

  OpenGraph graph;
  if (auto r = detail::parse_id_list(doc, "vertices", GeometryError::bad_vertex,
                                     GeometryError::duplicate_vertex,
                                     graph.vertices);
      r.error != GeometryError::none) {
    return r;
  }

  std::set<std::pair<QubitId, QubitId>> seen_edges;
  for (const auto& entry : doc.at("edges")) {
    if (!entry.is_array() || entry.size() != 2) {
      return parse_failure(GeometryError::bad_edge,
                           "edges must be [u, v] pairs");
    }
    const auto u = detail::to_qubit_id(entry.at(0));
    const auto v = detail::to_qubit_id(entry.at(1));
    if (!u || !v) {
      return parse_failure(GeometryError::bad_edge,
                           "edge endpoints must be unsigned integers");
    }
    if (!graph.has_vertex(*u) || !graph.has_vertex(*v)) {
      return parse_failure(GeometryError::unknown_edge_vertex,
                           "edge references a vertex not in vertices");
    }
    if (*u == *v) {
      return parse_failure(GeometryError::self_loop,
                           "edge endpoints must differ");
    }
    const auto edge = std::minmax(*u, *v);
    if (!seen_edges.insert(edge).second) {
      return parse_failure(GeometryError::duplicate_edge,
                           "duplicate edge " + std::to_string(edge.first) +
                               "-" + std::to_string(edge.second));
    }
  }
  graph.edges.assign(seen_edges.begin(), seen_edges.end());

  if (auto r = detail::parse_id_list(doc, "inputs", GeometryError::bad_vertex,
                                     GeometryError::duplicate_input,
                                     graph.inputs);
      r.error != GeometryError::none) {
    return r;
  }
  for (QubitId v : graph.inputs) {
    if (!graph.has_vertex(v)) {
      return parse_failure(GeometryError::unknown_input,
                           "input " + std::to_string(v) + " is not a vertex");
    }
  }
  if (auto r = detail::parse_id_list(doc, "outputs", GeometryError::bad_vertex,
                                     GeometryError::duplicate_output,
                                     graph.outputs);
      r.error != GeometryError::none) {
    return r;
  }
  for (QubitId v : graph.outputs) {
    if (!graph.has_vertex(v)) {
      return parse_failure(GeometryError::unknown_output,
                           "output " + std::to_string(v) + " is not a vertex");
    }
  }

  for (const auto& [key, value] : doc.at("angles").items()) {
    QubitId id = 0;
    const char* begin = key.data();
    const char* end = key.data() + key.size();
    auto [ptr, ec] = std::from_chars(begin, end, id);
    if (ec != std::errc{} || ptr != end) {
      return parse_failure(GeometryError::bad_angle,
                           "angle key is not a qubit id: " + key);
    }
    if (!graph.has_vertex(id)) {
      return parse_failure(GeometryError::unknown_angle_vertex,
                           "angle for unknown vertex " + key);
    }
    if (graph.is_output(id)) {
      return parse_failure(GeometryError::angle_on_output,
                           "output " + key + " must not carry an angle");
    }
    if (!value.is_string()) {
      return parse_failure(GeometryError::bad_angle,
                           "angle for " + key + " must be a string");
    }
    const auto angle = Angle::parse(value.get<std::string>());
    if (!angle) {
      return parse_failure(GeometryError::bad_angle,
                           "angle for " + key + " is not a rational: " +
                               value.get<std::string>());
    }
    graph.angles.emplace(id, *angle);
  }
  for (QubitId v : graph.measured_vertices()) {
    if (!graph.angles.contains(v)) {
      return parse_failure(GeometryError::missing_angle,
                           "non-output " + std::to_string(v) +
                               " is missing an angle");
    }
  }

  return ParseResult{std::move(graph), GeometryError::none, ""};
}

inline std::string serialize_geometry(const OpenGraph& graph) {
  nlohmann::ordered_json doc;
  doc["vertices"] = graph.vertices;
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : graph.edges) edges.push_back({u, v});
  doc["inputs"] = graph.inputs;
  doc["outputs"] = graph.outputs;
  auto& angles = doc["angles"] = nlohmann::ordered_json::object();
  for (const auto& [id, angle] : graph.angles) {
    angles[std::to_string(id)] = angle.to_string();
  }
  return doc.dump(2);
}

}  // namespace mbqc
