#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "mbqc/angle.hpp"
#include "mbqc/signal.hpp"

namespace mbqc {

// Open graph "geometry": a simple graph with input/output marks and a
// measurement angle for every non-output vertex. All id lists are kept
// ascending; edges are stored with u < v in ascending lexicographic order.
struct OpenGraph {
  std::vector<QubitId> vertices;
  std::vector<std::pair<QubitId, QubitId>> edges;
  std::vector<QubitId> inputs;
  std::vector<QubitId> outputs;
  std::map<QubitId, Angle> angles;

  bool has_vertex(QubitId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
  bool is_input(QubitId v) const {
    return std::binary_search(inputs.begin(), inputs.end(), v);
  }
  bool is_output(QubitId v) const {
    return std::binary_search(outputs.begin(), outputs.end(), v);
  }

  std::vector<QubitId> measured_vertices() const {
    std::vector<QubitId> result;
    result.reserve(vertices.size() - outputs.size());
    std::set_difference(vertices.begin(), vertices.end(), outputs.begin(),
                        outputs.end(), std::back_inserter(result));
    return result;
  }

  std::map<QubitId, std::vector<QubitId>> adjacency() const {
    std::map<QubitId, std::vector<QubitId>> adj;
    for (QubitId v : vertices) adj[v];
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& [v, list] : adj) std::sort(list.begin(), list.end());
    return adj;
  }

  friend bool operator==(const OpenGraph&, const OpenGraph&) = default;
};

inline std::vector<QubitId> neighbors(const OpenGraph& graph, QubitId v) {
  std::vector<QubitId> result;
  for (auto [a, b] : graph.edges) {
    if (a == v) result.push_back(b);
    if (b == v) result.push_back(a);
  }
  std::sort(result.begin(), result.end());
  return result;
}

// Vertices adjacent to an odd number of members of `subset`.
inline std::vector<QubitId> odd_neighborhood(
    const OpenGraph& graph, const std::vector<QubitId>& subset) {
  const auto adj = graph.adjacency();
  std::vector<QubitId> odd;
  for (QubitId k : subset) {
    const auto& nk = adj.at(k);
    std::vector<QubitId> merged;
    merged.reserve(odd.size() + nk.size());
    std::set_symmetric_difference(odd.begin(), odd.end(), nk.begin(), nk.end(),
                                  std::back_inserter(merged));
    odd = std::move(merged);
  }
  return odd;
}

}  // namespace mbqc
