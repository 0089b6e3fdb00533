#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "mbqc/gf2.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc {

// Causal flow: each measured qubit i has a single correcting qubit f(i).
// `layer` is a measurement schedule consistent with the flow conditions
// (0 = measured first; outputs share the final layer).
struct FlowMap {
  std::map<QubitId, QubitId> f;
  std::map<QubitId, int> layer;
};

// Generalized flow: each measured qubit i has a correcting set g(i).
// `layer` is the earliest schedule of the correction dependencies (used for
// execution order); `delay` is the latest legal schedule (the peel order the
// finder discovered, with outputs last).
struct GflowMap {
  std::map<QubitId, std::vector<QubitId>> g;
  std::map<QubitId, int> layer;
  std::map<QubitId, int> delay;
};

enum class GeometryClass { has_flow, gflow_only, no_determinism };

inline std::string_view to_string(GeometryClass kind) {
  switch (kind) {
    case GeometryClass::has_flow: return "flow";
    case GeometryClass::gflow_only: return "gflow";
    case GeometryClass::no_determinism: return "none";
  }
  return "unknown";
}

// Preimage lists: which qubits name `v` in their correcting set.
inline std::map<QubitId, std::vector<QubitId>> invert_fg(const FlowMap& flow) {
  std::map<QubitId, std::vector<QubitId>> inverse;
  for (auto [i, v] : flow.f) inverse[v].push_back(i);
  for (auto& [v, list] : inverse) std::sort(list.begin(), list.end());
  return inverse;
}

inline std::map<QubitId, std::vector<QubitId>> invert_fg(
    const GflowMap& gflow) {
  std::map<QubitId, std::vector<QubitId>> inverse;
  for (const auto& [i, set] : gflow.g) {
    for (QubitId v : set) inverse[v].push_back(i);
  }
  for (auto& [v, list] : inverse) std::sort(list.begin(), list.end());
  return inverse;
}

inline bool verify_flow(const OpenGraph& graph, const FlowMap& flow) {
  const auto adj = graph.adjacency();
  const auto layer_of = [&](QubitId v) -> std::optional<int> {
    auto it = flow.layer.find(v);
    if (it == flow.layer.end()) return std::nullopt;
    return it->second;
  };

  std::set<QubitId> used;
  for (QubitId i : graph.measured_vertices()) {
    const auto it = flow.f.find(i);
    if (it == flow.f.end()) return false;
    const QubitId v = it->second;
    if (!graph.has_vertex(v) || graph.is_input(v)) return false;
    if (!used.insert(v).second) return false;  // not injective
    const auto& nv = adj.at(v);
    if (!std::binary_search(nv.begin(), nv.end(), i)) return false;

    const auto li = layer_of(i);
    if (!li) return false;
    const auto lv = layer_of(v);
    if (!lv || *lv <= *li) return false;
    for (QubitId j : nv) {
      if (j == i) continue;
      const auto lj = layer_of(j);
      if (!lj || *lj <= *li) return false;
    }
  }
  return true;
}

inline bool verify_gflow(const OpenGraph& graph, const GflowMap& gflow) {
  const auto layer_of = [&](QubitId v) -> std::optional<int> {
    auto it = gflow.layer.find(v);
    if (it == gflow.layer.end()) return std::nullopt;
    return it->second;
  };

  for (QubitId i : graph.measured_vertices()) {
    const auto it = gflow.g.find(i);
    if (it == gflow.g.end()) return false;
    const auto& set = it->second;
    if (set.empty()) return false;
    const auto li = layer_of(i);
    if (!li) return false;

    for (QubitId j : set) {
      if (!graph.has_vertex(j) || graph.is_input(j) || j == i) return false;
      const auto lj = layer_of(j);
      if (!lj || *lj <= *li) return false;
    }
    const auto odd = odd_neighborhood(graph, set);
    if (!std::binary_search(odd.begin(), odd.end(), i)) return false;
    for (QubitId j : odd) {
      if (j == i) continue;
      const auto lj = layer_of(j);
      if (!lj || *lj <= *li) return false;
    }
  }
  return true;
}

// Maximally delayed peel: walk backwards from the outputs, repeatedly picking
// every qubit some unused non-input corrector can fix in one step.
inline std::optional<FlowMap> find_flow(const OpenGraph& graph) {
  const auto adj = graph.adjacency();
  std::set<QubitId> unprocessed(graph.vertices.begin(), graph.vertices.end());
  for (QubitId o : graph.outputs) unprocessed.erase(o);

  std::set<QubitId> correctors;  // processed, non-input, not yet used
  for (QubitId o : graph.outputs) {
    if (!graph.is_input(o)) correctors.insert(o);
  }

  FlowMap flow;
  std::vector<std::vector<QubitId>> rounds;
  while (!unprocessed.empty()) {
    std::map<QubitId, QubitId> claimed;  // u -> corrector
    for (QubitId v : correctors) {
      QubitId u = 0;
      int count = 0;
      for (QubitId w : adj.at(v)) {
        if (unprocessed.contains(w)) {
          u = w;
          if (++count > 1) break;
        }
      }
      if (count == 1) claimed.emplace(u, v);
    }
    if (claimed.empty()) return std::nullopt;

    rounds.emplace_back();
    for (auto [u, v] : claimed) {
      flow.f.emplace(u, v);
      correctors.erase(v);
      unprocessed.erase(u);
      rounds.back().push_back(u);
    }
    for (QubitId u : rounds.back()) {
      if (!graph.is_input(u)) correctors.insert(u);
    }
  }

  const int num_rounds = static_cast<int>(rounds.size());
  for (int r = 0; r < num_rounds; ++r) {
    for (QubitId u : rounds[r]) flow.layer[u] = num_rounds - 1 - r;
  }
  for (QubitId o : graph.outputs) flow.layer[o] = num_rounds;
  return flow;
}

namespace detail {

// Correcting set for `u`: K inside `correctors` with Odd(K) hitting no
// unprocessed vertex except u. Columns are eliminated in ascending vertex
// order with free variables zero.
inline std::optional<std::vector<QubitId>> solve_correcting_set(
    const std::map<QubitId, std::vector<QubitId>>& adj,
    const std::vector<QubitId>& correctors,
    const std::set<QubitId>& unprocessed, QubitId u) {
  Gf2System system(correctors.size());
  for (QubitId w : unprocessed) {
    std::vector<std::size_t> cols;
    const auto& nw = adj.at(w);
    for (std::size_t c = 0; c < correctors.size(); ++c) {
      if (std::binary_search(nw.begin(), nw.end(), correctors[c])) {
        cols.push_back(c);
      }
    }
    system.add_row(cols, w == u);
  }
  const auto solution = system.solve();
  if (!solution) return std::nullopt;
  std::vector<QubitId> set;
  for (std::size_t c = 0; c < correctors.size(); ++c) {
    if ((*solution)[c]) set.push_back(correctors[c]);
  }
  return set;
}

}  // namespace detail

// Maximally delayed gflow via the backward peel, followed by a focusing
// sweep so that Odd(g(i)) meets no non-output but i itself. `layer` is then
// the earliest schedule of the focused correction DAG.
inline std::optional<GflowMap> find_gflow(const OpenGraph& graph) {
  const auto adj = graph.adjacency();
  std::set<QubitId> unprocessed(graph.vertices.begin(), graph.vertices.end());
  for (QubitId o : graph.outputs) unprocessed.erase(o);

  std::set<QubitId> processed_non_inputs;
  for (QubitId o : graph.outputs) {
    if (!graph.is_input(o)) processed_non_inputs.insert(o);
  }

  GflowMap gflow;
  std::vector<std::vector<QubitId>> rounds;
  while (!unprocessed.empty()) {
    const std::vector<QubitId> correctors(processed_non_inputs.begin(),
                                          processed_non_inputs.end());
    std::vector<std::pair<QubitId, std::vector<QubitId>>> found;
    for (QubitId u : unprocessed) {
      if (auto set =
              detail::solve_correcting_set(adj, correctors, unprocessed, u)) {
        found.emplace_back(u, std::move(*set));
      }
    }
    if (found.empty()) return std::nullopt;

    rounds.emplace_back();
    for (auto& [u, set] : found) {
      gflow.g.emplace(u, std::move(set));
      unprocessed.erase(u);
      rounds.back().push_back(u);
    }
    for (QubitId u : rounds.back()) {
      if (!graph.is_input(u)) processed_non_inputs.insert(u);
    }
  }

  const int num_rounds = static_cast<int>(rounds.size());
  for (int r = 0; r < num_rounds; ++r) {
    for (QubitId u : rounds[r]) gflow.delay[u] = num_rounds - 1 - r;
  }
  for (QubitId o : graph.outputs) gflow.delay[o] = num_rounds;

  // Focusing: rounds were discovered latest-first, so every problem vertex
  // is already focused when its set is folded in.
  for (const auto& round : rounds) {
    for (QubitId i : round) {
      auto& set = gflow.g.at(i);
      std::set<QubitId> current(set.begin(), set.end());
      while (true) {
        std::vector<QubitId> members(current.begin(), current.end());
        QubitId problem = 0;
        bool found_problem = false;
        for (QubitId j : odd_neighborhood(graph, members)) {
          if (j != i && !graph.is_output(j)) {
            problem = j;
            found_problem = true;
            break;
          }
        }
        if (!found_problem) break;
        for (QubitId m : gflow.g.at(problem)) {
          if (!current.erase(m)) current.insert(m);
        }
      }
      set.assign(current.begin(), current.end());
    }
  }

  // Earliest schedule over the focused correction dependencies.
  const auto inverse = invert_fg(gflow);
  std::vector<QubitId> order = graph.measured_vertices();
  std::sort(order.begin(), order.end(), [&](QubitId a, QubitId b) {
    return gflow.delay.at(a) < gflow.delay.at(b);
  });
  int max_layer = -1;
  for (QubitId v : order) {
    int layer = 0;
    if (auto it = inverse.find(v); it != inverse.end()) {
      for (QubitId pred : it->second) layer = std::max(layer, gflow.layer.at(pred) + 1);
    }
    gflow.layer[v] = layer;
    max_layer = std::max(max_layer, layer);
  }
  for (QubitId o : graph.outputs) gflow.layer[o] = max_layer + 1;
  return gflow;
}

// Overall measurement depth implied by a gflow schedule (entangling
// preparation plus one slot per layer, outputs included).
inline int gflow_depth(const GflowMap& gflow) {
  int max_layer = 0;
  for (const auto& [v, layer] : gflow.layer) max_layer = std::max(max_layer, layer);
  return max_layer + 1;
}

struct Classification {
  GeometryClass kind = GeometryClass::no_determinism;
  std::optional<FlowMap> flow;
  std::optional<GflowMap> gflow;

  // Layer map that fixes the processing order of measured qubits.
  const std::map<QubitId, int>& order_layers() const {
    if (flow) return flow->layer;
    return gflow->layer;
  }
};

inline Classification classify_geometry(const OpenGraph& graph) {
  Classification result;
  result.flow = find_flow(graph);
  result.gflow = find_gflow(graph);
  if (result.flow) {
    result.kind = GeometryClass::has_flow;
  } else if (result.gflow) {
    result.kind = GeometryClass::gflow_only;
  } else {
    result.kind = GeometryClass::no_determinism;
  }
  return result;
}

}  // namespace mbqc
