#pragma once

// Seeded random geometry generation. All sampling uses raw mt19937_64 output
// with explicit modulo reduction so identical seeds give identical
// geometries on every platform.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc {

enum class GeneratorKind { flow, gflow_only };

struct GeneratorOptions {
  std::size_t qubits = 8;
  std::uint64_t seed = 1;
  GeneratorKind kind = GeneratorKind::flow;
  std::size_t io_count = 0;         // flow kind: #inputs = #outputs; 0 = pick
  bool non_pauli_angles = false;    // exclude angles 0 and +-1/2
  std::size_t max_attempts = 200000;  // gflow_only rejection bound
};

namespace detail {

inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

inline Angle random_angle(std::mt19937_64& rng, bool non_pauli) {
  for (;;) {
    const auto num = static_cast<std::int64_t>(pick(rng, 17)) - 8;
    const auto den = static_cast<std::int64_t>(1 + pick(rng, 9));
    const Angle angle(num, den);
    if (non_pauli && (angle.is_pauli_x() || angle.is_pauli_y())) continue;
    return angle;
  }
}

inline void fill_angles(OpenGraph& graph, std::mt19937_64& rng,
                        bool non_pauli) {
  for (QubitId v : graph.measured_vertices()) {
    graph.angles.emplace(v, random_angle(rng, non_pauli));
  }
}

}  // namespace detail

// Uniformly random geometry: every edge with probability 1/2, input and
// output sets as independent random subsets. No determinism structure is
// guaranteed; useful for differential-testing the classifiers themselves.
inline OpenGraph random_geometry(std::size_t qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OpenGraph g;
  for (QubitId v = 1; v <= static_cast<QubitId>(qubits); ++v) {
    g.vertices.push_back(v);
  }
  for (QubitId u = 1; u <= static_cast<QubitId>(qubits); ++u) {
    for (QubitId v = u + 1; v <= static_cast<QubitId>(qubits); ++v) {
      if (rng() & 1u) g.edges.emplace_back(u, v);
    }
  }
  for (QubitId v = 1; v <= static_cast<QubitId>(qubits); ++v) {
    if (rng() & 1u) g.inputs.push_back(v);
  }
  for (QubitId v = 1; v <= static_cast<QubitId>(qubits); ++v) {
    if (rng() & 1u) g.outputs.push_back(v);
  }
  detail::fill_angles(g, rng, /*non_pauli=*/false);
  return g;
}

namespace detail {

// Parallel chains with same-depth cross edges. Chain successors form a
// causal flow whatever cross edges are added: every neighbour of a corrector
// other than the corrected qubit lies at a strictly later depth.
inline OpenGraph layered_flow_geometry(const GeneratorOptions& options,
                                       std::mt19937_64& rng) {
  const std::size_t n = options.qubits;
  if (n == 0) throw std::invalid_argument("cannot generate an empty geometry");
  std::size_t chains = options.io_count;
  if (chains == 0) {
    const std::size_t cap = std::max<std::size_t>(1, std::min<std::size_t>(n / 2, 6));
    chains = 1 + pick(rng, cap);
  }
  if (chains > n) {
    throw std::invalid_argument("more input/output rails than qubits");
  }

  OpenGraph g;
  for (QubitId v = 1; v <= static_cast<QubitId>(n); ++v) {
    g.vertices.push_back(v);
  }

  std::vector<std::vector<QubitId>> chain(chains);
  const std::size_t base = n / chains;
  std::size_t extra = n % chains;
  QubitId next = 1;
  for (std::size_t c = 0; c < chains; ++c) {
    const std::size_t length = base + (extra > 0 ? 1 : 0);
    if (extra > 0) --extra;
    for (std::size_t d = 0; d < length; ++d) chain[c].push_back(next++);
    g.inputs.push_back(chain[c].front());
    g.outputs.push_back(chain[c].back());
    for (std::size_t d = 0; d + 1 < chain[c].size(); ++d) {
      g.edges.emplace_back(chain[c][d], chain[c][d + 1]);
    }
  }
  std::sort(g.inputs.begin(), g.inputs.end());
  std::sort(g.outputs.begin(), g.outputs.end());

  if (chains >= 2) {
    const std::size_t wanted = pick(rng, n / 2 + 1);
    std::set<std::pair<QubitId, QubitId>> edge_set(g.edges.begin(),
                                                   g.edges.end());
    for (std::size_t attempt = 0; attempt < 4 * wanted + 4; ++attempt) {
      if (edge_set.size() - (n - chains) >= wanted) break;
      const std::size_t a = pick(rng, chains);
      const std::size_t b = pick(rng, chains);
      if (a == b) continue;
      const std::size_t depth_cap = std::min(chain[a].size(), chain[b].size());
      const std::size_t d = pick(rng, depth_cap);
      QubitId u = chain[a][d];
      QubitId v = chain[b][d];
      if (u > v) std::swap(u, v);
      edge_set.emplace(u, v);
    }
    g.edges.assign(edge_set.begin(), edge_set.end());
  }

  fill_angles(g, rng, options.non_pauli_angles);
  return g;
}

}  // namespace detail

// Generate a geometry of the requested kind. `flow` geometries are layered
// chain unions (|inputs| = |outputs|), verified to admit a causal flow.
// `gflow_only` geometries are rejection-sampled; none exist below five
// qubits, which is reported as a distinct error.
inline OpenGraph generate_geometry(const GeneratorOptions& options) {
  std::mt19937_64 rng(options.seed);
  switch (options.kind) {
    case GeneratorKind::flow: {
      OpenGraph g = detail::layered_flow_geometry(options, rng);
      const auto flow = find_flow(g);
      if (!flow || !verify_flow(g, *flow)) {
        throw std::logic_error("generated geometry unexpectedly lacks flow");
      }
      return g;
    }
    case GeneratorKind::gflow_only: {
      const std::size_t n = options.qubits;
      if (n < 5) {
        throw std::invalid_argument(
            "no geometry below five qubits has gflow without flow; "
            "use --qubits 5 or more");
      }
      for (std::size_t attempt = 0; attempt < options.max_attempts;
           ++attempt) {
        OpenGraph g;
        for (QubitId v = 1; v <= static_cast<QubitId>(n); ++v) {
          g.vertices.push_back(v);
        }
        for (QubitId u = 1; u <= static_cast<QubitId>(n); ++u) {
          for (QubitId v = u + 1; v <= static_cast<QubitId>(n); ++v) {
            if (rng() & 1u) g.edges.emplace_back(u, v);
          }
        }
        for (QubitId v = 1; v <= static_cast<QubitId>(n); ++v) {
          if (rng() & 1u) g.inputs.push_back(v);
        }
        for (QubitId v = 1; v <= static_cast<QubitId>(n); ++v) {
          if (rng() & 1u) g.outputs.push_back(v);
        }
        const Classification cls = classify_geometry(g);
        if (!cls.gflow || cls.flow) continue;
        detail::fill_angles(g, rng, options.non_pauli_angles);
        return g;
      }
      throw std::runtime_error(
          "gflow-only rejection sampling exhausted its attempt budget");
    }
  }
  throw std::invalid_argument("unknown generator kind");
}

}  // namespace mbqc
