#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

// Working record for one qubit. x_list collects the outcomes that flip the
// qubit's X correction, z_list the ones that flip its Z correction; `odd` is
// a parity scratch flag that is always false outside the accumulation steps.
struct QubitRecord {
  QubitId id = 0;
  std::optional<Angle> angle;  // empty for outputs
  bool output = false;
  std::vector<QubitId> fg;       // correcting set, empty for outputs
  std::vector<QubitId> fg_inv;   // qubits whose correcting set names this one
  std::vector<QubitId> neighbor_list;
  std::vector<QubitId> neighbor_z_list;  // multiset, insertion-ordered
  Signal x_list;
  Signal z_list;
  std::optional<int> level;  // measured qubits only; 0 = first slot
  bool odd = false;
};

// Qubit records in processing order: measured qubits by (layer, id), then
// outputs. Any order consistent with the correction dependencies yields the
// same lists; the layer sort is the canonical choice.
class QList {
 public:
  explicit QList(std::vector<QubitRecord> records)
      : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      index_.emplace(records_[i].id, i);
    }
  }

  QubitRecord& record(QubitId id) { return records_[index_.at(id)]; }
  const QubitRecord& record(QubitId id) const {
    return records_[index_.at(id)];
  }
  std::vector<QubitRecord>& records() { return records_; }
  const std::vector<QubitRecord>& records() const { return records_; }

 private:
  std::vector<QubitRecord> records_;
  std::map<QubitId, std::size_t> index_;
};

inline std::map<QubitId, std::vector<QubitId>> to_fg_sets(const FlowMap& flow) {
  std::map<QubitId, std::vector<QubitId>> fg;
  for (auto [i, v] : flow.f) fg[i] = {v};
  return fg;
}

inline QList build_qlist(const OpenGraph& graph,
                         const std::map<QubitId, std::vector<QubitId>>& fg,
                         const std::map<QubitId, int>& layers) {
  auto adj = graph.adjacency();
  std::map<QubitId, std::vector<QubitId>> fg_inv;
  for (const auto& [i, set] : fg) {
    for (QubitId v : set) fg_inv[v].push_back(i);
  }
  for (auto& [v, list] : fg_inv) std::sort(list.begin(), list.end());

  std::vector<QubitRecord> records;
  records.reserve(graph.vertices.size());
  for (QubitId v : graph.vertices) {
    QubitRecord rec;
    rec.id = v;
    rec.output = graph.is_output(v);
    if (!rec.output) rec.angle = graph.angles.at(v);
    if (auto it = fg.find(v); it != fg.end()) rec.fg = it->second;
    if (auto it = fg_inv.find(v); it != fg_inv.end()) rec.fg_inv = it->second;
    rec.neighbor_list = std::move(adj.at(v));
    records.push_back(std::move(rec));
  }
  std::stable_sort(records.begin(), records.end(),
                   [&](const QubitRecord& a, const QubitRecord& b) {
                     return std::pair(layers.at(a.id), a.id) <
                            std::pair(layers.at(b.id), b.id);
                   });
  return QList(std::move(records));
}

inline QList build_qlist(const OpenGraph& graph, const Classification& cls) {
  if (cls.flow) return build_qlist(graph, to_fg_sets(*cls.flow), cls.flow->layer);
  if (cls.gflow) return build_qlist(graph, cls.gflow->g, cls.gflow->layer);
  throw std::invalid_argument("build_qlist: geometry admits no correction map");
}

// The multiset of qubits whose correcting sets touch a neighbour of q: one
// occurrence of k per edge between fg(k) and q. Members of even multiplicity
// cancel later; odd-multiplicity members are always measured before q.
inline void find_neighbor_z(QList& qlist, QubitId q) {
  QubitRecord& rq = qlist.record(q);
  rq.neighbor_z_list.clear();
  for (QubitId w : rq.neighbor_list) {
    for (QubitId k : qlist.record(w).fg_inv) {
      if (k != q) rq.neighbor_z_list.push_back(k);
    }
  }
}

namespace detail {

class ParityScratch {
 public:
  explicit ParityScratch(QList& qlist) : qlist_(qlist) {}

  void toggle(QubitId k) {
    qlist_.record(k).odd = !qlist_.record(k).odd;
    touched_.push_back(k);
  }
  void toggle_with_z(QubitId k) {
    toggle(k);
    for (QubitId m : qlist_.record(k).z_list.terms()) toggle(m);
  }

  // Drain the flagged qubits into a signal, restoring every flag to false.
  Signal collect() {
    Signal result;
    for (QubitId k : touched_) {
      QubitRecord& rk = qlist_.record(k);
      if (rk.odd) {
        result.add(k);
        rk.odd = false;
      }
    }
    touched_.clear();
    return result;
  }

 private:
  QList& qlist_;
  std::vector<QubitId> touched_;
};

}  // namespace detail

// X dependencies of q: every qubit correcting through q contributes itself
// and its Z dependencies. The level is one past the latest contributor;
// Pauli measurements then shed the X list entirely (a 0 angle absorbs X, a
// +-pi/2 angle turns it into the Z dependency re-added by find_z_list).
inline void find_x_list(QList& qlist, QubitId q) {
  detail::ParityScratch scratch(qlist);
  QubitRecord& rq = qlist.record(q);
  for (QubitId p : rq.fg_inv) scratch.toggle_with_z(p);
  rq.x_list = scratch.collect();

  if (!rq.output) {
    int level = 0;
    for (QubitId k : rq.x_list.terms()) {
      level = std::max(level, *qlist.record(k).level + 1);
    }
    rq.level = level;
  }
  if (rq.angle && (rq.angle->is_pauli_x() || rq.angle->is_pauli_y())) {
    rq.x_list = {};
  }
}

// Z dependencies of q: fold the neighbour multiset, then expand each
// surviving qubit with its own Z dependencies. A +-pi/2 measurement folds in
// the X dependencies as well (the correction X^s acts as Z^s there).
inline void find_z_list(QList& qlist, QubitId q) {
  detail::ParityScratch scratch(qlist);
  QubitRecord& rq = qlist.record(q);
  for (QubitId k : rq.neighbor_z_list) scratch.toggle(k);
  const Signal folded = scratch.collect();

  for (QubitId k : folded.terms()) scratch.toggle_with_z(k);
  if (rq.angle && rq.angle->is_pauli_y()) {
    for (QubitId p : rq.fg_inv) scratch.toggle_with_z(p);
  }
  rq.z_list = scratch.collect();
}

struct OptimizedMeasurement {
  QubitId qubit = 0;
  Angle angle;
  Signal s;

  friend bool operator==(const OptimizedMeasurement&,
                         const OptimizedMeasurement&) = default;
};

struct OutputCorrection {
  QubitId qubit = 0;
  Signal s;

  friend bool operator==(const OutputCorrection&,
                         const OutputCorrection&) = default;
};

// Fully optimized pattern: entangle everything, measure in level order with
// X dependencies folded into the angles' s exponents, then correct outputs.
struct OptimizedPattern {
  std::vector<QubitId> inputs;
  std::vector<QubitId> outputs;
  std::vector<std::pair<QubitId, QubitId>> entanglement;  // ascending
  std::vector<OptimizedMeasurement> measurements;         // execution order
  std::vector<OutputCorrection> x_corrections;            // ascending qubit
  std::vector<OutputCorrection> z_corrections;            // ascending qubit
  std::map<QubitId, int> levels;  // measured qubits; empty if not computed

  // Written command list: corrections, measurements reversed, entanglement.
  Pattern to_pattern() const {
    Pattern pattern;
    pattern.inputs = inputs;
    pattern.outputs = outputs;
    auto& cmds = pattern.commands;
    for (auto it = outputs.rbegin(); it != outputs.rend(); ++it) {
      for (const auto& c : z_corrections) {
        if (c.qubit == *it) cmds.push_back(Command::correct_z(c.qubit, c.s));
      }
      for (const auto& c : x_corrections) {
        if (c.qubit == *it) cmds.push_back(Command::correct_x(c.qubit, c.s));
      }
    }
    for (auto it = measurements.rbegin(); it != measurements.rend(); ++it) {
      cmds.push_back(Command::measure(it->qubit, it->angle, it->s));
    }
    for (auto it = entanglement.rbegin(); it != entanglement.rend(); ++it) {
      cmds.push_back(Command::entangle(it->first, it->second));
    }
    return pattern;
  }

  std::string to_text() const { return render_pattern(to_pattern()); }

  friend bool operator==(const OptimizedPattern&,
                         const OptimizedPattern&) = default;
};

// Run the accumulation over an already-built QList (processing order is the
// record order) and assemble the result.
inline OptimizedPattern optimize_qlist(const OpenGraph& graph, QList& qlist) {
  for (const QubitRecord& rec : qlist.records()) {
    find_neighbor_z(qlist, rec.id);
    find_x_list(qlist, rec.id);
    find_z_list(qlist, rec.id);
  }

  OptimizedPattern result;
  result.inputs = graph.inputs;
  result.outputs = graph.outputs;
  result.entanglement = graph.edges;

  std::vector<const QubitRecord*> measured;
  for (const QubitRecord& rec : qlist.records()) {
    if (rec.output) continue;
    measured.push_back(&rec);
    result.levels[rec.id] = *rec.level;
  }
  std::sort(measured.begin(), measured.end(),
            [](const QubitRecord* a, const QubitRecord* b) {
              return std::pair(*a->level, a->id) < std::pair(*b->level, b->id);
            });
  for (const QubitRecord* rec : measured) {
    result.measurements.push_back({rec->id, *rec->angle, rec->x_list});
  }
  for (QubitId o : graph.outputs) {
    const QubitRecord& rec = qlist.record(o);
    if (!rec.x_list.empty()) result.x_corrections.push_back({o, rec.x_list});
    if (!rec.z_list.empty()) result.z_corrections.push_back({o, rec.z_list});
  }
  return result;
}

inline std::optional<OptimizedPattern> optimize_geometry(
    const OpenGraph& graph) {
  const Classification cls = classify_geometry(graph);
  if (!cls.gflow) return std::nullopt;
  QList qlist = build_qlist(graph, cls);
  return optimize_qlist(graph, qlist);
}

// Correction levels of a flow geometry's measured qubits (level 0 first).
// Geometries without flow have no single-corrector schedule to level.
inline std::optional<std::map<QubitId, int>> gflow_levels(
    const OpenGraph& graph) {
  const Classification cls = classify_geometry(graph);
  if (!cls.flow) return std::nullopt;
  QList qlist = build_qlist(graph, cls);
  return optimize_qlist(graph, qlist).levels;
}

}  // namespace mbqc
