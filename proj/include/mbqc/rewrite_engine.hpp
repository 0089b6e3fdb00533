#pragma once

// Rewrite-rule engine over measurement patterns: builds the naive pattern a
// correcting-set strategy dictates, then normalizes it with local, replayable
// rewrites (standardization, Pauli simplification, signal shifting).  The
// engine is deliberately independent from the accumulation optimizer so the
// two can be diffed against each other.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/direct_optimizer.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/signal.hpp"

namespace mbqc {

// Local rules. Positions index the written command list; a rule at position i
// inspects the command there (and its right neighbour where applicable).
enum class RewriteRule {
  commute_e_x,         // E(u,v) X_u^s -> X_u^s Z_v^s E(u,v)
  commute_e_z,         // E(u,v) Z_u^s -> Z_u^s E(u,v)
  commute_e_free,      // E past a command it shares no qubit with
  absorb_x,            // M_q X_q^r : r folds into the measurement's s
  absorb_z,            // M_q Z_q^r : r folds into the measurement's t
  commute_correction,  // M_q past a correction on another qubit
  commute_past_shift,  // S_k^r past a correction, substituting s_k -> s_k+r
  pauli_x_drop,        // angle 0: the s exponent is irrelevant
  pauli_y_fold,        // angle +-1/2: s folds into t
  extract_shift,       // ^t[M_q]^s -> S_q^t [M_q]^s
  move_shift_left,     // S_k^r hops left, substituting s_k -> s_k+r
  drop_shift,          // delete an S at the left end of the pattern
};

inline std::string to_string(RewriteRule rule) {
  switch (rule) {
    case RewriteRule::commute_e_x: return "commute_e_x";
    case RewriteRule::commute_e_z: return "commute_e_z";
    case RewriteRule::commute_e_free: return "commute_e_free";
    case RewriteRule::absorb_x: return "absorb_x";
    case RewriteRule::absorb_z: return "absorb_z";
    case RewriteRule::commute_correction: return "commute_correction";
    case RewriteRule::commute_past_shift: return "commute_past_shift";
    case RewriteRule::pauli_x_drop: return "pauli_x_drop";
    case RewriteRule::pauli_y_fold: return "pauli_y_fold";
    case RewriteRule::extract_shift: return "extract_shift";
    case RewriteRule::move_shift_left: return "move_shift_left";
    case RewriteRule::drop_shift: return "drop_shift";
  }
  return "?";
}

struct RewriteStep {
  RewriteRule rule = RewriteRule::commute_e_free;
  std::size_t position = 0;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

using RewriteTrace = std::vector<RewriteStep>;

namespace detail {

[[noreturn]] inline void rule_mismatch(RewriteRule rule, std::size_t pos) {
  throw std::invalid_argument("rewrite rule " + to_string(rule) +
                              " does not apply at position " +
                              std::to_string(pos));
}

inline bool on_edge(const Command& e, QubitId q) {
  return e.qubit == q || e.partner == q;
}

// Substitute s_k -> s_k + r in every exponent the command carries.
inline void substitute_exponents(Command& c, QubitId k, const Signal& r) {
  c.s.substitute(k, r);
  if (c.kind == CommandKind::measure) c.t.substitute(k, r);
}

}  // namespace detail

// Apply one rule at one position, mutating the pattern. Throws
// std::invalid_argument when the commands at that position do not match the
// rule, so corrupted traces fail loudly instead of drifting.
inline void apply_rule(Pattern& pattern, RewriteRule rule, std::size_t pos) {
  auto& cmds = pattern.commands;
  const auto require = [&](bool ok) {
    if (!ok) detail::rule_mismatch(rule, pos);
  };

  switch (rule) {
    case RewriteRule::commute_e_x: {
      require(pos + 1 < cmds.size());
      Command e = cmds[pos];
      const Command x = cmds[pos + 1];
      require(e.kind == CommandKind::entangle &&
              x.kind == CommandKind::correct_x && detail::on_edge(e, x.qubit));
      const QubitId other = x.qubit == e.qubit ? e.partner : e.qubit;
      cmds[pos] = x;
      cmds[pos + 1] = Command::correct_z(other, x.s);
      cmds.insert(cmds.begin() + static_cast<std::ptrdiff_t>(pos) + 2, e);
      return;
    }
    case RewriteRule::commute_e_z: {
      require(pos + 1 < cmds.size());
      require(cmds[pos].kind == CommandKind::entangle &&
              cmds[pos + 1].kind == CommandKind::correct_z &&
              detail::on_edge(cmds[pos], cmds[pos + 1].qubit));
      std::swap(cmds[pos], cmds[pos + 1]);
      return;
    }
    case RewriteRule::commute_e_free: {
      require(pos + 1 < cmds.size());
      const Command& e = cmds[pos];
      const Command& c = cmds[pos + 1];
      require(e.kind == CommandKind::entangle &&
              c.kind != CommandKind::entangle);
      // Shifts are classical bookkeeping and commute with any entangler;
      // everything else must act on qubits the entangler does not touch.
      require(c.kind == CommandKind::shift || !detail::on_edge(e, c.qubit));
      std::swap(cmds[pos], cmds[pos + 1]);
      return;
    }
    case RewriteRule::absorb_x: {
      require(pos + 1 < cmds.size());
      Command& m = cmds[pos];
      const Command& x = cmds[pos + 1];
      require(m.kind == CommandKind::measure &&
              x.kind == CommandKind::correct_x && m.qubit == x.qubit);
      m.s.add(x.s);
      cmds.erase(cmds.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
      return;
    }
    case RewriteRule::absorb_z: {
      require(pos + 1 < cmds.size());
      Command& m = cmds[pos];
      const Command& z = cmds[pos + 1];
      require(m.kind == CommandKind::measure &&
              z.kind == CommandKind::correct_z && m.qubit == z.qubit);
      m.t.add(z.s);
      cmds.erase(cmds.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
      return;
    }
    case RewriteRule::commute_correction: {
      require(pos + 1 < cmds.size());
      const Command& m = cmds[pos];
      const Command& c = cmds[pos + 1];
      require(m.kind == CommandKind::measure &&
              (c.kind == CommandKind::correct_x ||
               c.kind == CommandKind::correct_z) &&
              m.qubit != c.qubit);
      std::swap(cmds[pos], cmds[pos + 1]);
      return;
    }
    case RewriteRule::commute_past_shift: {
      require(pos + 1 < cmds.size());
      const Command s = cmds[pos];
      require(s.kind == CommandKind::shift &&
              (cmds[pos + 1].kind == CommandKind::correct_x ||
               cmds[pos + 1].kind == CommandKind::correct_z));
      detail::substitute_exponents(cmds[pos + 1], s.qubit, s.s);
      std::swap(cmds[pos], cmds[pos + 1]);
      return;
    }
    case RewriteRule::pauli_x_drop: {
      require(pos < cmds.size());
      Command& m = cmds[pos];
      require(m.kind == CommandKind::measure && m.angle.is_pauli_x() &&
              !m.s.empty());
      m.s = Signal{};
      return;
    }
    case RewriteRule::pauli_y_fold: {
      require(pos < cmds.size());
      Command& m = cmds[pos];
      require(m.kind == CommandKind::measure && m.angle.is_pauli_y() &&
              !m.s.empty());
      m.t.add(m.s);
      m.s = Signal{};
      return;
    }
    case RewriteRule::extract_shift: {
      require(pos < cmds.size());
      require(cmds[pos].kind == CommandKind::measure && !cmds[pos].t.empty());
      Signal t = std::move(cmds[pos].t);
      cmds[pos].t = Signal{};
      const QubitId q = cmds[pos].qubit;
      cmds.insert(cmds.begin() + static_cast<std::ptrdiff_t>(pos),
                  Command::shift(q, std::move(t)));
      return;
    }
    case RewriteRule::move_shift_left: {
      require(pos > 0 && pos < cmds.size());
      const Command s = cmds[pos];
      require(s.kind == CommandKind::shift);
      detail::substitute_exponents(cmds[pos - 1], s.qubit, s.s);
      std::swap(cmds[pos - 1], cmds[pos]);
      return;
    }
    case RewriteRule::drop_shift: {
      require(pos == 0 && !cmds.empty() &&
              cmds[0].kind == CommandKind::shift);
      cmds.erase(cmds.begin());
      return;
    }
  }
  detail::rule_mismatch(rule, pos);
}

// Replay a recorded trace against a starting pattern.
inline Pattern replay(Pattern pattern, const RewriteTrace& trace) {
  for (const RewriteStep& step : trace) {
    apply_rule(pattern, step.rule, step.position);
  }
  return pattern;
}

// Naive pattern for a geometry under a correcting-set map fg and a
// measurement-order layering: entangle every edge, then measure in
// (layer, id) order, correcting each outcome immediately with X on the
// correcting set and Z on its odd neighbourhood.
inline Pattern standard_pattern(
    const OpenGraph& graph, const std::map<QubitId, std::vector<QubitId>>& fg,
    const std::map<QubitId, int>& layers) {
  std::vector<QubitId> order = graph.measured_vertices();
  std::stable_sort(order.begin(), order.end(), [&](QubitId a, QubitId b) {
    const int la = layers.at(a);
    const int lb = layers.at(b);
    return la != lb ? la < lb : a < b;
  });

  std::vector<Command> exec;
  for (const auto& [u, v] : graph.edges) exec.push_back(Command::entangle(u, v));
  for (QubitId k : order) {
    exec.push_back(Command::measure(k, graph.angles.at(k)));
    const Signal outcome{k};
    const auto& correcting = fg.at(k);
    for (QubitId j : correcting) {
      exec.push_back(Command::correct_x(j, outcome));
    }
    for (QubitId j : odd_neighborhood(graph, correcting)) {
      if (j != k) exec.push_back(Command::correct_z(j, outcome));
    }
  }

  Pattern pattern;
  pattern.inputs = graph.inputs;
  pattern.outputs = graph.outputs;
  pattern.commands.assign(exec.rbegin(), exec.rend());
  return pattern;
}

inline Pattern standard_pattern(const OpenGraph& graph,
                                const Classification& cls) {
  if (cls.flow) {
    return standard_pattern(graph, to_fg_sets(*cls.flow), cls.flow->layer);
  }
  if (cls.gflow) return standard_pattern(graph, cls.gflow->g, cls.gflow->layer);
  throw std::invalid_argument(
      "standard_pattern requires a geometry with flow or gflow");
}

inline std::optional<Pattern> standard_pattern(const OpenGraph& graph) {
  const Classification cls = classify_geometry(graph);
  if (!cls.gflow) return std::nullopt;
  return standard_pattern(graph, cls);
}

namespace detail {

// Safety valve for the standardization loops. Entangler moves can spawn new
// Z corrections that other entanglers must then cross, so adversarial inputs
// are cubic in the worst case; pipeline inputs stay quadratic.
inline std::size_t standardize_step_limit(std::size_t n) {
  return 64 + 4 * n * n * n;
}

}  // namespace detail

// Rewrite into standard form: all entanglers at the right end (executed
// first), then measurements, then corrections at the left end. Corrections
// meeting their own qubit's measurement are absorbed into its exponents.
inline void standardize(Pattern& pattern, RewriteTrace* trace = nullptr) {
  auto& cmds = pattern.commands;
  const std::size_t limit = detail::standardize_step_limit(cmds.size());
  std::size_t steps = 0;
  const auto step = [&](RewriteRule rule, std::size_t pos) {
    if (++steps > limit) {
      throw std::runtime_error("standardize exceeded its step ceiling");
    }
    apply_rule(pattern, rule, pos);
    if (trace) trace->push_back({rule, pos});
  };

  // Entangler phase: push every E right past whatever follows it. A rule at
  // position i only touches commands from i-1 onward, so resuming the
  // leftmost-pair scan there keeps the exact rule order while staying
  // amortized linear in the number of steps.
  std::size_t from = 0;
  for (;;) {
    std::size_t i = from;
    bool found = false;
    for (; i + 1 < cmds.size(); ++i) {
      if (cmds[i].kind == CommandKind::entangle &&
          cmds[i + 1].kind != CommandKind::entangle) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (from == 0) break;
      from = 0;  // one clean pass to confirm the fixpoint
      continue;
    }
    from = i > 0 ? i - 1 : 0;
    const Command& e = cmds[i];
    const Command& right = cmds[i + 1];
    if (right.kind == CommandKind::correct_x &&
        detail::on_edge(e, right.qubit)) {
      step(RewriteRule::commute_e_x, i);
    } else if (right.kind == CommandKind::correct_z &&
               detail::on_edge(e, right.qubit)) {
      step(RewriteRule::commute_e_z, i);
    } else if (right.kind == CommandKind::measure &&
               detail::on_edge(e, right.qubit)) {
      throw std::invalid_argument(
          "cannot standardize: an entangler acts on a measured qubit");
    } else {
      step(RewriteRule::commute_e_free, i);
    }
  }

  // Correction phase: carry every correction left past measurements and
  // shifts, absorbing it when it reaches its own qubit's measurement.
  from = 0;
  for (;;) {
    std::size_t i = from;
    bool found = false;
    for (; i + 1 < cmds.size(); ++i) {
      const CommandKind left = cmds[i].kind;
      const CommandKind right = cmds[i + 1].kind;
      if ((left == CommandKind::measure || left == CommandKind::shift) &&
          (right == CommandKind::correct_x ||
           right == CommandKind::correct_z)) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (from == 0) break;
      from = 0;
      continue;
    }
    from = i > 0 ? i - 1 : 0;
    if (cmds[i].kind == CommandKind::shift) {
      step(RewriteRule::commute_past_shift, i);
    } else if (cmds[i].qubit != cmds[i + 1].qubit) {
      step(RewriteRule::commute_correction, i);
    } else if (cmds[i + 1].kind == CommandKind::correct_x) {
      step(RewriteRule::absorb_x, i);
    } else {
      step(RewriteRule::absorb_z, i);
    }
  }
}

// Drop or fold the s exponents of Pauli measurements. Returns whether
// anything changed.
inline bool pauli_simplify(Pattern& pattern, RewriteTrace* trace = nullptr) {
  bool changed = false;
  for (std::size_t i = 0; i < pattern.commands.size(); ++i) {
    const Command& c = pattern.commands[i];
    if (c.kind != CommandKind::measure || c.s.empty()) continue;
    RewriteRule rule;
    if (c.angle.is_pauli_x()) {
      rule = RewriteRule::pauli_x_drop;
    } else if (c.angle.is_pauli_y()) {
      rule = RewriteRule::pauli_y_fold;
    } else {
      continue;
    }
    apply_rule(pattern, rule, i);
    if (trace) trace->push_back({rule, i});
    changed = true;
  }
  return changed;
}

// Extract every measurement's t exponent as a shift, bubble it to the left
// end (substituting s_k -> s_k + t along the way), and delete it there.
// Measurements are processed rightmost (earliest executed) first, so each
// extracted exponent is already final. `shifted`, when given, accumulates
// the extracted exponents per qubit.
inline bool signal_shift(Pattern& pattern, RewriteTrace* trace = nullptr,
                         std::map<QubitId, Signal>* shifted = nullptr) {
  bool changed = false;
  const auto step = [&](RewriteRule rule, std::size_t pos) {
    apply_rule(pattern, rule, pos);
    if (trace) trace->push_back({rule, pos});
  };

  for (std::size_t i = pattern.commands.size(); i-- > 0;) {
    const Command& c = pattern.commands[i];
    if (c.kind != CommandKind::measure || c.t.empty()) continue;
    if (shifted) (*shifted)[c.qubit].add(c.t);
    step(RewriteRule::extract_shift, i);
    for (std::size_t pos = i; pos > 0; --pos) {
      step(RewriteRule::move_shift_left, pos);
    }
    step(RewriteRule::drop_shift, 0);
    changed = true;
  }
  return changed;
}

// Full rewrite pipeline result.
struct RulesEngineResult {
  Pattern rewritten;                    // final standard-form pattern
  OptimizedPattern optimized;           // per-qubit summary (levels empty)
  RewriteTrace trace;                   // replayable against standard_pattern
  std::map<QubitId, Signal> shifted;    // accumulated t per measured qubit
};

// standardize, then alternate Pauli simplification and signal shifting to a
// fixpoint, and summarize the surviving dependencies.
inline RulesEngineResult optimize_by_rules(const OpenGraph& graph,
                                           const Classification& cls) {
  RulesEngineResult result;
  result.rewritten = standard_pattern(graph, cls);
  Pattern& p = result.rewritten;

  standardize(p, &result.trace);
  const std::size_t round_limit = graph.vertices.size() + 4;
  for (std::size_t round = 0;; ++round) {
    const bool simplified = pauli_simplify(p, &result.trace);
    const bool shifted = signal_shift(p, &result.trace, &result.shifted);
    if (!simplified && !shifted) break;
    if (round >= round_limit) {
      throw std::runtime_error("rewriting failed to reach a fixpoint");
    }
  }

  OptimizedPattern& opt = result.optimized;
  opt.inputs = graph.inputs;
  opt.outputs = graph.outputs;
  opt.entanglement = graph.edges;

  std::map<QubitId, Signal> x_out;
  std::map<QubitId, Signal> z_out;
  for (auto it = p.commands.rbegin(); it != p.commands.rend(); ++it) {
    switch (it->kind) {
      case CommandKind::measure:
        opt.measurements.push_back({it->qubit, it->angle, it->s});
        break;
      case CommandKind::correct_x:
      case CommandKind::correct_z: {
        if (!graph.is_output(it->qubit)) {
          throw std::logic_error(
              "a correction on a measured qubit survived rewriting");
        }
        auto& folded = it->kind == CommandKind::correct_x ? x_out : z_out;
        folded[it->qubit].add(it->s);
        break;
      }
      default:
        break;
    }
  }
  for (const auto& [qubit, s] : x_out) {
    if (!s.empty()) opt.x_corrections.push_back({qubit, s});
  }
  for (const auto& [qubit, s] : z_out) {
    if (!s.empty()) opt.z_corrections.push_back({qubit, s});
  }
  return result;
}

inline std::optional<RulesEngineResult> optimize_by_rules(
    const OpenGraph& graph) {
  const Classification cls = classify_geometry(graph);
  if (!cls.gflow) return std::nullopt;
  return optimize_by_rules(graph, cls);
}

}  // namespace mbqc
