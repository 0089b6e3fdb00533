#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mbqc/angle.hpp"
#include "mbqc/open_graph.hpp"
#include "mbqc/signal.hpp"

namespace mbqc {

enum class CommandKind { entangle, measure, correct_x, correct_z, shift };

// One pattern command. Commands are written left-to-right but executed
// right-to-left, so the last element of a command list runs first.
struct Command {
  CommandKind kind = CommandKind::entangle;
  QubitId qubit = 0;
  QubitId partner = 0;  // entangle only
  Angle angle;          // measure only
  Signal s;             // measure/correct/shift exponent
  Signal t;             // measure only

  static Command entangle(QubitId u, QubitId v) {
    Command c;
    c.kind = CommandKind::entangle;
    c.qubit = u < v ? u : v;
    c.partner = u < v ? v : u;
    return c;
  }
  static Command measure(QubitId q, Angle angle, Signal s = {}, Signal t = {}) {
    Command c;
    c.kind = CommandKind::measure;
    c.qubit = q;
    c.angle = angle;
    c.s = std::move(s);
    c.t = std::move(t);
    return c;
  }
  static Command correct_x(QubitId q, Signal s = {}) {
    Command c;
    c.kind = CommandKind::correct_x;
    c.qubit = q;
    c.s = std::move(s);
    return c;
  }
  static Command correct_z(QubitId q, Signal s = {}) {
    Command c;
    c.kind = CommandKind::correct_z;
    c.qubit = q;
    c.s = std::move(s);
    return c;
  }
  static Command shift(QubitId q, Signal s = {}) {
    Command c;
    c.kind = CommandKind::shift;
    c.qubit = q;
    c.s = std::move(s);
    return c;
  }

  friend bool operator==(const Command&, const Command&) = default;
};

struct Pattern {
  std::vector<QubitId> inputs;   // ascending
  std::vector<QubitId> outputs;  // ascending
  std::vector<Command> commands;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

// Every qubit the pattern touches (command targets plus inputs/outputs).
inline std::vector<QubitId> pattern_qubits(const Pattern& pattern) {
  std::set<QubitId> ids(pattern.inputs.begin(), pattern.inputs.end());
  ids.insert(pattern.outputs.begin(), pattern.outputs.end());
  for (const Command& c : pattern.commands) {
    ids.insert(c.qubit);
    if (c.kind == CommandKind::entangle) ids.insert(c.partner);
  }
  return {ids.begin(), ids.end()};
}

inline std::string render_command(const Command& c) {
  switch (c.kind) {
    case CommandKind::entangle:
      return "E(" + std::to_string(c.qubit) + "," + std::to_string(c.partner) +
             ")";
    case CommandKind::measure: {
      std::string core =
          "M" + std::to_string(c.qubit) + "^{" + c.angle.to_string() + "}";
      if (c.s.empty() && c.t.empty()) return core;
      std::string out;
      if (!c.t.empty()) out += "^{" + c.t.to_string() + "}";
      out += "[" + core + "]";
      if (!c.s.empty()) out += "^{" + c.s.to_string() + "}";
      return out;
    }
    case CommandKind::correct_x:
    case CommandKind::correct_z:
    case CommandKind::shift: {
      const char* name = c.kind == CommandKind::correct_x  ? "X"
                         : c.kind == CommandKind::correct_z ? "Z"
                                                            : "S";
      std::string out = name + std::to_string(c.qubit);
      if (!c.s.empty()) out += "^{" + c.s.to_string() + "}";
      return out;
    }
  }
  return "";
}

inline std::string render_pattern(const Pattern& pattern) {
  std::string out;
  for (const Command& c : pattern.commands) {
    if (!out.empty()) out += ' ';
    out += render_command(c);
  }
  return out;
}

enum class PatternError {
  none,
  self_loop,
  measured_twice,
  measured_output,
  acts_after_measure,
  signal_before_measure,
  missing_measurement,
};

inline std::string_view to_string(PatternError error) {
  switch (error) {
    case PatternError::none: return "none";
    case PatternError::self_loop: return "self_loop";
    case PatternError::measured_twice: return "measured_twice";
    case PatternError::measured_output: return "measured_output";
    case PatternError::acts_after_measure: return "acts_after_measure";
    case PatternError::signal_before_measure: return "signal_before_measure";
    case PatternError::missing_measurement: return "missing_measurement";
  }
  return "unknown";
}

struct PatternValidation {
  PatternError error = PatternError::none;
  std::string message;

  bool ok() const { return error == PatternError::none; }
};

// Checks well-formedness in execution order (right to left): no command may
// touch a qubit that has already been measured (shifts excepted: they adjust
// the recorded outcome and so require one), exponents may only mention
// already-measured qubits, outputs stay unmeasured, and every other touched
// qubit is measured exactly once.
inline PatternValidation validate_pattern(const Pattern& pattern) {
  const auto fail = [](PatternError error, std::string message) {
    return PatternValidation{error, std::move(message)};
  };

  std::set<QubitId> measured;
  const auto signals_ready = [&](const Signal& signal) {
    for (QubitId q : signal.terms()) {
      if (!measured.contains(q)) return false;
    }
    return true;
  };

  for (auto it = pattern.commands.rbegin(); it != pattern.commands.rend();
       ++it) {
    const Command& c = *it;
    if (!signals_ready(c.s) || !signals_ready(c.t)) {
      return fail(PatternError::signal_before_measure,
                  "exponent of " + render_command(c) +
                      " reads an outcome that is not yet available");
    }
    switch (c.kind) {
      case CommandKind::entangle:
        if (c.qubit == c.partner) {
          return fail(PatternError::self_loop,
                      "entangling " + std::to_string(c.qubit) + " with itself");
        }
        if (measured.contains(c.qubit) || measured.contains(c.partner)) {
          return fail(PatternError::acts_after_measure,
                      render_command(c) + " touches a measured qubit");
        }
        break;
      case CommandKind::measure:
        if (measured.contains(c.qubit)) {
          return fail(PatternError::measured_twice,
                      "qubit " + std::to_string(c.qubit) + " measured twice");
        }
        if (std::binary_search(pattern.outputs.begin(), pattern.outputs.end(),
                               c.qubit)) {
          return fail(PatternError::measured_output,
                      "output " + std::to_string(c.qubit) + " measured");
        }
        measured.insert(c.qubit);
        break;
      case CommandKind::correct_x:
      case CommandKind::correct_z:
        if (measured.contains(c.qubit)) {
          return fail(PatternError::acts_after_measure,
                      render_command(c) + " touches a measured qubit");
        }
        break;
      case CommandKind::shift:
        if (!measured.contains(c.qubit)) {
          return fail(PatternError::signal_before_measure,
                      render_command(c) + " shifts an outcome that is not yet "
                                          "available");
        }
        break;
    }
  }

  for (QubitId q : pattern_qubits(pattern)) {
    if (std::binary_search(pattern.outputs.begin(), pattern.outputs.end(), q)) {
      continue;
    }
    if (!measured.contains(q)) {
      return fail(PatternError::missing_measurement,
                  "non-output " + std::to_string(q) + " is never measured");
    }
  }
  return {};
}

}  // namespace mbqc
