#pragma once

// Dense state-vector simulator for measurement patterns, plus the semantic
// checks built on it: branch enumeration, determinism verification, and
// linear-map extraction for pattern equivalence.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbqc/pattern.hpp"
#include "mbqc/signal.hpp"

namespace mbqc {

using Amplitude = std::complex<double>;
using StateVector = std::vector<Amplitude>;
// Rows index output basis states, columns input basis states; ascending
// qubit id is the most significant bit on both sides.
using LinearMap = std::vector<std::vector<Amplitude>>;

inline constexpr double kSimTolerance = 1e-9;

// Result of running one branch of a pattern. The state is over
// `register_qubits` (ascending, most significant first) and is left
// unnormalized: its squared norm is the branch probability.
struct RunResult {
  std::vector<QubitId> register_qubits;
  StateVector state;
  double probability = 0.0;
  std::map<QubitId, bool> outcomes;  // raw outcome bit per measured qubit
};

namespace detail {

inline std::size_t bit_weight(std::size_t register_size, std::size_t pos) {
  return std::size_t{1} << (register_size - 1 - pos);
}

inline std::size_t register_position(const std::vector<QubitId>& reg,
                                     QubitId q) {
  const auto it = std::lower_bound(reg.begin(), reg.end(), q);
  if (it == reg.end() || *it != q) {
    throw std::logic_error("qubit missing from the simulation register");
  }
  return static_cast<std::size_t>(it - reg.begin());
}

inline double norm_squared(const StateVector& state) {
  double total = 0.0;
  for (const Amplitude& a : state) total += std::norm(a);
  return total;
}

}  // namespace detail

inline StateVector normalized(StateVector state) {
  const double norm = std::sqrt(detail::norm_squared(state));
  if (norm <= 0.0) {
    throw std::domain_error("cannot normalize a zero state");
  }
  for (Amplitude& a : state) a /= norm;
  return state;
}

// Equality up to one global phase, aligned on the largest amplitude of `a`.
inline bool states_equal_up_to_phase(const StateVector& a,
                                     const StateVector& b,
                                     double tol = kSimTolerance) {
  if (a.size() != b.size()) return false;
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (std::abs(a[i]) > std::abs(a[pivot])) pivot = i;
  }
  if (std::abs(a[pivot]) <= tol) return detail::norm_squared(b) <= tol * tol;
  const Amplitude factor = b[pivot] / a[pivot];
  if (std::abs(std::abs(factor) - 1.0) > tol) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(b[i] - factor * a[i]) > tol) return false;
  }
  return true;
}

inline bool maps_equal_up_to_phase(const LinearMap& a, const LinearMap& b,
                                   double tol = kSimTolerance) {
  if (a.size() != b.size()) return false;
  StateVector flat_a;
  StateVector flat_b;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) return false;
    flat_a.insert(flat_a.end(), a[r].begin(), a[r].end());
    flat_b.insert(flat_b.end(), b[r].begin(), b[r].end());
  }
  return states_equal_up_to_phase(flat_a, flat_b, tol);
}

// Execute one branch. `input_state` is over the pattern's inputs (ascending,
// most significant first; dimension 2^|I|). Non-input qubits are prepared in
// |+>. The i-th executed measurement reads bit i of `outcome_bits` as its
// raw outcome. The caller is responsible for validating the pattern first.
inline RunResult run_pattern(const Pattern& pattern,
                             const StateVector& input_state,
                             std::uint32_t outcome_bits = 0) {
  // Register: every qubit the pattern mentions, ascending.
  std::set<QubitId> qubit_set(pattern.inputs.begin(), pattern.inputs.end());
  qubit_set.insert(pattern.outputs.begin(), pattern.outputs.end());
  for (const Command& c : pattern.commands) {
    qubit_set.insert(c.qubit);
    if (c.kind == CommandKind::entangle) qubit_set.insert(c.partner);
  }
  std::vector<QubitId> reg(qubit_set.begin(), qubit_set.end());

  const std::size_t num_inputs = pattern.inputs.size();
  if (input_state.size() != (std::size_t{1} << num_inputs)) {
    throw std::invalid_argument(
        "input state dimension does not match the pattern's inputs");
  }

  // Initial state: inputs carry `input_state`, everything else is |+>.
  std::vector<std::size_t> input_weight;
  for (QubitId q : pattern.inputs) {
    input_weight.push_back(
        detail::bit_weight(reg.size(), detail::register_position(reg, q)));
  }
  const double plus_norm =
      std::pow(0.5, 0.5 * static_cast<double>(reg.size() - num_inputs));
  StateVector state(std::size_t{1} << reg.size());
  for (std::size_t idx = 0; idx < state.size(); ++idx) {
    std::size_t input_index = 0;
    for (std::size_t j = 0; j < num_inputs; ++j) {
      input_index <<= 1;
      if (idx & input_weight[j]) input_index |= 1;
    }
    state[idx] = input_state[input_index] * plus_norm;
  }

  RunResult result;
  std::map<QubitId, bool> store;
  std::size_t measured_count = 0;
  const auto signal_value = [&](const Signal& s) {
    return s.evaluate([&](QubitId k) { return store.at(k); });
  };

  for (auto it = pattern.commands.rbegin(); it != pattern.commands.rend();
       ++it) {
    const Command& c = *it;
    switch (c.kind) {
      case CommandKind::entangle: {
        const std::size_t wu =
            detail::bit_weight(reg.size(), detail::register_position(reg, c.qubit));
        const std::size_t wv = detail::bit_weight(
            reg.size(), detail::register_position(reg, c.partner));
        for (std::size_t idx = 0; idx < state.size(); ++idx) {
          if ((idx & wu) && (idx & wv)) state[idx] = -state[idx];
        }
        break;
      }
      case CommandKind::correct_x: {
        if (!signal_value(c.s)) break;
        const std::size_t w = detail::bit_weight(
            reg.size(), detail::register_position(reg, c.qubit));
        for (std::size_t idx = 0; idx < state.size(); ++idx) {
          if (idx & w) std::swap(state[idx], state[idx ^ w]);
        }
        break;
      }
      case CommandKind::correct_z: {
        if (!signal_value(c.s)) break;
        const std::size_t w = detail::bit_weight(
            reg.size(), detail::register_position(reg, c.qubit));
        for (std::size_t idx = 0; idx < state.size(); ++idx) {
          if (idx & w) state[idx] = -state[idx];
        }
        break;
      }
      case CommandKind::shift: {
        store[c.qubit] = store.at(c.qubit) ^ signal_value(c.s);
        break;
      }
      case CommandKind::measure: {
        const bool outcome = (outcome_bits >> measured_count) & 1u;
        ++measured_count;
        const Angle effective =
            c.angle.adjusted(signal_value(c.s), signal_value(c.t));
        const double theta = effective.radians();
        const Amplitude back_phase(std::cos(theta), -std::sin(theta));
        const double sign = outcome ? -1.0 : 1.0;
        const std::size_t pos = detail::register_position(reg, c.qubit);
        const std::size_t w = detail::bit_weight(reg.size(), pos);
        const std::size_t low_mask = w - 1;

        StateVector next(state.size() / 2);
        for (std::size_t idx = 0; idx < next.size(); ++idx) {
          const std::size_t low = idx & low_mask;
          const std::size_t high = (idx & ~low_mask) << 1;
          const Amplitude a0 = state[high | low];
          const Amplitude a1 = state[high | w | low];
          next[idx] = (a0 + sign * back_phase * a1) / std::numbers::sqrt2;
        }
        state = std::move(next);
        reg.erase(reg.begin() + static_cast<std::ptrdiff_t>(pos));
        store[c.qubit] = outcome;
        result.outcomes.emplace(c.qubit, outcome);
        break;
      }
    }
  }

  result.register_qubits = std::move(reg);
  result.state = std::move(state);
  result.probability = detail::norm_squared(result.state);
  return result;
}

// All 2^m branches of a pattern (m = number of measurements); branch i uses
// outcome bits i. Validates the pattern first and refuses m > 20.
inline std::vector<RunResult> enumerate_branches(
    const Pattern& pattern, const StateVector& input_state) {
  const PatternValidation validation = validate_pattern(pattern);
  if (!validation.ok()) {
    throw std::invalid_argument("invalid pattern: " + validation.message);
  }
  std::size_t measurements = 0;
  for (const Command& c : pattern.commands) {
    if (c.kind == CommandKind::measure) ++measurements;
  }
  if (measurements > 20) {
    throw std::domain_error("too many measurements to enumerate branches");
  }
  std::vector<RunResult> branches;
  branches.reserve(std::size_t{1} << measurements);
  for (std::uint32_t key = 0; key < (std::uint32_t{1} << measurements);
       ++key) {
    branches.push_back(run_pattern(pattern, input_state, key));
  }
  return branches;
}

struct DeterminismReport {
  bool deterministic = false;
  std::string detail;  // first violation, empty when deterministic
};

namespace detail {

// Portable pseudo-random amplitudes/rationals from raw mt19937_64 output
// (distribution classes vary across standard libraries).
inline double unit_double(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) / 9007199254740992.0;  // 2^53
}

inline StateVector random_state(std::size_t dimension, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StateVector state(dimension);
  for (Amplitude& a : state) {
    a = Amplitude(unit_double(rng()) - 0.5, unit_double(rng()) - 0.5);
  }
  return normalized(std::move(state));
}

inline DeterminismReport check_one_input(const Pattern& pattern,
                                         const StateVector& input,
                                         const std::string& label,
                                         double tol) {
  const auto branches = enumerate_branches(pattern, input);
  const double expected =
      1.0 / static_cast<double>(branches.size());
  StateVector reference;
  for (std::size_t key = 0; key < branches.size(); ++key) {
    const RunResult& branch = branches[key];
    if (std::abs(branch.probability - expected) > tol) {
      return {false, "branch " + std::to_string(key) + " of " + label +
                         " has probability " +
                         std::to_string(branch.probability) + ", expected " +
                         std::to_string(expected)};
    }
    StateVector state = normalized(branch.state);
    if (key == 0) {
      reference = std::move(state);
    } else if (!states_equal_up_to_phase(reference, state, tol)) {
      return {false, "branch " + std::to_string(key) + " of " + label +
                         " differs from branch 0 beyond a global phase"};
    }
  }
  return {true, ""};
}

}  // namespace detail

// A pattern is deterministic when, for every input, all measurement branches
// are equally likely and produce the same output state up to a global phase.
// Checked on every computational basis input plus one pseudo-random state.
inline DeterminismReport check_determinism(const Pattern& pattern,
                                           double tol = kSimTolerance) {
  const std::size_t dimension = std::size_t{1} << pattern.inputs.size();
  for (std::size_t j = 0; j < dimension; ++j) {
    StateVector basis(dimension, Amplitude(0.0, 0.0));
    basis[j] = Amplitude(1.0, 0.0);
    const auto report = detail::check_one_input(
        pattern, basis, "basis input " + std::to_string(j), tol);
    if (!report.deterministic) return report;
  }
  return detail::check_one_input(
      pattern, detail::random_state(dimension, 0x9e3779b97f4a7c15ull),
      "random input", tol);
}

// Determinism under re-assigned measurement angles: the correction structure
// must not depend on the specific angles. Each round redraws every
// measurement angle from a seeded generator and re-checks determinism.
inline DeterminismReport check_uniform_determinism(
    const Pattern& pattern, int rounds = 3,
    std::uint64_t seed = 0xa5a5a5a5ull, double tol = kSimTolerance) {
  std::mt19937_64 rng(seed);
  for (int round = 0; round < rounds; ++round) {
    Pattern reassigned = pattern;
    for (Command& c : reassigned.commands) {
      if (c.kind != CommandKind::measure) continue;
      const auto num = static_cast<std::int64_t>(rng() % 17) - 8;
      const auto den = static_cast<std::int64_t>(1 + rng() % 9);
      c.angle = Angle(num, den);
    }
    DeterminismReport report = check_determinism(reassigned, tol);
    if (!report.deterministic) {
      report.detail =
          "angle reassignment round " + std::to_string(round) + ": " +
          report.detail;
      return report;
    }
  }
  return {true, ""};
}

// The linear map a deterministic pattern implements: column j is the
// renormalized all-zero-outcome branch output for basis input j.
inline LinearMap extract_linear_map(const Pattern& pattern) {
  const std::size_t columns = std::size_t{1} << pattern.inputs.size();
  const std::size_t rows = std::size_t{1} << pattern.outputs.size();
  LinearMap map(rows, std::vector<Amplitude>(columns));
  for (std::size_t j = 0; j < columns; ++j) {
    StateVector basis(columns, Amplitude(0.0, 0.0));
    basis[j] = Amplitude(1.0, 0.0);
    const RunResult branch = run_pattern(pattern, basis, 0);
    if (branch.state.size() != rows) {
      throw std::domain_error(
          "pattern does not reduce to its outputs; cannot extract a map");
    }
    const StateVector column = normalized(branch.state);
    for (std::size_t r = 0; r < rows; ++r) map[r][j] = column[r];
  }
  return map;
}

struct EquivalenceReport {
  bool equivalent = false;
  std::string detail;
};

// Semantic comparison of two deterministic patterns over the same inputs and
// outputs: extracted linear maps must agree up to one global phase. Raises
// std::domain_error when either pattern is not deterministic.
inline EquivalenceReport patterns_equivalent(const Pattern& a,
                                             const Pattern& b,
                                             double tol = kSimTolerance) {
  if (a.inputs != b.inputs || a.outputs != b.outputs) {
    return {false, "patterns act on different inputs or outputs"};
  }
  const DeterminismReport da = check_determinism(a, tol);
  if (!da.deterministic) {
    throw std::domain_error("first pattern is not deterministic: " +
                            da.detail);
  }
  const DeterminismReport db = check_determinism(b, tol);
  if (!db.deterministic) {
    throw std::domain_error("second pattern is not deterministic: " +
                            db.detail);
  }
  if (!maps_equal_up_to_phase(extract_linear_map(a), extract_linear_map(b),
                              tol)) {
    return {false, "patterns implement different linear maps"};
  }
  return {true, ""};
}

}  // namespace mbqc
