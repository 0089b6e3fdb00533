#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mbqc {

using QubitId = std::uint32_t;

// Parity function over measurement outcomes: a set of qubit ids combined
// with XOR. {8,5,4} stands for the classical expression s8+s5+s4 (mod 2).
class Signal {
 public:
  Signal() = default;
  Signal(std::initializer_list<QubitId> ids) {
    for (QubitId id : ids) add(id);
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool contains(QubitId id) const {
    return std::binary_search(terms_.begin(), terms_.end(), id);
  }
  const std::vector<QubitId>& terms() const { return terms_; }

  void add(QubitId id) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), id);
    if (it != terms_.end() && *it == id) {
      terms_.erase(it);
    } else {
      terms_.insert(it, id);
    }
  }

  void add(const Signal& other) {
    std::vector<QubitId> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(),
                                  other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(merged));
    terms_ = std::move(merged);
  }

  // Apply the outcome relabeling s_id -> s_id ^ shift to this expression.
  void substitute(QubitId id, const Signal& shift) {
    if (contains(id)) add(shift);
  }

  // Evaluate under an outcome assignment (callable QubitId -> bool).
  template <class OutcomeFn>
  bool evaluate(OutcomeFn&& outcome_of) const {
    bool value = false;
    for (QubitId id : terms_) value ^= static_cast<bool>(outcome_of(id));
    return value;
  }

  // Terms joined with '+' in descending id order: "s8+s5+s4". Empty -> "".
  std::string to_string() const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += '+';
      out += 's';
      out += std::to_string(*it);
    }
    return out;
  }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<QubitId> terms_;  // ascending
};

inline Signal signal_add(Signal a, const Signal& b) {
  a.add(b);
  return a;
}

}  // namespace mbqc
