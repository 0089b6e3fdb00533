#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mbqc {

// Dense GF(2) linear system with an augmented right-hand-side bit.
class Gf2System {
 public:
  explicit Gf2System(std::size_t num_cols)
      : num_cols_(num_cols), words_per_row_(num_cols / 64 + 1) {}

  void add_row(const std::vector<std::size_t>& cols, bool rhs) {
    std::vector<std::uint64_t> row(words_per_row_, 0);
    for (std::size_t c : cols) row[c / 64] ^= std::uint64_t{1} << (c % 64);
    if (rhs) set_bit(row, num_cols_);
    rows_.push_back(std::move(row));
  }

  // One solution with all free variables zero; nullopt if inconsistent.
  // Pivots are chosen column by column in ascending order.
  std::optional<std::vector<bool>> solve() const {
    std::vector<std::vector<std::uint64_t>> m = rows_;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < num_cols_ && next_row < m.size(); ++col) {
      std::size_t pivot = next_row;
      while (pivot < m.size() && !get_bit(m[pivot], col)) ++pivot;
      if (pivot == m.size()) continue;
      std::swap(m[next_row], m[pivot]);
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (r != next_row && get_bit(m[r], col)) {
          for (std::size_t w = 0; w < words_per_row_; ++w) {
            m[r][w] ^= m[next_row][w];
          }
        }
      }
      pivots.emplace_back(next_row, col);
      ++next_row;
    }
    for (std::size_t r = next_row; r < m.size(); ++r) {
      if (get_bit(m[r], num_cols_)) return std::nullopt;
    }
    std::vector<bool> x(num_cols_, false);
    for (auto [row, col] : pivots) x[col] = get_bit(m[row], num_cols_);
    return x;
  }

 private:
  static void set_bit(std::vector<std::uint64_t>& row, std::size_t i) {
    row[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  static bool get_bit(const std::vector<std::uint64_t>& row, std::size_t i) {
    return (row[i / 64] >> (i % 64)) & 1;
  }

  std::size_t num_cols_;
  std::size_t words_per_row_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace mbqc
