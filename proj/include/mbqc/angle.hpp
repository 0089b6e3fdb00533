#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mbqc {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Measurement angle as a reduced rational multiple of pi, normalized into
// the half-open interval (-1, 1] (so -pi and pi are the same angle "1").
class Angle {
 public:
  constexpr Angle() = default;

  Angle(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Angle: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t period = 2 * den;
    num %= period;
    if (num < 0) num += period;
    if (num > den) num -= period;
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static std::optional<Angle> parse(std::string_view text) {
    std::int64_t num = 0;
    std::int64_t den = 1;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, num);
    if (ec != std::errc{} || ptr == begin) return std::nullopt;
    if (ptr != end) {
      if (*ptr != '/') return std::nullopt;
      ++ptr;
      auto [dptr, dec] = std::from_chars(ptr, end, den);
      if (dec != std::errc{} || dptr != end || den == 0) return std::nullopt;
    }
    return Angle(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  // Measurement along the X axis: angle 0.
  bool is_pauli_x() const { return num_ == 0; }
  // Measurement along the Y axis: angle +pi/2 or -pi/2.
  bool is_pauli_y() const {
    return den_ == 2 && (num_ == 1 || num_ == -1);
  }

  Angle negated() const { return Angle(-num_, den_); }
  Angle shifted_by_pi() const { return Angle(num_ + den_, den_); }
  // Outcome-conditioned angle: (-1)^s * angle + t*pi.
  Angle adjusted(bool s, bool t) const {
    Angle result = s ? negated() : *this;
    return t ? result.shifted_by_pi() : result;
  }

  double radians() const {
    return kPi * static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) {
      out += '/';
      out += std::to_string(den_);
    }
    return out;
  }

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace mbqc
