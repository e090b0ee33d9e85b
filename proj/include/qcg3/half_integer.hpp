/**
 * @file half_integer.hpp
 * @brief Exact half-integers stored as twice their value.
 */
#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qcg3 {

class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int value) : twice_(2 * value) {}  // NOLINT: integers convert implicitly
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Parses "3/2", "-1/2" or "2".
  static HalfInt parse(const std::string& text) {
    std::size_t pos = 0;
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return HalfInt(v);
      }
      int num = std::stoi(text.substr(0, slash), &pos);
      if (pos != slash) throw std::invalid_argument(text);
      std::string den = text.substr(slash + 1);
      if (den != "2") throw std::invalid_argument(text);
      return from_twice(num);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed half-integer: '" + text + "'");
    }
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Value as an integer; throws when the value is a proper half.
  int to_int() const {
    if (!is_integer()) throw std::domain_error("half-integer is not an integer");
    return twice_ / 2;
  }

  std::string to_string() const {
    return is_integer() ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2";
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

 private:
  int twice_ = 0;
};

inline HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

}  // namespace qcg3
