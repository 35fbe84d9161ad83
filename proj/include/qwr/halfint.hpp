// Half-integer spins stored exactly as doubled integers.
#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace qwr {

struct HalfInt {
  int n2 = 0;  // the value is n2 / 2

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int doubled) : n2(doubled) {}
  static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }

  constexpr bool is_integer() const { return n2 % 2 == 0; }
  constexpr int twice() const { return n2; }
  double value() const { return n2 / 2.0; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return HalfInt(a.n2 + b.n2);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return HalfInt(a.n2 - b.n2);
  }
  constexpr HalfInt operator-() const { return HalfInt(-n2); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  // "p/2" for odd p, plain integer otherwise.
  std::string str() const {
    if (n2 % 2 == 0) return std::to_string(n2 / 2);
    return std::to_string(n2) + "/2";
  }

  // Accepts "3", "-2", "5/2", "-7/2".
  static HalfInt parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return HalfInt(2 * std::stoi(s));
      if (s.substr(slash + 1) != "2")
        throw std::invalid_argument("denominator must be 2");
      return HalfInt(std::stoi(s.substr(0, slash)));
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid half-integer: " + s);
    }
  }
};

}  // namespace qwr
