#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace hspin {

// Half-integer quantum number (j, m, ...) stored exactly as twice its value,
// so all arithmetic on the lattice {0, 1/2, 1, 3/2, ...} is exact.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int value) { return HalfInteger(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  // Integer value of an integral half-integer.
  int as_int() const {
    if (!is_integer()) throw std::domain_error("HalfInteger: " + str() + " is not an integer");
    return twice_ / 2;
  }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
    return HalfInteger(a.twice_ + b.twice_);
  }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return HalfInteger(a.twice_ - b.twice_);
  }
  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

// (-1)^q for integral q. Formulas in this library are arranged so that a
// parity of a genuine half-integer is never requested; asking for one is a
// hard error, not a silent convention choice.
inline int parity_sign(HalfInteger q) {
  if (!q.is_integer()) throw std::domain_error("parity_sign: exponent " + q.str() + " is not an integer");
  return q.twice() / 2 % 2 == 0 ? 1 : -1;
}

}  // namespace hspin
