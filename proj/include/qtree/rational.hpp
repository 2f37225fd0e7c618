#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qtree {

/// Exact fraction num/den with den > 0, always stored in lowest terms.
/// Arithmetic throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  // Integral only, so a braced list of doubles never converts silently.
  template <std::integral N>
  Rational(N num, std::int64_t den = 1) : Rational(Checked{}, static_cast<std::int64_t>(num), den) {}

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  /// Accepts "a/b", integers, and plain decimals such as "0.125" (parsed exactly).
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Checked {};
  Rational(Checked, std::int64_t num, std::int64_t den);
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace qtree
