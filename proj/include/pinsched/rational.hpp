#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pinsched {

/// Exact rational in lowest terms with a positive denominator.
///
/// Components are 64-bit; every intermediate product is formed in 128 bits and
/// the reduced result must fit back into 64 bits, otherwise
/// std::overflow_error is thrown. Used for epsilon, rounding factors and the
/// trimming ratio, where inputs are small and exactness matters more than range.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // "P/Q", "P" or "-P/Q"; whitespace is not accepted.
  static Rational parse(std::string_view text);
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

  bool positive() const { return num_ > 0; }

  // ceil(this * v) for v >= 0, exact. Throws std::overflow_error if the result
  // does not fit in int64.
  std::int64_t ceil_mul(std::int64_t v) const;

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace pinsched
