#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pinsched {

// Unsigned 128-bit accumulator for objectives and prefix sums. With weights and
// sizes capped at 1e9 and n at 1e4, every objective stays below 1e26 < 2^127.
using Wide = unsigned __int128;

inline constexpr Wide kWideMax = std::numeric_limits<Wide>::max();

inline Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit addition overflow");
  return r;
}

inline Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit multiplication overflow");
  return r;
}

inline Wide checked_sub(Wide a, Wide b) {
  if (b > a) throw std::overflow_error("128-bit subtraction underflow");
  return a - b;
}

std::string to_string(Wide v);

// Parses a non-negative decimal string; throws std::invalid_argument on
// malformed text and std::overflow_error when the value exceeds 128 bits.
Wide parse_wide(std::string_view text);

}  // namespace pinsched
