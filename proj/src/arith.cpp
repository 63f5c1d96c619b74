#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pinsched/rational.hpp"
#include "pinsched/wide.hpp"

namespace pinsched {

std::string to_string(Wide v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Wide parse_wide(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  Wide v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("malformed integer: " + std::string(text));
    v = checked_add(checked_mul(v, 10), static_cast<Wide>(ch - '0'));
  }
  return v;
}

namespace {

using I128 = __int128;

I128 abs128(I128 v) { return v < 0 ? -v : v; }

I128 gcd128(I128 a, I128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(I128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_i64(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range) throw std::overflow_error("rational component out of range");
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("malformed rational: " + std::string(s));
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(I128 num, I128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  I128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational component exceeds 64 bits");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_i64(text));
  return Rational(parse_i64(text.substr(0, slash)), parse_i64(text.substr(slash + 1)));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  return from_wide(I128(num_) * o.den_ + I128(o.num_) * den_, I128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return from_wide(I128(num_) * o.den_ - I128(o.num_) * den_, I128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return from_wide(I128(num_) * o.num_, I128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("division by zero rational");
  return from_wide(I128(num_) * o.den_, I128(den_) * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  return I128(num_) * o.den_ <=> I128(o.num_) * den_;
}

std::int64_t Rational::ceil_mul(std::int64_t v) const {
  if (v < 0) throw std::invalid_argument("ceil_mul expects a non-negative multiplicand");
  I128 p = I128(num_) * v;
  I128 q = p / den_;
  if (p % den_ != 0 && p > 0) ++q;
  if (!fits64(q)) throw std::overflow_error("rounded value exceeds 64 bits");
  return static_cast<std::int64_t>(q);
}

}  // namespace pinsched
