// SPDX-License-Identifier: Apache-2.0
#include "cawd/money.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cawd {

Money Money::from_double(double value) {
  return from_scaled(static_cast<std::int64_t>(
      std::llround(value * static_cast<double>(kScale))));
}

Money Money::floor_from_double(double value) {
  // The 2^-20 nudge keeps grid points that the double arithmetic landed an
  // ulp below from being floored one whole grid step down; it is far smaller
  // than one grid unit, so it never rounds a strictly interior value up.
  return from_scaled(static_cast<std::int64_t>(
      std::floor(value * static_cast<double>(kScale) + 9.5367431640625e-7)));
}

Money Money::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("money: empty literal");
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t integer = 0;
  std::size_t int_digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    integer = integer * 10 + (text[pos] - '0');
    if (integer > (1LL << 52)) throw std::invalid_argument("money: literal out of range");
    ++pos;
    ++int_digits;
  }
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (frac_digits == static_cast<std::size_t>(kFracDigits)) {
        throw std::invalid_argument(
            "money: more than " + std::to_string(kFracDigits) +
            " fractional digits in '" + std::string(text) + "'");
      }
      frac = frac * 10 + (text[pos] - '0');
      ++pos;
      ++frac_digits;
    }
    if (frac_digits == 0) throw std::invalid_argument("money: dangling decimal point");
  }
  if (pos != text.size() || int_digits + frac_digits == 0) {
    throw std::invalid_argument("money: malformed literal '" + std::string(text) + "'");
  }
  for (std::size_t i = frac_digits; i < static_cast<std::size_t>(kFracDigits); ++i) frac *= 10;
  std::int64_t scaled = integer * kScale + frac;
  return from_scaled(negative ? -scaled : scaled);
}

std::string Money::str() const {
  std::int64_t v = scaled_;
  std::string sign;
  if (v < 0) {
    sign = "-";
    v = -v;
  }
  std::string out = sign + std::to_string(v / kScale);
  std::int64_t frac = v % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(digits.begin(), kFracDigits - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

}  // namespace cawd
