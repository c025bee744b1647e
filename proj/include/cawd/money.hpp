// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cawd {

/// Fixed-point monetary amount with four decimal digits of precision.
///
/// Bid prices and allocation values are stored as exact integer multiples
/// of 10^-4 so that incumbent comparisons during the search never depend on
/// floating-point equality. Only the LP relaxation works in doubles.
class Money {
 public:
  static constexpr std::int64_t kScale = 10'000;  // 10^kFracDigits
  static constexpr int kFracDigits = 4;

  constexpr Money() = default;

  static constexpr Money from_scaled(std::int64_t scaled) {
    Money m;
    m.scaled_ = scaled;
    return m;
  }

  /// Nearest grid point (ties away from zero).
  static Money from_double(double value);

  /// Largest grid point not exceeding `value` (plus a hair of tolerance for
  /// values that are grid points up to floating-point noise). Used by the
  /// solver to turn an LP bound into the best integer-allocation value a
  /// subtree could still reach.
  static Money floor_from_double(double value);

  /// Parses a decimal literal such as "12", "3.5" or "0.0001".
  /// Throws std::invalid_argument on malformed input or more than four
  /// fractional digits (those are not representable at this scale).
  static Money parse(std::string_view text);

  constexpr std::int64_t scaled() const { return scaled_; }
  double to_double() const { return static_cast<double>(scaled_) / kScale; }
  bool is_zero() const { return scaled_ == 0; }

  /// Shortest exact decimal representation ("2.5", not "2.5000").
  std::string str() const;

  friend constexpr Money operator+(Money a, Money b) {
    return from_scaled(a.scaled_ + b.scaled_);
  }
  friend constexpr Money operator-(Money a, Money b) {
    return from_scaled(a.scaled_ - b.scaled_);
  }
  Money& operator+=(Money o) {
    scaled_ += o.scaled_;
    return *this;
  }
  Money& operator-=(Money o) {
    scaled_ -= o.scaled_;
    return *this;
  }
  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  std::int64_t scaled_ = 0;
};

}  // namespace cawd
