#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tcawp {

// Exact decimal with one fractional digit, stored as tenths. Canonical text
// form always carries the fractional digit ("5.0", "12.5").
class Decimal {
 public:
  constexpr Decimal() = default;
  static constexpr Decimal from_tenths(std::int64_t tenths) { return Decimal(tenths); }
  static constexpr Decimal from_int(std::int64_t units) { return Decimal(units * 10); }

  // Accepts "74", "44.0", "7.5". Rejects signs, more than one fractional
  // digit, and anything non-numeric.
  static std::optional<Decimal> parse(std::string_view text);
  // Throws ParseError.
  static Decimal parse_or_throw(std::string_view text);

  constexpr std::int64_t tenths() const { return tenths_; }
  constexpr bool is_integral() const { return tenths_ % 10 == 0; }
  constexpr std::int64_t whole() const { return tenths_ / 10; }

  std::string str() const;

  constexpr Decimal operator+(Decimal o) const { return Decimal(tenths_ + o.tenths_); }
  constexpr Decimal operator-(Decimal o) const { return Decimal(tenths_ - o.tenths_); }
  constexpr Decimal& operator+=(Decimal o) { tenths_ += o.tenths_; return *this; }
  constexpr Decimal& operator-=(Decimal o) { tenths_ -= o.tenths_; return *this; }
  constexpr auto operator<=>(const Decimal&) const = default;

 private:
  constexpr explicit Decimal(std::int64_t tenths) : tenths_(tenths) {}
  std::int64_t tenths_ = 0;
};

}  // namespace tcawp
