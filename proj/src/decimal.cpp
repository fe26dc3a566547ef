#include "tcawp/decimal.hpp"

#include "tcawp/error.hpp"

namespace tcawp {

std::optional<Decimal> Decimal::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t units = 0;
  std::size_t i = 0;
  std::size_t digits = 0;
  for (; i < text.size() && text[i] != '.'; ++i, ++digits) {
    const char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    if (units > 100'000'000'000LL) return std::nullopt;
    units = units * 10 + (c - '0');
  }
  if (digits == 0) return std::nullopt;
  std::int64_t frac = 0;
  if (i < text.size()) {
    // one significant fractional digit; trailing zeros ("5.00") are tolerated
    const std::string_view rest = text.substr(i + 1);
    if (rest.empty()) return std::nullopt;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] < '0' || rest[j] > '9') return std::nullopt;
      if (j > 0 && rest[j] != '0') return std::nullopt;
    }
    frac = rest[0] - '0';
  }
  return Decimal(units * 10 + frac);
}

Decimal Decimal::parse_or_throw(std::string_view text) {
  if (auto d = parse(text)) return *d;
  throw ParseError("not a non-negative one-digit decimal: '" + std::string(text) + "'");
}

std::string Decimal::str() const {
  std::int64_t t = tenths_;
  std::string sign;
  if (t < 0) {
    sign = "-";
    t = -t;
  }
  return sign + std::to_string(t / 10) + "." + std::to_string(t % 10);
}

}  // namespace tcawp
