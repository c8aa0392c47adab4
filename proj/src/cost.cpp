#include "edgerent/cost.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace edgerent {

Cost Cost::from_double(double value) {
  const double scaled = std::round(value * static_cast<double>(kScale));
  if (!std::isfinite(scaled) || std::abs(scaled) > 9.0e18) {
    throw std::invalid_argument("cost out of representable range");
  }
  return Cost(static_cast<std::int64_t>(scaled));
}

Cost Cost::parse(std::string_view text) {
  const auto fail = [&] {
    throw std::invalid_argument("malformed cost literal '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++i;
  }
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool in_frac = false;
  constexpr std::int64_t kWholeLimit = std::numeric_limits<std::int64_t>::max() / kScale / 10;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.') {
      if (in_frac) fail();
      in_frac = true;
      continue;
    }
    if (ch < '0' || ch > '9') fail();
    any_digit = true;
    if (in_frac) {
      if (++frac_digits > 6) fail();
      frac = frac * 10 + (ch - '0');
    } else {
      if (whole > kWholeLimit) fail();
      whole = whole * 10 + (ch - '0');
    }
  }
  if (!any_digit) fail();
  while (frac_digits < 6) {
    frac *= 10;
    ++frac_digits;
  }
  const std::int64_t micros = whole * kScale + frac;
  return Cost(negative ? -micros : micros);
}

std::string Cost::str() const {
  const bool negative = micros_ < 0;
  const std::uint64_t mag = negative ? 0ULL - static_cast<std::uint64_t>(micros_)
                                     : static_cast<std::uint64_t>(micros_);
  std::string out = negative ? "-" : "";
  out += std::to_string(mag / kScale);
  std::uint64_t frac = mag % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 6 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

}  // namespace edgerent
