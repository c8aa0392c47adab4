#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace edgerent {

/// Exact monetary amount stored as a signed count of millionths of a unit.
///
/// Every cost in the model (rent, service, switch) is a finite decimal, so
/// sums and comparisons are exact. The representable range is roughly
/// +/-9.2e12 units, well above any desk-scale horizon.
class Cost {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Cost() = default;

  static constexpr Cost units(std::int64_t whole) { return Cost(whole * kScale); }
  static constexpr Cost from_micros(std::int64_t micros) { return Cost(micros); }
  /// Rounds to the nearest millionth.
  static Cost from_double(double value);
  /// Parses a plain decimal literal such as "600", "-3.25" or "0.000001".
  /// Throws std::invalid_argument on malformed input or more than six
  /// fractional digits.
  static Cost parse(std::string_view text);

  constexpr std::int64_t micros() const { return micros_; }
  constexpr double to_double() const {
    return static_cast<double>(micros_) / static_cast<double>(kScale);
  }
  /// Shortest exact decimal rendering ("600", "0.25").
  std::string str() const;

  constexpr Cost& operator+=(Cost other) {
    micros_ += other.micros_;
    return *this;
  }
  constexpr Cost& operator-=(Cost other) {
    micros_ -= other.micros_;
    return *this;
  }
  friend constexpr Cost operator+(Cost a, Cost b) { return a += b; }
  friend constexpr Cost operator-(Cost a, Cost b) { return a -= b; }
  friend constexpr Cost operator-(Cost a) { return Cost(-a.micros_); }
  friend constexpr Cost operator*(Cost a, std::int64_t k) { return Cost(a.micros_ * k); }
  friend constexpr Cost operator*(std::int64_t k, Cost a) { return Cost(a.micros_ * k); }

  friend constexpr auto operator<=>(Cost, Cost) = default;
  friend constexpr bool operator==(Cost, Cost) = default;

 private:
  constexpr explicit Cost(std::int64_t micros) : micros_(micros) {}

  std::int64_t micros_ = 0;
};

constexpr Cost max(Cost a, Cost b) { return a < b ? b : a; }
constexpr Cost min(Cost a, Cost b) { return b < a ? b : a; }

}  // namespace edgerent
