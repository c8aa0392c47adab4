#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edgerent/cost.hpp"

namespace edgerent {

/// Edge computation level rented for a slot.
enum class Level : std::uint8_t { Low = 0, High = 1 };

constexpr Level other(Level l) { return l == Level::High ? Level::Low : Level::High; }
std::string_view to_string(Level l);
/// Accepts "H"/"L", "high"/"low" (any case).
Level parse_level(std::string_view text);

/// Raised when a CostModel violates its parameter invariants.
class ModelError : public std::invalid_argument {
 public:
  enum class Kind {
    InvalidParameter,
    /// kappa_high - kappa_low <= c_high - c_low: renting LOW forever is optimal.
    DegenerateRegime,
  };

  ModelError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Raw constants of the rental problem. Defaults are the reference
/// configuration used throughout the tests and CLI.
struct CostParams {
  Cost c_high = Cost::units(600);
  Cost c_low = Cost::units(400);
  std::int64_t kappa_high = 700;
  std::int64_t kappa_low = 300;
  Cost w_hl = Cost::units(275);
  Cost w_lh = Cost::units(275);
};

/// Validated cost model.
///
/// Requires c_low < c_high, 0 < kappa_low < kappa_high, non-negative costs,
/// and kappa_high - kappa_low > c_high - c_low. The last condition (and the
/// strict kappa ordering) may be waived with `allow_degenerate`, which exists
/// for negative testing only.
class CostModel {
 public:
  explicit CostModel(const CostParams& params, bool allow_degenerate = false);

  Cost c_high() const { return p_.c_high; }
  Cost c_low() const { return p_.c_low; }
  std::int64_t kappa_high() const { return p_.kappa_high; }
  std::int64_t kappa_low() const { return p_.kappa_low; }
  Cost w_hl() const { return p_.w_hl; }
  Cost w_lh() const { return p_.w_lh; }

  Cost rent(Level l) const { return l == Level::High ? p_.c_high : p_.c_low; }
  std::int64_t cap(Level l) const { return l == Level::High ? p_.kappa_high : p_.kappa_low; }
  /// Cost of moving from `from` to `to` (zero when equal).
  Cost switch_cost(Level from, Level to) const;

  Cost delta_c() const { return p_.c_high - p_.c_low; }
  std::int64_t delta_kappa() const { return p_.kappa_high - p_.kappa_low; }
  Cost w_sum() const { return p_.w_hl + p_.w_lh; }
  bool degenerate() const { return Cost::units(delta_kappa()) <= delta_c(); }

  const CostParams& params() const { return p_; }

 private:
  CostParams p_;
};

/// Request counts x_1..x_T. Slots are 1-indexed in the accessors named
/// `slot`, 0-indexed through `counts()`.
class ArrivalTrace {
 public:
  explicit ArrivalTrace(std::vector<std::int64_t> counts);

  std::size_t horizon() const { return counts_.size(); }
  std::int64_t slot(std::size_t t) const { return counts_.at(t - 1); }
  std::span<const std::int64_t> counts() const { return counts_; }

  /// min{x_t, kappa}
  std::int64_t served(std::size_t t, std::int64_t kappa) const;

  friend bool operator==(const ArrivalTrace&, const ArrivalTrace&) = default;

 private:
  std::vector<std::int64_t> counts_;
};

/// Levels r_1..r_T together with r_0, the level in force before slot 1.
class DecisionTrace {
 public:
  DecisionTrace(std::vector<Level> levels, Level initial_level);

  std::size_t horizon() const { return levels_.size(); }
  Level initial_level() const { return initial_; }
  Level slot(std::size_t t) const { return levels_.at(t - 1); }
  std::span<const Level> levels() const { return levels_; }
  /// 1-indexed slots t with r_t != r_{t-1}.
  std::vector<std::size_t> switch_slots() const;

  friend bool operator==(const DecisionTrace&, const DecisionTrace&) = default;

 private:
  std::vector<Level> levels_;
  Level initial_;
};

struct SlotCost {
  Cost rent;
  Cost service;
  Cost switching;

  Cost total() const { return rent + service + switching; }
  friend bool operator==(const SlotCost&, const SlotCost&) = default;
};

struct SlotRecord {
  std::size_t slot = 0;
  Level level = Level::Low;
  SlotCost cost;
};

/// Per-slot cost decomposition plus running totals.
class CostLedger {
 public:
  CostLedger() = default;

  void append(Level level, Level previous, const SlotCost& cost);

  std::span<const SlotRecord> records() const { return records_; }
  std::size_t horizon() const { return records_.size(); }
  Cost rent() const { return rent_; }
  Cost service() const { return service_; }
  Cost switching() const { return switching_; }
  Cost total() const { return rent_ + service_ + switching_; }
  std::size_t switch_count() const { return switches_; }

 private:
  std::vector<SlotRecord> records_;
  Cost rent_;
  Cost service_;
  Cost switching_;
  std::size_t switches_ = 0;
};

/// Cost of one slot served at `level_now` after `level_prev` was in force.
SlotCost slot_cost(const CostModel& model, std::int64_t arrivals, Level level_now,
                   Level level_prev);

/// Throws std::invalid_argument when horizons differ.
CostLedger evaluate(const CostModel& model, const ArrivalTrace& arrivals,
                    const DecisionTrace& decisions);

}  // namespace edgerent
