#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "edgerent/core.hpp"

namespace edgerent {

/// A valid, non-degenerate model with small integer or quarter-unit costs.
/// About one model in eight has W = 0.
CostModel random_model(std::mt19937_64& rng);

/// Trace of length `horizon` mixing uniform counts, blocks at the two caps,
/// zero blocks and counts near the caps, with block lengths drawn around
/// the model's dwell scales.
ArrivalTrace random_trace(const CostModel& model, std::size_t horizon, std::mt19937_64& rng);

struct BatteryResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t violations = 0;
  /// Description of the first violation, empty if none.
  std::string first_violation;
  /// Battery-specific extreme (worst ratio seen, longest run, ...).
  double extreme = 0.0;

  bool ok() const { return violations == 0; }
};

/// Constant-time and windowed-scan BLTN on random models and traces with
/// T in [1, max_horizon]; a case fails on any decision mismatch.
BatteryResult check_bltn_equivalence(std::size_t cases, std::size_t max_horizon,
                                     std::uint64_t seed);

/// OPT-OFF on random traces against the dwell minimums. Uses `model` for
/// every case, or a fresh random model per case when null.
BatteryResult check_dwell_times(const CostModel* model, std::size_t cases,
                                std::size_t max_horizon, std::uint64_t seed);

/// Max over traces and prefixes of BLTN cost / OPT-OFF cost on random
/// traces for one model, compared with the worst-case upper bound (plus
/// 1e-9). A degenerate model counts as one violation.
BatteryResult check_upper_bound(const CostModel& model, std::size_t cases,
                                std::size_t max_horizon, std::uint64_t seed);

/// Adaptive adversary against BLTN; fails when its ratio falls below the
/// universal lower bound minus 1e-9.
BatteryResult check_lower_bound_realization(const CostModel& model, std::size_t t_max);

}  // namespace edgerent
