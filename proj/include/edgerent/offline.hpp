#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "edgerent/core.hpp"

namespace edgerent {

struct OfflineSolution {
  DecisionTrace decisions;
  CostLedger ledger;
};

/// Minimum-cost level sequence for a fully known trace (two-state dynamic
/// program, O(T)). Among cost-equal minimisers, backtracking prefers staying
/// at the level of the following slot, then LOW.
OfflineSolution opt_off(const CostModel& model, const ArrivalTrace& arrivals,
                        Level initial_level = Level::Low);

/// Optimal offline cost of every prefix x_1..x_t, t = 1..T, from one forward pass.
std::vector<Cost> opt_off_prefix_costs(const CostModel& model, const ArrivalTrace& arrivals,
                                       Level initial_level = Level::Low);

struct DwellViolation {
  Level level = Level::Low;
  /// First and last slot of the offending run, 1-indexed.
  std::size_t first = 0;
  std::size_t last = 0;
  double required = 0.0;
};

struct DwellReport {
  /// Minimum lengths: W / (dkappa - dc) for HIGH runs, W / dc for LOW runs.
  double min_high = 0.0;
  double min_low = 0.0;
  std::size_t runs_checked = 0;
  std::vector<DwellViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks every interior run (entered by a switch, left by a switch; the
/// move away from the initial level at slot 1 counts as a switch) against
/// the minimum dwell an optimal offline schedule must respect.
DwellReport verify_dwell_times(const CostModel& model, const DecisionTrace& decisions);

struct FrameFinding {
  /// OPT-OFF frame [first, last], 1-indexed.
  std::size_t first = 0;
  std::size_t last = 0;
  std::string message;
};

/// Compares BLTN against OPT-OFF frame by frame. A frame starts at a slot
/// where OPT-OFF switches to HIGH and runs up to the next such slot. Within
/// a complete frame BLTN is expected to enter HIGH exactly once, no later
/// than OPT-OFF's return to LOW, and leave HIGH exactly once, after it.
/// Switches count toward the frame in which they are decided, so a return
/// to LOW in force from the next frame's first slot belongs to this frame.
std::vector<FrameFinding> check_frame_structure(const DecisionTrace& opt_off_decisions,
                                                const DecisionTrace& bltn_decisions);

}  // namespace edgerent
