#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgerent/core.hpp"

namespace edgerent {

/// Per-step internals reported for explain/verbose output. Never feeds back
/// into cost accounting.
struct StepDiagnostic {
  double accumulator = 0.0;
  bool triggered = false;
  /// Start of the window that crossed the threshold (BLTN), 1-indexed.
  std::optional<std::size_t> tau;
  /// Scaled perturbation gamma * N drawn this step (FTPL).
  std::optional<double> perturbation;
};

struct PolicyStep {
  Level next_level = Level::Low;
  std::optional<StepDiagnostic> diagnostic;
};

/// Expectations of an i.i.d. arrival law: nu = E[X], mu_high = E[min(X, kappa_high)],
/// mu_low = E[min(X, kappa_low)].
struct StochasticStats {
  double nu = 0.0;
  double mu_high = 0.0;
  double mu_low = 0.0;

  /// Throws std::invalid_argument unless 0 <= mu_low <= mu_high <= nu
  /// (with 1e-9 relative slack for quadrature round-off).
  void validate() const;
  double delta_mu() const { return mu_high - mu_low; }
};

// ---------------------------------------------------------------------------
// BLTN, constant-time form

struct BltnState {
  Level level = Level::Low;
  /// max{0, best windowed advantage of the other level since the last switch}
  Cost accumulator;
  /// Slot at whose end the last switch was decided; 0 before any switch.
  std::size_t t_switch = 0;
  /// Slots observed so far.
  std::size_t t = 0;
  /// First slot of the window realising `accumulator`.
  std::size_t window_start = 1;
};

/// Advantage of the other level over `current` in one slot (H_i - L_i when
/// HIGH, L_i - H_i when LOW).
Cost per_slot_advantage(const CostModel& model, std::int64_t arrivals, Level current);

/// One slot of the accumulator recursion; switches when the accumulator
/// strictly exceeds W = w_hl + w_lh and resets it to zero.
std::pair<PolicyStep, BltnState> bltn_fast_step(const CostModel& model, std::int64_t arrivals,
                                                const BltnState& state);

// ---------------------------------------------------------------------------
// BLTN, windowed scan over the whole history (quadratic reference form)

struct BltnNaiveState {
  Level level = Level::Low;
  std::size_t t_switch = 0;
};

/// `history` holds x_1..x_t. Scans tau in (t_switch, t] and switches if the
/// window [tau, t] gives the other level an advantage strictly above W.
std::pair<PolicyStep, BltnNaiveState> bltn_naive_step(const CostModel& model,
                                                      std::span<const std::int64_t> history,
                                                      const BltnNaiveState& state);

// ---------------------------------------------------------------------------
// FTPL

enum class FtplNoise {
  /// N(0, sqrt t) read as variance sqrt t: standard deviation t^(1/4).
  Variance,
  /// N(0, sqrt t) read as standard deviation sqrt t.
  StdDev,
};

struct FtplConfig {
  double gamma = 1.0;
  std::uint64_t seed = 0;
  FtplNoise noise = FtplNoise::Variance;

  void validate() const;
};

struct FtplState {
  /// Cumulative static-HIGH cost minus static-LOW cost (unclamped).
  Cost accumulator;
  std::size_t t = 0;
};

/// Returns LOW iff accumulator + gamma * N(0, s_t) > 0; equality yields HIGH.
/// With gamma == 0 no variate is drawn and the comparison is exact.
std::pair<PolicyStep, FtplState> ftpl_step(const CostModel& model, std::int64_t arrivals,
                                           const FtplState& state, const FtplConfig& config,
                                           std::mt19937_64& rng);

/// HIGH iff c_high + nu - mu_high < c_low + nu - mu_low; ties go to LOW.
Level opt_online_level(const CostModel& model, const StochasticStats& stats);

// ---------------------------------------------------------------------------
// Policy objects

/// Causal decision maker. `start` fixes r_1 from the inherited level r_0;
/// `observe(x_t)` is called after slot t is served and returns r_{t+1}.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;

  virtual std::string name() const = 0;
  virtual Level start(Level initial_level) = 0;
  virtual PolicyStep observe(std::int64_t arrivals) = 0;
  virtual std::unique_ptr<OnlinePolicy> clone() const = 0;
};

class BltnPolicy final : public OnlinePolicy {
 public:
  explicit BltnPolicy(CostModel model) : model_(std::move(model)) {}

  std::string name() const override { return "bltn"; }
  Level start(Level initial_level) override;
  PolicyStep observe(std::int64_t arrivals) override;
  std::unique_ptr<OnlinePolicy> clone() const override;
  const BltnState& state() const { return state_; }

 private:
  CostModel model_;
  BltnState state_;
};

class BltnNaivePolicy final : public OnlinePolicy {
 public:
  explicit BltnNaivePolicy(CostModel model) : model_(std::move(model)) {}

  std::string name() const override { return "bltn-naive"; }
  Level start(Level initial_level) override;
  PolicyStep observe(std::int64_t arrivals) override;
  std::unique_ptr<OnlinePolicy> clone() const override;

 private:
  CostModel model_;
  BltnNaiveState state_;
  std::vector<std::int64_t> history_;
};

class FtplPolicy final : public OnlinePolicy {
 public:
  FtplPolicy(CostModel model, FtplConfig config);

  std::string name() const override { return "ftpl"; }
  Level start(Level initial_level) override;
  PolicyStep observe(std::int64_t arrivals) override;
  std::unique_ptr<OnlinePolicy> clone() const override;

 private:
  CostModel model_;
  FtplConfig config_;
  FtplState state_;
  std::mt19937_64 rng_;
};

/// Rents the same level every slot, from slot 1 on.
class StaticPolicy : public OnlinePolicy {
 public:
  explicit StaticPolicy(Level level) : level_(level) {}

  std::string name() const override { return level_ == Level::High ? "static-high" : "static-low"; }
  Level start(Level) override { return level_; }
  PolicyStep observe(std::int64_t) override { return {level_, std::nullopt}; }
  std::unique_ptr<OnlinePolicy> clone() const override;
  Level level() const { return level_; }

 private:
  Level level_;
};

/// Statistics-aware static choice (the optimal causal policy for i.i.d. arrivals).
class OptOnlinePolicy final : public StaticPolicy {
 public:
  OptOnlinePolicy(const CostModel& model, const StochasticStats& stats)
      : StaticPolicy(opt_online_level(model, stats)) {}

  std::string name() const override { return "opt-on"; }
  std::unique_ptr<OnlinePolicy> clone() const override;
};

std::unique_ptr<OnlinePolicy> static_policy(Level level);
std::unique_ptr<OnlinePolicy> opt_online_policy(const CostModel& model,
                                                const StochasticStats& stats);

struct PolicyRun {
  DecisionTrace decisions;
  CostLedger ledger;
  /// steps[t-1] is the policy's output after observing slot t.
  std::vector<PolicyStep> steps;
};

/// Serves each slot with the current level, then lets the policy pick the
/// next one from x_1..x_t. Resets the policy via `start`.
PolicyRun run_policy(OnlinePolicy& policy, const CostModel& model, const ArrivalTrace& arrivals,
                     Level initial_level = Level::Low);

}  // namespace edgerent
