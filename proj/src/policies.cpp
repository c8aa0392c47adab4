#include "edgerent/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgerent {

void StochasticStats::validate() const {
  const double slack = 1e-9 * std::max(1.0, std::abs(nu));
  if (!(std::isfinite(nu) && std::isfinite(mu_high) && std::isfinite(mu_low))) {
    throw std::invalid_argument("stochastic stats must be finite");
  }
  if (mu_low < -slack || mu_low > mu_high + slack || mu_high > nu + slack) {
    throw std::invalid_argument("stochastic stats must satisfy 0 <= mu_low <= mu_high <= nu");
  }
}

Cost per_slot_advantage(const CostModel& model, std::int64_t arrivals, Level current) {
  const std::int64_t served_high = std::min(arrivals, model.kappa_high());
  const std::int64_t served_low = std::min(arrivals, model.kappa_low());
  // Cost(H) - Cost(L) for the slot, before switch costs.
  const Cost high_minus_low = Cost::units(served_low - served_high) + model.delta_c();
  return current == Level::High ? high_minus_low : -high_minus_low;
}

std::pair<PolicyStep, BltnState> bltn_fast_step(const CostModel& model, std::int64_t arrivals,
                                                const BltnState& state) {
  BltnState next = state;
  next.t = state.t + 1;
  const Cost raw = state.accumulator + per_slot_advantage(model, arrivals, state.level);
  next.accumulator = max(Cost{}, raw);
  if (next.accumulator == Cost{}) next.window_start = next.t + 1;

  StepDiagnostic diag{next.accumulator.to_double(), false, std::nullopt, std::nullopt};
  if (next.accumulator > model.w_sum()) {
    diag.triggered = true;
    diag.tau = next.window_start;
    next.level = other(state.level);
    next.t_switch = next.t;
    next.accumulator = Cost{};
    next.window_start = next.t + 1;
  }
  return {PolicyStep{next.level, diag}, next};
}

std::pair<PolicyStep, BltnNaiveState> bltn_naive_step(const CostModel& model,
                                                      std::span<const std::int64_t> history,
                                                      const BltnNaiveState& state) {
  const std::size_t t = history.size();
  if (t == 0) throw std::invalid_argument("bltn_naive_step needs at least one observed slot");
  const Cost threshold = model.w_sum();

  // Window sums over [tau, t] for tau = t, t-1, ..., t_switch + 1; keep the
  // smallest qualifying tau and the largest window sum for diagnostics.
  Cost window;
  Cost best;
  std::optional<std::size_t> found;
  for (std::size_t tau = t; tau > state.t_switch; --tau) {
    window += per_slot_advantage(model, history[tau - 1], state.level);
    best = max(best, window);
    if (window > threshold) found = tau;
  }

  StepDiagnostic diag{best.to_double(), found.has_value(), found, std::nullopt};
  BltnNaiveState next = state;
  if (found) {
    next.level = other(state.level);
    next.t_switch = t;
  }
  return {PolicyStep{next.level, diag}, next};
}

void FtplConfig::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("FTPL gamma must be finite and non-negative");
  }
}

std::pair<PolicyStep, FtplState> ftpl_step(const CostModel& model, std::int64_t arrivals,
                                           const FtplState& state, const FtplConfig& config,
                                           std::mt19937_64& rng) {
  FtplState next = state;
  next.t = state.t + 1;
  next.accumulator = state.accumulator + per_slot_advantage(model, arrivals, Level::High);

  StepDiagnostic diag{next.accumulator.to_double(), false, std::nullopt, std::nullopt};
  bool choose_low = false;
  if (config.gamma == 0.0) {
    choose_low = next.accumulator > Cost{};
  } else {
    const double t = static_cast<double>(next.t);
    const double scale = config.noise == FtplNoise::Variance ? std::sqrt(std::sqrt(t)) : std::sqrt(t);
    std::normal_distribution<double> normal(0.0, scale);
    const double perturbation = config.gamma * normal(rng);
    diag.perturbation = perturbation;
    choose_low = next.accumulator.to_double() + perturbation > 0.0;
  }
  return {PolicyStep{choose_low ? Level::Low : Level::High, diag}, next};
}

Level opt_online_level(const CostModel& model, const StochasticStats& stats) {
  const double high = model.c_high().to_double() + stats.nu - stats.mu_high;
  const double low = model.c_low().to_double() + stats.nu - stats.mu_low;
  return high < low ? Level::High : Level::Low;
}

Level BltnPolicy::start(Level initial_level) {
  state_ = BltnState{};
  state_.level = initial_level;
  return initial_level;
}

PolicyStep BltnPolicy::observe(std::int64_t arrivals) {
  auto [step, next] = bltn_fast_step(model_, arrivals, state_);
  state_ = next;
  return step;
}

std::unique_ptr<OnlinePolicy> BltnPolicy::clone() const {
  return std::make_unique<BltnPolicy>(*this);
}

Level BltnNaivePolicy::start(Level initial_level) {
  state_ = BltnNaiveState{initial_level, 0};
  history_.clear();
  return initial_level;
}

PolicyStep BltnNaivePolicy::observe(std::int64_t arrivals) {
  history_.push_back(arrivals);
  auto [step, next] = bltn_naive_step(model_, history_, state_);
  state_ = next;
  return step;
}

std::unique_ptr<OnlinePolicy> BltnNaivePolicy::clone() const {
  return std::make_unique<BltnNaivePolicy>(*this);
}

FtplPolicy::FtplPolicy(CostModel model, FtplConfig config)
    : model_(std::move(model)), config_(config), rng_(config.seed) {
  config_.validate();
}

Level FtplPolicy::start(Level initial_level) {
  state_ = FtplState{};
  rng_.seed(config_.seed);
  return initial_level;
}

PolicyStep FtplPolicy::observe(std::int64_t arrivals) {
  auto [step, next] = ftpl_step(model_, arrivals, state_, config_, rng_);
  state_ = next;
  return step;
}

std::unique_ptr<OnlinePolicy> FtplPolicy::clone() const {
  return std::make_unique<FtplPolicy>(*this);
}

std::unique_ptr<OnlinePolicy> StaticPolicy::clone() const {
  return std::make_unique<StaticPolicy>(*this);
}

std::unique_ptr<OnlinePolicy> OptOnlinePolicy::clone() const {
  return std::make_unique<OptOnlinePolicy>(*this);
}

std::unique_ptr<OnlinePolicy> static_policy(Level level) {
  return std::make_unique<StaticPolicy>(level);
}

std::unique_ptr<OnlinePolicy> opt_online_policy(const CostModel& model,
                                                const StochasticStats& stats) {
  stats.validate();
  return std::make_unique<OptOnlinePolicy>(model, stats);
}

PolicyRun run_policy(OnlinePolicy& policy, const CostModel& model, const ArrivalTrace& arrivals,
                     Level initial_level) {
  const auto counts = arrivals.counts();
  std::vector<Level> levels;
  std::vector<PolicyStep> steps;
  levels.reserve(counts.size());
  steps.reserve(counts.size());

  Level current = policy.start(initial_level);
  for (const std::int64_t x : counts) {
    levels.push_back(current);
    steps.push_back(policy.observe(x));
    current = steps.back().next_level;
  }
  DecisionTrace decisions(std::move(levels), initial_level);
  CostLedger ledger = evaluate(model, arrivals, decisions);
  return {std::move(decisions), std::move(ledger), std::move(steps)};
}

}  // namespace edgerent
