#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "edgerent/arrivals.hpp"
#include "edgerent/core.hpp"
#include "edgerent/policies.hpp"

namespace edgerent {

enum class PolicyKind { Bltn, BltnNaive, Ftpl, StaticHigh, StaticLow, OptOn, OptOff };

std::string to_string(PolicyKind kind);
/// bltn, bltn-naive, ftpl, static-high, static-low, opt-on, opt-off
PolicyKind parse_policy_kind(std::string_view name);

/// Where each trial's trace comes from. A fixed trace is reused by every trial.
using ArrivalSource = std::variant<IidSpec, GilbertElliotSpec, ArrivalTrace>;

std::string describe(const ArrivalSource& source);

/// poisson:RATE | bernoulli:P,MAGNITUDE | pmf:P0,P1,... |
/// ge:LAMBDA_HIGH,LAMBDA_LOW[,P_HL,P_LH[,H|L]]
ArrivalSource parse_arrival_source(std::string_view text);

struct ExperimentSpec {
  CostParams params;
  bool allow_degenerate = false;
  ArrivalSource arrivals = IidSpec{PoissonLaw{700.0}};
  /// Ignored for a fixed trace.
  std::size_t horizon = 1000;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::vector<PolicyKind> policies{PolicyKind::Bltn, PolicyKind::Ftpl, PolicyKind::OptOn,
                                   PolicyKind::OptOff};
  /// The seed field is replaced per trial.
  FtplConfig ftpl;
  Level initial_level = Level::Low;
  bool record_timeseries = false;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct PolicySummary {
  std::string label;
  PolicyKind kind = PolicyKind::Bltn;
  double mean_total = 0.0;
  double ci99 = 0.0;
  double rent = 0.0;
  double service = 0.0;
  double switching = 0.0;
  double switches = 0.0;
  /// max over trials of total / OPT-OFF total
  double rho_hat = 0.0;
  /// mean total / mean OPT-ON total, with its delta-method 99% half-width
  double sigma_hat = 0.0;
  double sigma_ci99 = 0.0;
  std::vector<double> totals;
  /// Trial-averaged cumulative cost / t, when recorded.
  std::vector<double> time_avg_cost;
};

struct RunSummary {
  std::vector<PolicySummary> policies;
  /// Per-trial benchmark totals, in trial order.
  std::vector<double> opt_off_totals;
  std::vector<double> opt_on_totals;
  StochasticStats opt_on_stats;
  std::string opt_on_label;
  std::size_t horizon = 0;

  const PolicySummary& at(PolicyKind kind) const;
};

struct EmpiricalRatios {
  double rho_hat = 0.0;
  double sigma_hat = 0.0;
  double sigma_ci99 = 0.0;
};

/// rho_hat is the max over trials of policy / OPT-OFF (a 0/0 trial counts as
/// 1), sigma_hat is mean(policy) / mean(OPT-ON). Inputs are paired by trial.
EmpiricalRatios empirical_ratios(std::span<const double> policy, std::span<const double> opt_off,
                                 std::span<const double> opt_on);

/// Per trial i the trace is generated with seed + i and FTPL gets a seed
/// derived from (seed, i); every requested policy, OPT-OFF and OPT-ON run on
/// that trace. Results are reduced in trial order, so the summary depends
/// only on the spec. A failing trial is rethrown with its seed attached.
RunSummary run_experiment(const ExperimentSpec& spec);

/// Trace of trial `trial` (seeded with spec.seed + trial).
ArrivalTrace trial_trace(const ExperimentSpec& spec, std::size_t trial);
/// FTPL seed of trial `trial`.
std::uint64_t ftpl_trial_seed(std::uint64_t seed, std::size_t trial);

/// Statistics handed to OPT-ON for a given source: exact for i.i.d. laws,
/// the stationary mixture for Gilbert-Elliot, plug-in means for a fixed trace.
StochasticStats opt_on_stats(const ArrivalSource& source, const CostModel& model);

enum class SweepParam {
  /// c_high = c_low + value
  DeltaC,
  /// w_hl = w_lh = value
  SwitchCost,
};

std::string to_string(SweepParam param);

struct SweepRange {
  SweepParam param = SweepParam::SwitchCost;
  Cost start;
  Cost stop;
  Cost step;

  /// start, start + step, ... up to and including stop. Throws unless
  /// step > 0 and start <= stop.
  std::vector<Cost> values() const;
};

struct SweepPoint {
  Cost value;
  std::optional<RunSummary> summary;
  /// Why the point was skipped (model invariant violated).
  std::string skipped;
};

/// Runs `base` at every swept value with the same seed, so trial i sees the
/// same trace at every point.
std::vector<SweepPoint> sweep(const ExperimentSpec& base, const SweepRange& range);

/// Header: swept_param,value,policy,mean_total,ci99,rent,service,switch,switches,rho_hat,sigma_hat
void write_sweep_header(std::ostream& out);
void write_sweep_rows(std::ostream& out, const std::string& swept_param, const std::string& value,
                      const RunSummary& summary);
/// Skipped sweep points become `#`-prefixed warning lines.
void write_sweep_csv(std::ostream& out, SweepParam param, const std::vector<SweepPoint>& points);

/// Header: slot,policy,mean_time_avg_cost
void write_timeseries_csv(std::ostream& out, const RunSummary& summary);

/// Header: slot,level,delta,triggered,tau[,perturbation]
void write_policy_diagnostics(std::ostream& out, const PolicyRun& run, bool with_perturbation);

}  // namespace edgerent
