#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edgerent/core.hpp"
#include "edgerent/policies.hpp"

namespace edgerent {

// ---------------------------------------------------------------------------
// i.i.d. laws

struct PoissonLaw {
  double rate = 1.0;
};

/// X = magnitude with probability p, else 0.
struct BernoulliLaw {
  double p = 0.5;
  std::int64_t magnitude = 1;
};

/// pmf[x] = P(X = x) on the bounded support 0..pmf.size()-1.
struct PmfLaw {
  std::vector<double> pmf;
};

using IidSpec = std::variant<PoissonLaw, BernoulliLaw, PmfLaw>;

/// Throws std::invalid_argument on a non-positive rate, p outside [0,1],
/// negative pmf entries or a pmf that does not sum to 1 within 1e-12.
void validate(const IidSpec& spec);

ArrivalTrace gen_iid(const IidSpec& spec, std::size_t horizon, std::uint64_t seed);

/// Exact expectations nu, E[min(X, kappa_high)], E[min(X, kappa_low)].
StochasticStats stats_for(const IidSpec& spec, const CostModel& model);

/// E[min(X, cap)] for X ~ Poisson(rate), summed over the pmf in log space.
double poisson_truncated_mean(double rate, std::int64_t cap);

// ---------------------------------------------------------------------------
// Gilbert-Elliot modulated Poisson arrivals

enum class Regime : std::uint8_t { Low = 0, High = 1 };

struct GilbertElliotSpec {
  double p_hl = 0.1;
  double p_lh = 0.1;
  double lambda_high = 800.0;
  double lambda_low = 300.0;
  /// Regime of slot 1; drawn from the stationary law when empty.
  std::optional<Regime> initial;

  void validate() const;
  /// Long-run fraction of slots in the high regime, p_lh / (p_lh + p_hl)
  /// (1/2 when the chain never moves).
  double stationary_high() const;
};

struct GilbertElliotTrace {
  ArrivalTrace trace;
  std::vector<Regime> path;
};

GilbertElliotTrace gen_gilbert_elliot(const GilbertElliotSpec& spec, std::size_t horizon,
                                      std::uint64_t seed);

/// Stationary mixture of the two Poisson laws.
StochasticStats stationary_stats(const GilbertElliotSpec& spec, const CostModel& model);

// ---------------------------------------------------------------------------
// Adversarial constructions

/// kappa_high arrivals for t1 slots, then kappa_low arrivals for t2 slots.
ArrivalTrace gen_lower_bound_adversary(const CostModel& model, std::size_t t1, std::size_t t2);

struct AdversaryResult {
  /// max over prefixes of the adaptive trace of policy cost / OPT-OFF cost.
  double ratio = 0.0;
  /// Prefix realising `ratio`.
  ArrivalTrace worst_trace{{0}};
  /// Full adaptive trace of length t_max.
  ArrivalTrace trace{{0}};
  /// Length of the first overloaded block (slots until the policy moves to
  /// HIGH) and of the following underloaded block; 0 when not reached.
  std::size_t t1 = 0;
  std::size_t t2 = 0;
  /// Ratio of the policy against the two-block alternative (HIGH for t1
  /// slots, then LOW) on the first t1 + t2 slots, when both blocks closed.
  std::optional<double> alt_ratio;
  /// The policy never switched within t_max.
  bool capped = false;
};

/// Feeds kappa_high arrivals while the policy rents LOW and kappa_low while
/// it rents HIGH, for t_max slots. Requires a deterministic policy.
AdversaryResult adaptive_adversary_ratio(const CostModel& model, const OnlinePolicy& policy,
                                         std::size_t t_max, Level initial_level = Level::Low);

// ---------------------------------------------------------------------------
// Trace files: CSV with header `slot,arrivals` (1-indexed), or a headerless
// single column of counts.

ArrivalTrace read_trace(std::istream& in);
void write_trace(const ArrivalTrace& trace, std::ostream& out);
ArrivalTrace load_trace(const std::filesystem::path& path);
void save_trace(const ArrivalTrace& trace, const std::filesystem::path& path);

}  // namespace edgerent
