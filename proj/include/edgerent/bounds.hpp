#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "edgerent/core.hpp"
#include "edgerent/policies.hpp"

namespace edgerent {

/// A bound was requested outside the parameter regime it is stated for.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sign of delta_mu - delta_c, which decides the level OPT-ON rents.
enum class StochasticRegime { HighFavoured, LowFavoured, Balanced };

StochasticRegime classify(const CostModel& model, const StochasticStats& stats);
std::string to_string(StochasticRegime regime);

enum class RhoUpperVariant {
  /// 1 + (2W + dk) / (W (1 + c_H/(dk - dc) + c_L/dc))
  Stated,
  /// Same with c_L/dk in place of c_L/dc (the dwell used inside the
  /// derivation); for sensitivity reporting only.
  DerivationDwell,
};

/// Worst-case ratio of BLTN to the offline optimum. Throws RegimeError
/// unless dk > dc.
double rho_upper_bltn(const CostModel& model, RhoUpperVariant variant = RhoUpperVariant::Stated);

/// min{(dk + c_L)/c_H, c_H/c_L, (dk + c_L + c_H + W)/(c_H + c_L + W)}; no
/// deterministic online policy can do better.
double rho_lower_any(const CostModel& model);

// Hoeffding-based per-slot excess of BLTN over OPT-ON. `lambda` is the free
// tuning parameter (> 1), not an arrival rate.

/// ceil(lambda W / |delta_mu - delta_c|): the warm-up horizon of the bound.
double warmup_slots(const CostModel& model, double delta_mu, double lambda);

/// Requires delta_mu > delta_c and lambda > 1, else RegimeError.
double lemma1_f(const CostModel& model, double delta_mu, double lambda);
/// Requires delta_mu < delta_c and lambda > 1, else RegimeError.
double lemma1_g(const CostModel& model, double delta_mu, double lambda);

/// Per-slot excess bound at slot t: W + |delta_mu - delta_c| while
/// t <= warm-up (inclusive), f or g afterwards.
double lemma1_delta_bound(const CostModel& model, const StochasticStats& stats, std::size_t t,
                          double lambda);

/// The bracketed objective minimised over lambda for a horizon T.
/// The warm-up count is capped at T so that the per-slot bounds are summed
/// over exactly T slots.
double sigma_objective(const CostModel& model, const StochasticStats& stats, std::size_t horizon,
                       double lambda);

struct LambdaSearch {
  double lambda_min = 1.0 + 1e-6;
  double lambda_max = 100.0;
  std::size_t grid_points = 256;
  double rel_tol = 1e-9;
};

struct SigmaBound {
  double bound = 1.0;
  /// Empty in the balanced regime.
  std::optional<double> lambda_star;
  StochasticRegime regime = StochasticRegime::Balanced;
};

/// Upper bound on E[cost BLTN] / E[cost OPT-ON] over T slots: log-spaced grid
/// over lambda, then golden-section refinement around the best grid point.
/// Returns 1 in the balanced regime.
SigmaBound sigma_upper_bltn(const CostModel& model, const StochasticStats& stats,
                            std::size_t horizon, const LambdaSearch& search = {});

struct BoundReport {
  CostParams params;
  std::optional<StochasticStats> stats;
  std::size_t horizon = 0;
  std::optional<double> rho_upper;
  std::optional<double> rho_upper_derivation;
  double rho_lower = 0.0;
  std::optional<SigmaBound> sigma;
  /// f (HighFavoured) or g (LowFavoured) at lambda_star.
  std::optional<double> lemma_value;
};

/// Evaluates every bound that applies to the model; inapplicable ones stay empty.
BoundReport bound_report(const CostModel& model, const std::optional<StochasticStats>& stats,
                         std::size_t horizon, const LambdaSearch& search = {});

std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& report);
std::string bound_report_jsonl(const BoundReport& report);

}  // namespace edgerent
