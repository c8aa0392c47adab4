#include "edgerent/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgerent/format.hpp"

namespace edgerent {
namespace {

struct Scalars {
  double w;
  double dc;
  double dk;
};

Scalars scalars(const CostModel& model) {
  return {model.w_sum().to_double(), model.delta_c().to_double(),
          static_cast<double>(model.delta_kappa())};
}

void require_lambda(double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) {
    throw RegimeError("lambda must be finite and strictly greater than 1");
  }
}

// Geometric tail sum_{k>=n} exp(-2 gap^2 k / dk^2), evaluated as
// exp(-2 gap^2 n / dk^2) / (1 - exp(-2 gap^2 / dk^2)) with n = dwell.
double tail(double gap, double dwell, double dk) {
  const double rate = 2.0 * gap * gap / (dk * dk);
  return std::exp(-rate * dwell) / -std::expm1(-rate);
}

double drift_term(double lambda, double gap, double w, double dk) {
  return std::exp(-2.0 * (lambda - 1.0) * (lambda - 1.0) * w * gap / (lambda * dk * dk));
}

}  // namespace

StochasticRegime classify(const CostModel& model, const StochasticStats& stats) {
  const double dc = model.delta_c().to_double();
  const double dmu = stats.delta_mu();
  if (dmu > dc) return StochasticRegime::HighFavoured;
  if (dmu < dc) return StochasticRegime::LowFavoured;
  return StochasticRegime::Balanced;
}

std::string to_string(StochasticRegime regime) {
  switch (regime) {
    case StochasticRegime::HighFavoured: return "high";
    case StochasticRegime::LowFavoured: return "low";
    case StochasticRegime::Balanced: return "balanced";
  }
  return "unknown";
}

double rho_upper_bltn(const CostModel& model, RhoUpperVariant variant) {
  const auto [w, dc, dk] = scalars(model);
  if (!(dk > dc)) throw RegimeError("competitive-ratio upper bound needs dkappa > dc");
  if (!(w > 0.0)) throw RegimeError("competitive-ratio upper bound needs W > 0");
  const double ch = model.c_high().to_double();
  const double cl = model.c_low().to_double();
  const double low_dwell_denominator = variant == RhoUpperVariant::Stated ? dc : dk;
  return 1.0 + (2.0 * w + dk) / (w * (1.0 + ch / (dk - dc) + cl / low_dwell_denominator));
}

double rho_lower_any(const CostModel& model) {
  const auto [w, dc, dk] = scalars(model);
  const double ch = model.c_high().to_double();
  const double cl = model.c_low().to_double();
  const double overloaded = (dk + cl) / ch;
  const double rent_ratio = cl > 0.0 ? ch / cl : std::numeric_limits<double>::infinity();
  const double cycle = (dk + cl + ch + w) / (ch + cl + w);
  return std::min({overloaded, rent_ratio, cycle});
}

double warmup_slots(const CostModel& model, double delta_mu, double lambda) {
  const auto [w, dc, dk] = scalars(model);
  return std::ceil(lambda * w / std::abs(delta_mu - dc));
}

double lemma1_f(const CostModel& model, double delta_mu, double lambda) {
  const auto [w, dc, dk] = scalars(model);
  if (!(delta_mu > dc)) throw RegimeError("f applies only when delta_mu > delta_c");
  require_lambda(lambda);
  const double gap = delta_mu - dc;
  const double n = std::ceil(lambda * w / gap);
  return (w + gap) * (2.0 * n * tail(gap, w / dc, dk) + drift_term(lambda, gap, w, dk));
}

double lemma1_g(const CostModel& model, double delta_mu, double lambda) {
  const auto [w, dc, dk] = scalars(model);
  if (!(delta_mu < dc)) throw RegimeError("g applies only when delta_mu < delta_c");
  require_lambda(lambda);
  const double gap = dc - delta_mu;
  const double n = std::ceil(lambda * w / gap);
  return (gap + w) * (drift_term(lambda, gap, w, dk) + 2.0 * n * tail(gap, w / (dk - dc), dk));
}

double lemma1_delta_bound(const CostModel& model, const StochasticStats& stats, std::size_t t,
                          double lambda) {
  const auto regime = classify(model, stats);
  if (regime == StochasticRegime::Balanced) {
    throw RegimeError("per-slot excess bound needs delta_mu != delta_c");
  }
  require_lambda(lambda);
  const double dmu = stats.delta_mu();
  const double gap = std::abs(dmu - model.delta_c().to_double());
  if (static_cast<double>(t) <= warmup_slots(model, dmu, lambda)) {
    return model.w_sum().to_double() + gap;
  }
  return regime == StochasticRegime::HighFavoured ? lemma1_f(model, dmu, lambda)
                                                  : lemma1_g(model, dmu, lambda);
}

double sigma_objective(const CostModel& model, const StochasticStats& stats, std::size_t horizon,
                       double lambda) {
  const auto regime = classify(model, stats);
  if (regime == StochasticRegime::Balanced) return 1.0;
  if (horizon == 0) throw std::invalid_argument("horizon must be >= 1");
  require_lambda(lambda);
  const double dmu = stats.delta_mu();
  const double w = model.w_sum().to_double();
  const double gap = std::abs(dmu - model.delta_c().to_double());
  const double T = static_cast<double>(horizon);
  const double warm = std::min(warmup_slots(model, dmu, lambda), T);
  const bool high = regime == StochasticRegime::HighFavoured;
  const double steady = high ? lemma1_f(model, dmu, lambda) : lemma1_g(model, dmu, lambda);
  const double per_slot_opt = high ? stats.nu - stats.mu_high + model.c_high().to_double()
                                   : stats.nu - stats.mu_low + model.c_low().to_double();
  const double excess = warm * (w + gap) + (T - warm) * steady;
  return 1.0 + excess / (T * per_slot_opt);
}

SigmaBound sigma_upper_bltn(const CostModel& model, const StochasticStats& stats,
                            std::size_t horizon, const LambdaSearch& search) {
  stats.validate();
  if (horizon == 0) throw std::invalid_argument("horizon must be >= 1");
  SigmaBound out;
  out.regime = classify(model, stats);
  if (out.regime == StochasticRegime::Balanced) return out;
  if (!(search.lambda_min > 1.0) || !(search.lambda_max > search.lambda_min) ||
      search.grid_points < 2) {
    throw std::invalid_argument("invalid lambda search range");
  }

  const auto objective = [&](double lambda) {
    return sigma_objective(model, stats, horizon, lambda);
  };
  const double lo = std::log(search.lambda_min);
  const double hi = std::log(search.lambda_max);
  std::vector<double> grid(search.grid_points);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid.size() - 1));
  }
  grid.back() = search.lambda_max;

  std::size_t best = 0;
  double best_value = objective(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = objective(grid[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double best_lambda = grid[best];

  // Golden-section refinement on the bracket around the best grid point.
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int iter = 0; iter < 200 && (b - a) > search.rel_tol * std::abs(b); ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
    for (const auto& [lam, val] : {std::pair{c, fc}, std::pair{d, fd}}) {
      if (val < best_value) {
        best_value = val;
        best_lambda = lam;
      }
    }
  }
  out.bound = best_value;
  out.lambda_star = best_lambda;
  return out;
}

BoundReport bound_report(const CostModel& model, const std::optional<StochasticStats>& stats,
                         std::size_t horizon, const LambdaSearch& search) {
  BoundReport r;
  r.params = model.params();
  r.stats = stats;
  r.horizon = horizon;
  try {
    r.rho_upper = rho_upper_bltn(model, RhoUpperVariant::Stated);
    r.rho_upper_derivation = rho_upper_bltn(model, RhoUpperVariant::DerivationDwell);
  } catch (const RegimeError&) {
  }
  r.rho_lower = rho_lower_any(model);
  if (stats) {
    r.sigma = sigma_upper_bltn(model, *stats, horizon, search);
    if (r.sigma->lambda_star) {
      r.lemma_value = r.sigma->regime == StochasticRegime::HighFavoured
                          ? lemma1_f(model, stats->delta_mu(), *r.sigma->lambda_star)
                          : lemma1_g(model, stats->delta_mu(), *r.sigma->lambda_star);
    }
  }
  return r;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_g12(*v) : ""; }

}  // namespace

std::string bound_report_csv_header() {
  return "c_high,c_low,kappa_high,kappa_low,w_hl,w_lh,nu,mu_high,mu_low,T,regime,rho_upper,"
         "rho_upper_derivation,rho_lower,sigma_upper,lambda_star,lemma_value";
}

std::string bound_report_csv_row(const BoundReport& r) {
  const auto& p = r.params;
  std::string row = p.c_high.str() + ',' + p.c_low.str() + ',' + std::to_string(p.kappa_high) +
                    ',' + std::to_string(p.kappa_low) + ',' + p.w_hl.str() + ',' + p.w_lh.str();
  if (r.stats) {
    row += ',' + format_g12(r.stats->nu) + ',' + format_g12(r.stats->mu_high) + ',' +
           format_g12(r.stats->mu_low);
  } else {
    row += ",,,";
  }
  row += ',' + std::to_string(r.horizon);
  row += ',' + (r.sigma ? to_string(r.sigma->regime) : std::string());
  row += ',' + opt(r.rho_upper) + ',' + opt(r.rho_upper_derivation) + ',' + format_g12(r.rho_lower);
  row += ',' + (r.sigma ? format_g12(r.sigma->bound) : std::string());
  row += ',' + (r.sigma ? opt(r.sigma->lambda_star) : std::string());
  row += ',' + opt(r.lemma_value);
  return row;
}

std::string bound_report_jsonl(const BoundReport& r) {
  using nlohmann::ordered_json;
  const auto num = [](const std::optional<double>& v) -> ordered_json {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
  };
  ordered_json j;
  j["c_high"] = r.params.c_high.to_double();
  j["c_low"] = r.params.c_low.to_double();
  j["kappa_high"] = r.params.kappa_high;
  j["kappa_low"] = r.params.kappa_low;
  j["w_hl"] = r.params.w_hl.to_double();
  j["w_lh"] = r.params.w_lh.to_double();
  j["nu"] = num(r.stats ? std::optional(r.stats->nu) : std::nullopt);
  j["mu_high"] = num(r.stats ? std::optional(r.stats->mu_high) : std::nullopt);
  j["mu_low"] = num(r.stats ? std::optional(r.stats->mu_low) : std::nullopt);
  j["T"] = r.horizon;
  j["regime"] = r.sigma ? ordered_json(to_string(r.sigma->regime)) : ordered_json(nullptr);
  j["rho_upper"] = num(r.rho_upper);
  j["rho_upper_derivation"] = num(r.rho_upper_derivation);
  j["rho_lower"] = num(r.rho_lower);
  j["sigma_upper"] = num(r.sigma ? std::optional(r.sigma->bound) : std::nullopt);
  j["lambda_star"] = num(r.sigma ? r.sigma->lambda_star : std::nullopt);
  j["lemma_value"] = num(r.lemma_value);
  return j.dump();
}

}  // namespace edgerent
