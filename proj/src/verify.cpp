#include "edgerent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "edgerent/arrivals.hpp"
#include "edgerent/bounds.hpp"
#include "edgerent/offline.hpp"
#include "edgerent/policies.hpp"

namespace edgerent {
namespace {

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Cost quarters(std::int64_t q) { return Cost::from_micros(q * (Cost::kScale / 4)); }

std::string describe_model(const CostModel& m) {
  std::ostringstream os;
  os << "c_high=" << m.c_high().str() << " c_low=" << m.c_low().str()
     << " kappa_high=" << m.kappa_high() << " kappa_low=" << m.kappa_low()
     << " w_hl=" << m.w_hl().str() << " w_lh=" << m.w_lh().str();
  return os.str();
}

std::size_t draw_horizon(std::mt19937_64& rng, std::size_t max_horizon) {
  return static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_horizon)));
}

}  // namespace

CostModel random_model(std::mt19937_64& rng) {
  CostParams p;
  p.kappa_low = uniform(rng, 1, 400);
  const std::int64_t dk = uniform(rng, 2, 600);
  p.kappa_high = p.kappa_low + dk;
  p.c_low = quarters(uniform(rng, 0, 2000));
  p.c_high = p.c_low + quarters(uniform(rng, 1, 4 * dk - 1));
  if (uniform(rng, 0, 7) == 0) {
    p.w_hl = Cost{};
    p.w_lh = Cost{};
  } else {
    p.w_hl = quarters(uniform(rng, 0, 3200));
    p.w_lh = quarters(uniform(rng, 0, 3200));
  }
  return CostModel(p);
}

ArrivalTrace random_trace(const CostModel& model, std::size_t horizon, std::mt19937_64& rng) {
  const std::int64_t kh = model.kappa_high();
  const std::int64_t kl = model.kappa_low();
  const std::int64_t dk = model.delta_kappa();
  std::vector<std::int64_t> counts;
  counts.reserve(horizon);

  if (uniform(rng, 0, 3) == 0) {
    for (std::size_t t = 0; t < horizon; ++t) counts.push_back(uniform(rng, 0, kh + kh / 2));
    return ArrivalTrace(std::move(counts));
  }

  const double w = model.w_sum().to_double();
  const double dc = model.delta_c().to_double();
  const double gap = static_cast<double>(dk) - dc;
  const double scales[] = {1.0, std::max(1.0, w / dc), std::max(1.0, w / gap),
                           3.0 * std::max({1.0, w / dc, w / gap})};
  while (counts.size() < horizon) {
    const double mean = scales[uniform(rng, 0, 3)];
    std::geometric_distribution<std::int64_t> len(1.0 / (1.0 + mean));
    const std::size_t n = std::min<std::size_t>(1 + len(rng), horizon - counts.size());
    const auto kind = uniform(rng, 0, 5);
    for (std::size_t i = 0; i < n; ++i) {
      switch (kind) {
        case 0: counts.push_back(kh); break;
        case 1: counts.push_back(kl); break;
        case 2: counts.push_back(0); break;
        case 3: counts.push_back(uniform(rng, 0, kh + dk)); break;
        case 4: counts.push_back(kl + uniform(rng, 0, dk)); break;
        default: counts.push_back(kh + uniform(rng, 0, dk)); break;
      }
    }
  }
  return ArrivalTrace(std::move(counts));
}

BatteryResult check_bltn_equivalence(std::size_t cases, std::size_t max_horizon,
                                     std::uint64_t seed) {
  BatteryResult r{"bltn-naive-vs-fast", cases, 0, {}, 0.0};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const CostModel model = random_model(rng);
    const ArrivalTrace trace = random_trace(model, draw_horizon(rng, max_horizon), rng);
    const Level initial = uniform(rng, 0, 1) ? Level::High : Level::Low;
    BltnPolicy fast(model);
    BltnNaivePolicy naive(model);
    const PolicyRun run_fast = run_policy(fast, model, trace, initial);
    const PolicyRun run_naive = run_policy(naive, model, trace, initial);
    const auto a = run_fast.decisions.levels();
    const auto b = run_naive.decisions.levels();
    r.extreme = std::max(r.extreme, static_cast<double>(trace.horizon()));
    const auto mismatch = std::mismatch(a.begin(), a.end(), b.begin());
    if (mismatch.first != a.end()) {
      if (r.violations++ == 0) {
        r.first_violation = "case " + std::to_string(c) + " (" + describe_model(model) +
                            ", T=" + std::to_string(trace.horizon()) + ") differs at slot " +
                            std::to_string(mismatch.first - a.begin() + 1);
      }
    }
  }
  return r;
}

BatteryResult check_dwell_times(const CostModel* model, std::size_t cases,
                                std::size_t max_horizon, std::uint64_t seed) {
  BatteryResult r{"opt-off-dwell-times", cases, 0, {}, 0.0};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const CostModel m = model ? *model : random_model(rng);
    const ArrivalTrace trace = random_trace(m, draw_horizon(rng, max_horizon), rng);
    const Level initial = uniform(rng, 0, 1) ? Level::High : Level::Low;
    const DwellReport report = verify_dwell_times(m, opt_off(m, trace, initial).decisions);
    r.extreme += static_cast<double>(report.runs_checked);
    if (!report.ok() && r.violations++ == 0) {
      const auto& v = report.violations.front();
      r.first_violation = "case " + std::to_string(c) + " (" + describe_model(m) + "): " +
                          std::string(to_string(v.level)) + " run [" + std::to_string(v.first) +
                          "," + std::to_string(v.last) + "] shorter than " +
                          std::to_string(v.required);
    }
  }
  return r;
}

BatteryResult check_upper_bound(const CostModel& model, std::size_t cases,
                                std::size_t max_horizon, std::uint64_t seed) {
  BatteryResult r{"bltn-upper-bound", cases, 0, {}, 0.0};
  double bound = 0.0;
  try {
    bound = rho_upper_bltn(model);
  } catch (const RegimeError& e) {
    r.violations = 1;
    r.first_violation = e.what();
    return r;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    ArrivalTrace trace{{0}};
    if (c % 8 == 7) {
      const auto half = static_cast<std::int64_t>(std::max<std::size_t>(1, max_horizon / 2));
      trace = gen_lower_bound_adversary(model, static_cast<std::size_t>(uniform(rng, 1, half)),
                                        static_cast<std::size_t>(uniform(rng, 1, half)));
    } else {
      trace = random_trace(model, draw_horizon(rng, max_horizon), rng);
    }
    BltnPolicy bltn(model);
    const CostLedger ledger = run_policy(bltn, model, trace).ledger;
    const std::vector<Cost> best = opt_off_prefix_costs(model, trace);
    Cost cumulative;
    double worst = 0.0;
    std::size_t worst_t = 0;
    for (std::size_t t = 0; t < best.size(); ++t) {
      cumulative += ledger.records()[t].cost.total();
      if (best[t] > Cost{}) {
        const double ratio = cumulative.to_double() / best[t].to_double();
        if (ratio > worst) {
          worst = ratio;
          worst_t = t + 1;
        }
      }
    }
    r.extreme = std::max(r.extreme, worst);
    if (worst > bound + 1e-9 && r.violations++ == 0) {
      r.first_violation = "case " + std::to_string(c) + ": ratio " + std::to_string(worst) +
                          " on a prefix of length " + std::to_string(worst_t) + " exceeds " +
                          std::to_string(bound);
    }
  }
  return r;
}

BatteryResult check_lower_bound_realization(const CostModel& model, std::size_t t_max) {
  BatteryResult r{"bltn-lower-bound-realized", 1, 0, {}, 0.0};
  const BltnPolicy bltn(model);
  const AdversaryResult adv = adaptive_adversary_ratio(model, bltn, t_max);
  const double lower = rho_lower_any(model);
  r.extreme = adv.ratio;
  if (adv.ratio < lower - 1e-9) {
    r.violations = 1;
    r.first_violation = "adaptive adversary ratio " + std::to_string(adv.ratio) +
                        " below lower bound " + std::to_string(lower);
  }
  return r;
}

}  // namespace edgerent
