#include "edgerent/arrivals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "edgerent/offline.hpp"

namespace edgerent {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::int64_t draw_poisson(std::mt19937_64& rng, double rate) {
  return std::poisson_distribution<std::int64_t>(rate)(rng);
}

}  // namespace

void validate(const IidSpec& spec) {
  std::visit(overloaded{
                 [](const PoissonLaw& law) {
                   if (!(law.rate > 0.0) || !std::isfinite(law.rate)) {
                     throw std::invalid_argument("Poisson rate must be positive and finite");
                   }
                 },
                 [](const BernoulliLaw& law) {
                   if (!(law.p >= 0.0 && law.p <= 1.0)) {
                     throw std::invalid_argument("Bernoulli p must lie in [0, 1]");
                   }
                   if (law.magnitude < 0) {
                     throw std::invalid_argument("Bernoulli magnitude must be non-negative");
                   }
                 },
                 [](const PmfLaw& law) {
                   if (law.pmf.empty()) throw std::invalid_argument("pmf must be non-empty");
                   for (const double p : law.pmf) {
                     if (!(p >= 0.0) || !std::isfinite(p)) {
                       throw std::invalid_argument("pmf entries must be finite and non-negative");
                     }
                   }
                   const double total = std::accumulate(law.pmf.begin(), law.pmf.end(), 0.0);
                   if (std::abs(total - 1.0) > 1e-12) {
                     throw std::invalid_argument("pmf must sum to 1 within 1e-12");
                   }
                 },
             },
             spec);
}

ArrivalTrace gen_iid(const IidSpec& spec, std::size_t horizon, std::uint64_t seed) {
  validate(spec);
  if (horizon == 0) throw std::invalid_argument("horizon must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> counts(horizon);
  std::visit(overloaded{
                 [&](const PoissonLaw& law) {
                   std::poisson_distribution<std::int64_t> dist(law.rate);
                   for (auto& x : counts) x = dist(rng);
                 },
                 [&](const BernoulliLaw& law) {
                   std::bernoulli_distribution dist(law.p);
                   for (auto& x : counts) x = dist(rng) ? law.magnitude : 0;
                 },
                 [&](const PmfLaw& law) {
                   std::discrete_distribution<std::int64_t> dist(law.pmf.begin(), law.pmf.end());
                   for (auto& x : counts) x = dist(rng);
                 },
             },
             spec);
  return ArrivalTrace(std::move(counts));
}

double poisson_truncated_mean(double rate, std::int64_t cap) {
  // E[min(X, c)] = c - sum_{k<c} (c - k) P(X = k)
  const double log_rate = std::log(rate);
  double deficit = 0.0;
  for (std::int64_t k = 0; k < cap; ++k) {
    const double log_p = static_cast<double>(k) * log_rate - rate - std::lgamma(static_cast<double>(k) + 1.0);
    deficit += static_cast<double>(cap - k) * std::exp(log_p);
  }
  return static_cast<double>(cap) - deficit;
}

StochasticStats stats_for(const IidSpec& spec, const CostModel& model) {
  validate(spec);
  const std::int64_t kh = model.kappa_high();
  const std::int64_t kl = model.kappa_low();
  StochasticStats out = std::visit(
      overloaded{
          [&](const PoissonLaw& law) {
            return StochasticStats{law.rate, poisson_truncated_mean(law.rate, kh),
                                   poisson_truncated_mean(law.rate, kl)};
          },
          [&](const BernoulliLaw& law) {
            const auto m = law.magnitude;
            return StochasticStats{law.p * static_cast<double>(m),
                                   law.p * static_cast<double>(std::min(m, kh)),
                                   law.p * static_cast<double>(std::min(m, kl))};
          },
          [&](const PmfLaw& law) {
            StochasticStats s;
            for (std::size_t x = 0; x < law.pmf.size(); ++x) {
              const auto xi = static_cast<std::int64_t>(x);
              s.nu += law.pmf[x] * static_cast<double>(xi);
              s.mu_high += law.pmf[x] * static_cast<double>(std::min(xi, kh));
              s.mu_low += law.pmf[x] * static_cast<double>(std::min(xi, kl));
            }
            return s;
          },
      },
      spec);
  out.validate();
  return out;
}

void GilbertElliotSpec::validate() const {
  if (!(p_hl >= 0.0 && p_hl <= 1.0 && p_lh >= 0.0 && p_lh <= 1.0)) {
    throw std::invalid_argument("Gilbert-Elliot transition probabilities must lie in [0, 1]");
  }
  if (!(lambda_low > 0.0) || !std::isfinite(lambda_high)) {
    throw std::invalid_argument("Gilbert-Elliot rates must be positive and finite");
  }
  if (!(lambda_low <= lambda_high)) {
    throw std::invalid_argument("Gilbert-Elliot requires lambda_low <= lambda_high");
  }
}

double GilbertElliotSpec::stationary_high() const {
  const double total = p_hl + p_lh;
  return total > 0.0 ? p_lh / total : 0.5;
}

GilbertElliotTrace gen_gilbert_elliot(const GilbertElliotSpec& spec, std::size_t horizon,
                                      std::uint64_t seed) {
  spec.validate();
  if (horizon == 0) throw std::invalid_argument("horizon must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Regime regime = spec.initial ? *spec.initial
                               : (unit(rng) < spec.stationary_high() ? Regime::High : Regime::Low);
  std::vector<std::int64_t> counts(horizon);
  std::vector<Regime> path(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    path[t] = regime;
    counts[t] = draw_poisson(rng, regime == Regime::High ? spec.lambda_high : spec.lambda_low);
    const double leave = regime == Regime::High ? spec.p_hl : spec.p_lh;
    if (unit(rng) < leave) regime = regime == Regime::High ? Regime::Low : Regime::High;
  }
  return {ArrivalTrace(std::move(counts)), std::move(path)};
}

StochasticStats stationary_stats(const GilbertElliotSpec& spec, const CostModel& model) {
  spec.validate();
  const double w = spec.stationary_high();
  const StochasticStats hi = stats_for(PoissonLaw{spec.lambda_high}, model);
  const StochasticStats lo = stats_for(PoissonLaw{spec.lambda_low}, model);
  return {w * hi.nu + (1 - w) * lo.nu, w * hi.mu_high + (1 - w) * lo.mu_high,
          w * hi.mu_low + (1 - w) * lo.mu_low};
}

ArrivalTrace gen_lower_bound_adversary(const CostModel& model, std::size_t t1, std::size_t t2) {
  if (t1 == 0 || t2 == 0) throw std::invalid_argument("block lengths t1 and t2 must be >= 1");
  std::vector<std::int64_t> counts(t1, model.kappa_high());
  counts.insert(counts.end(), t2, model.kappa_low());
  return ArrivalTrace(std::move(counts));
}

AdversaryResult adaptive_adversary_ratio(const CostModel& model, const OnlinePolicy& policy,
                                         std::size_t t_max, Level initial_level) {
  if (t_max == 0) throw std::invalid_argument("t_max must be >= 1");
  auto probe = policy.clone();
  std::vector<std::int64_t> counts;
  counts.reserve(t_max);
  std::vector<std::size_t> switches;  // slots at whose end the policy changed level

  Level current = probe->start(initial_level);
  for (std::size_t t = 1; t <= t_max; ++t) {
    counts.push_back(current == Level::Low ? model.kappa_high() : model.kappa_low());
    const Level next = probe->observe(counts.back()).next_level;
    if (next != current) switches.push_back(t);
    current = next;
  }

  AdversaryResult result;
  result.trace = ArrivalTrace(counts);
  auto replay = policy.clone();
  const PolicyRun run = run_policy(*replay, model, result.trace, initial_level);
  const std::vector<Cost> optimum = opt_off_prefix_costs(model, result.trace, initial_level);

  const auto records = run.ledger.records();
  Cost cumulative;
  std::size_t worst = 1;
  for (std::size_t t = 1; t <= records.size(); ++t) {
    cumulative += records[t - 1].cost.total();
    const double r = cumulative.to_double() / optimum[t - 1].to_double();
    if (r > result.ratio) {
      result.ratio = r;
      worst = t;
    }
  }
  result.worst_trace = ArrivalTrace(std::vector<std::int64_t>(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(worst)));
  result.capped = switches.empty();

  if (!switches.empty()) result.t1 = switches[0];
  if (switches.size() >= 2) {
    result.t2 = switches[1] - switches[0];
    const std::size_t n = result.t1 + result.t2;
    const ArrivalTrace blocks(std::vector<std::int64_t>(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(n)));
    std::vector<Level> alt(n, Level::Low);
    std::fill(alt.begin(), alt.begin() + static_cast<std::ptrdiff_t>(result.t1), Level::High);
    const Cost alt_cost = evaluate(model, blocks, DecisionTrace(alt, initial_level)).total();
    Cost policy_cost;
    for (std::size_t t = 0; t < n; ++t) policy_cost += records[t].cost.total();
    result.alt_ratio = policy_cost.to_double() / alt_cost.to_double();
  }
  return result;
}

ArrivalTrace read_trace(std::istream& in) {
  std::vector<std::int64_t> counts;
  std::string line;
  std::size_t line_no = 0;
  bool headered = false;
  bool first_data = true;

  const auto parse_int = [&](std::string_view field) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
      field.remove_suffix(1);
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": malformed integer '" +
                                  std::string(field) + "'");
    }
    return value;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (first_data) {
      first_data = false;
      if (line == "slot,arrivals") {
        headered = true;
        continue;
      }
    }
    std::string_view view(line);
    std::int64_t value = 0;
    if (headered) {
      const auto comma = view.find(',');
      if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
        throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                    ": expected 'slot,arrivals'");
      }
      const std::int64_t slot = parse_int(view.substr(0, comma));
      if (slot != static_cast<std::int64_t>(counts.size()) + 1) {
        throw std::invalid_argument("trace line " + std::to_string(line_no) + ": expected slot " +
                                    std::to_string(counts.size() + 1));
      }
      value = parse_int(view.substr(comma + 1));
    } else {
      value = parse_int(view);
    }
    if (value < 0) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                  ": negative arrival count");
    }
    counts.push_back(value);
  }
  if (counts.empty()) throw std::invalid_argument("trace contains no slots");
  return ArrivalTrace(std::move(counts));
}

void write_trace(const ArrivalTrace& trace, std::ostream& out) {
  out << "slot,arrivals\n";
  const auto counts = trace.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) out << (i + 1) << ',' << counts[i] << '\n';
}

ArrivalTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return read_trace(in);
}

void save_trace(const ArrivalTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file " + path.string());
  write_trace(trace, out);
}

}  // namespace edgerent
