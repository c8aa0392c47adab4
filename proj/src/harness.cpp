#include "edgerent/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "edgerent/format.hpp"
#include "edgerent/offline.hpp"
#include "edgerent/statistics.hpp"

namespace edgerent {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct TrialOutcome {
  // One entry per requested policy, in spec order.
  std::vector<CostLedger> ledgers;
  Cost opt_off_total;
  Cost opt_on_total;
};

}  // namespace

ArrivalTrace trial_trace(const ExperimentSpec& spec, std::size_t trial) {
  const std::uint64_t trace_seed = spec.seed + trial;
  return std::visit(overloaded{
                        [&](const IidSpec& law) { return gen_iid(law, spec.horizon, trace_seed); },
                        [&](const GilbertElliotSpec& ge) {
                          return gen_gilbert_elliot(ge, spec.horizon, trace_seed).trace;
                        },
                        [&](const ArrivalTrace& fixed) { return fixed; },
                    },
                    spec.arrivals);
}

std::uint64_t ftpl_trial_seed(std::uint64_t seed, std::size_t trial) {
  return splitmix64(seed ^ splitmix64(trial));
}

namespace {

TrialOutcome run_trial(const ExperimentSpec& spec, const CostModel& model,
                       const StochasticStats& stats, std::size_t trial) {
  const ArrivalTrace trace = trial_trace(spec, trial);

  TrialOutcome out;
  const OfflineSolution offline = opt_off(model, trace, spec.initial_level);
  OptOnlinePolicy opt_on(model, stats);
  const PolicyRun online = run_policy(opt_on, model, trace, spec.initial_level);
  out.opt_off_total = offline.ledger.total();
  out.opt_on_total = online.ledger.total();

  for (const PolicyKind kind : spec.policies) {
    switch (kind) {
      case PolicyKind::OptOff: out.ledgers.push_back(offline.ledger); continue;
      case PolicyKind::OptOn: out.ledgers.push_back(online.ledger); continue;
      default: break;
    }
    std::unique_ptr<OnlinePolicy> policy;
    switch (kind) {
      case PolicyKind::Bltn: policy = std::make_unique<BltnPolicy>(model); break;
      case PolicyKind::BltnNaive: policy = std::make_unique<BltnNaivePolicy>(model); break;
      case PolicyKind::Ftpl: {
        FtplConfig cfg = spec.ftpl;
        cfg.seed = ftpl_trial_seed(spec.seed, trial);
        policy = std::make_unique<FtplPolicy>(model, cfg);
        break;
      }
      case PolicyKind::StaticHigh: policy = static_policy(Level::High); break;
      case PolicyKind::StaticLow: policy = static_policy(Level::Low); break;
      default: break;
    }
    out.ledgers.push_back(run_policy(*policy, model, trace, spec.initial_level).ledger);
  }
  return out;
}

}  // namespace

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Bltn: return "bltn";
    case PolicyKind::BltnNaive: return "bltn-naive";
    case PolicyKind::Ftpl: return "ftpl";
    case PolicyKind::StaticHigh: return "static-high";
    case PolicyKind::StaticLow: return "static-low";
    case PolicyKind::OptOn: return "opt-on";
    case PolicyKind::OptOff: return "opt-off";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (const PolicyKind k : {PolicyKind::Bltn, PolicyKind::BltnNaive, PolicyKind::Ftpl,
                             PolicyKind::StaticHigh, PolicyKind::StaticLow, PolicyKind::OptOn,
                             PolicyKind::OptOff}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

std::string describe(const ArrivalSource& source) {
  return std::visit(
      overloaded{
          [](const IidSpec& law) {
            return std::visit(overloaded{
                                  [](const PoissonLaw& p) { return "poisson:" + format_g12(p.rate); },
                                  [](const BernoulliLaw& b) {
                                    return "bernoulli:" + format_g12(b.p) + "," +
                                           std::to_string(b.magnitude);
                                  },
                                  [](const PmfLaw& m) {
                                    std::string s = "pmf:";
                                    for (std::size_t i = 0; i < m.pmf.size(); ++i) {
                                      s += (i ? "," : "") + format_g12(m.pmf[i]);
                                    }
                                    return s;
                                  },
                              },
                              law);
          },
          [](const GilbertElliotSpec& ge) {
            return "ge:" + format_g12(ge.lambda_high) + "," + format_g12(ge.lambda_low) + "," +
                   format_g12(ge.p_hl) + "," + format_g12(ge.p_lh);
          },
          [](const ArrivalTrace& t) { return "trace:T=" + std::to_string(t.horizon()); },
      },
      source);
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = text.find(sep, begin);
    out.emplace_back(text.substr(begin, end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

double parse_number(const std::string& s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + s + "'");
  }
  return v;
}

std::int64_t parse_integer(const std::string& s, std::string_view what) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + s + "'");
  }
  return v;
}

}  // namespace

ArrivalSource parse_arrival_source(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("arrival spec '" + std::string(text) + "' needs KIND:ARGS");
  }
  const std::string kind(text.substr(0, colon));
  const std::vector<std::string> args = split(text.substr(colon + 1), ',');
  ArrivalSource source;
  if (kind == "poisson" && args.size() == 1) {
    source = IidSpec{PoissonLaw{parse_number(args[0], "poisson rate")}};
  } else if (kind == "bernoulli" && args.size() == 2) {
    source = IidSpec{BernoulliLaw{parse_number(args[0], "bernoulli p"),
                                  parse_integer(args[1], "bernoulli magnitude")}};
  } else if (kind == "pmf" && !args.empty()) {
    PmfLaw law;
    for (const auto& a : args) law.pmf.push_back(parse_number(a, "pmf entry"));
    source = IidSpec{law};
  } else if (kind == "ge" && (args.size() == 2 || args.size() == 4 || args.size() == 5)) {
    GilbertElliotSpec ge;
    ge.lambda_high = parse_number(args[0], "ge lambda_high");
    ge.lambda_low = parse_number(args[1], "ge lambda_low");
    if (args.size() >= 4) {
      ge.p_hl = parse_number(args[2], "ge p_hl");
      ge.p_lh = parse_number(args[3], "ge p_lh");
    }
    if (args.size() == 5) {
      if (args[4] == "H") ge.initial = Regime::High;
      else if (args[4] == "L") ge.initial = Regime::Low;
      else throw std::invalid_argument("ge initial regime must be H or L");
    }
    source = ge;
  } else {
    throw std::invalid_argument("unrecognised arrival spec '" + std::string(text) + "'");
  }
  std::visit(overloaded{
                 [](const IidSpec& law) { validate(law); },
                 [](const GilbertElliotSpec& ge) { ge.validate(); },
                 [](const ArrivalTrace&) {},
             },
             source);
  return source;
}

EmpiricalRatios empirical_ratios(std::span<const double> policy, std::span<const double> opt_off,
                                 std::span<const double> opt_on) {
  if (policy.empty() || policy.size() != opt_off.size() || policy.size() != opt_on.size()) {
    throw std::invalid_argument("empirical_ratios: samples must be paired and non-empty");
  }
  EmpiricalRatios r;
  for (std::size_t i = 0; i < policy.size(); ++i) {
    double ratio = 1.0;
    if (opt_off[i] > 0.0) {
      ratio = policy[i] / opt_off[i];
    } else if (policy[i] > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    r.rho_hat = std::max(r.rho_hat, ratio);
  }
  const SampleSummary sigma = ratio_of_means(policy, opt_on);
  r.sigma_hat = sigma.mean;
  r.sigma_ci99 = sigma.half_width;
  return r;
}

void ExperimentSpec::validate() const {
  if (trials == 0) throw std::invalid_argument("trial count must be >= 1");
  if (!std::holds_alternative<ArrivalTrace>(arrivals) && horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  if (policies.empty()) throw std::invalid_argument("policy list must be non-empty");
  ftpl.validate();
  std::visit(overloaded{
                 [](const IidSpec& law) { edgerent::validate(law); },
                 [](const GilbertElliotSpec& ge) { ge.validate(); },
                 [](const ArrivalTrace&) {},
             },
             arrivals);
}

const PolicySummary& RunSummary::at(PolicyKind kind) const {
  for (const auto& p : policies) {
    if (p.kind == kind) return p;
  }
  throw std::out_of_range("policy " + to_string(kind) + " not in summary");
}

StochasticStats opt_on_stats(const ArrivalSource& source, const CostModel& model) {
  return std::visit(overloaded{
                        [&](const IidSpec& law) { return stats_for(law, model); },
                        [&](const GilbertElliotSpec& ge) { return stationary_stats(ge, model); },
                        [&](const ArrivalTrace& t) {
                          StochasticStats s;
                          for (const std::int64_t x : t.counts()) {
                            s.nu += static_cast<double>(x);
                            s.mu_high += static_cast<double>(std::min(x, model.kappa_high()));
                            s.mu_low += static_cast<double>(std::min(x, model.kappa_low()));
                          }
                          const auto n = static_cast<double>(t.horizon());
                          return StochasticStats{s.nu / n, s.mu_high / n, s.mu_low / n};
                        },
                    },
                    source);
}

RunSummary run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const CostModel model(spec.params, spec.allow_degenerate);
  const StochasticStats stats = opt_on_stats(spec.arrivals, model);

  std::vector<TrialOutcome> outcomes(spec.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_trial = 0;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (std::size_t i = next++; i < spec.trials; i = next++) {
      try {
        outcomes[i] = run_trial(spec, model, stats, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure || i < failed_trial) {
          failure = std::current_exception();
          failed_trial = i;
        }
      }
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(failed_trial) + " (trace seed " +
                               std::to_string(spec.seed + failed_trial) + ") failed: " + e.what());
    }
  }

  RunSummary summary;
  summary.opt_on_stats = stats;
  summary.opt_on_label = std::holds_alternative<GilbertElliotSpec>(spec.arrivals)
                             ? "opt-on(stationary)"
                         : std::holds_alternative<ArrivalTrace>(spec.arrivals) ? "opt-on(empirical)"
                                                                               : "opt-on";
  summary.horizon = outcomes.front().ledgers.empty() ? 0 : outcomes.front().ledgers.front().horizon();

  const auto n = static_cast<double>(spec.trials);
  for (const auto& o : outcomes) {
    summary.opt_on_totals.push_back(o.opt_on_total.to_double());
    summary.opt_off_totals.push_back(o.opt_off_total.to_double());
  }

  for (std::size_t k = 0; k < spec.policies.size(); ++k) {
    PolicySummary ps;
    ps.kind = spec.policies[k];
    ps.label = ps.kind == PolicyKind::OptOn ? summary.opt_on_label : to_string(ps.kind);
    Cost rent, service, switching;
    std::size_t switches = 0;
    const std::size_t T = outcomes.front().ledgers[k].horizon();
    if (spec.record_timeseries) ps.time_avg_cost.assign(T, 0.0);
    for (const auto& o : outcomes) {
      const CostLedger& ledger = o.ledgers[k];
      rent += ledger.rent();
      service += ledger.service();
      switching += ledger.switching();
      switches += ledger.switch_count();
      ps.totals.push_back(ledger.total().to_double());
      if (spec.record_timeseries) {
        Cost cumulative;
        const auto records = ledger.records();
        for (std::size_t t = 0; t < T; ++t) {
          cumulative += records[t].cost.total();
          ps.time_avg_cost[t] += cumulative.to_double() / static_cast<double>(t + 1);
        }
      }
    }
    for (double& v : ps.time_avg_cost) v /= n;
    const SampleSummary s = summarize(ps.totals);
    ps.mean_total = (rent + service + switching).to_double() / n;
    ps.ci99 = s.half_width;
    ps.rent = rent.to_double() / n;
    ps.service = service.to_double() / n;
    ps.switching = switching.to_double() / n;
    ps.switches = static_cast<double>(switches) / n;
    const EmpiricalRatios ratios =
        empirical_ratios(ps.totals, summary.opt_off_totals, summary.opt_on_totals);
    ps.rho_hat = ratios.rho_hat;
    ps.sigma_hat = ratios.sigma_hat;
    ps.sigma_ci99 = ratios.sigma_ci99;
    summary.policies.push_back(std::move(ps));
  }
  return summary;
}

std::string to_string(SweepParam param) {
  return param == SweepParam::DeltaC ? "dc" : "w";
}

std::vector<Cost> SweepRange::values() const {
  if (!(step > Cost{})) throw std::invalid_argument("sweep step must be positive");
  if (stop < start) throw std::invalid_argument("sweep range must be non-empty");
  std::vector<Cost> out;
  for (Cost v = start; v <= stop; v += step) out.push_back(v);
  return out;
}

std::vector<SweepPoint> sweep(const ExperimentSpec& base, const SweepRange& range) {
  std::vector<SweepPoint> points;
  for (const Cost v : range.values()) {
    ExperimentSpec spec = base;
    if (range.param == SweepParam::DeltaC) {
      spec.params.c_high = spec.params.c_low + v;
    } else {
      spec.params.w_hl = v;
      spec.params.w_lh = v;
    }
    SweepPoint point{v, std::nullopt, {}};
    try {
      (void)CostModel(spec.params, spec.allow_degenerate);
    } catch (const ModelError& e) {
      point.skipped = e.what();
      points.push_back(std::move(point));
      continue;
    }
    point.summary = run_experiment(spec);
    points.push_back(std::move(point));
  }
  return points;
}

void write_sweep_header(std::ostream& out) {
  out << "swept_param,value,policy,mean_total,ci99,rent,service,switch,switches,rho_hat,sigma_hat\n";
}

void write_sweep_rows(std::ostream& out, const std::string& swept_param, const std::string& value,
                      const RunSummary& summary) {
  for (const auto& p : summary.policies) {
    out << swept_param << ',' << value << ',' << p.label << ',' << format_g12(p.mean_total) << ','
        << format_g12(p.ci99) << ',' << format_g12(p.rent) << ',' << format_g12(p.service) << ','
        << format_g12(p.switching) << ',' << format_g12(p.switches) << ','
        << format_g12(p.rho_hat) << ',' << format_g12(p.sigma_hat) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, SweepParam param, const std::vector<SweepPoint>& points) {
  write_sweep_header(out);
  for (const auto& point : points) {
    if (!point.summary) {
      out << "# skipped " << to_string(param) << '=' << point.value.str() << ": " << point.skipped
          << '\n';
      continue;
    }
    write_sweep_rows(out, to_string(param), point.value.str(), *point.summary);
  }
}

void write_timeseries_csv(std::ostream& out, const RunSummary& summary) {
  out << "slot,policy,mean_time_avg_cost\n";
  for (const auto& p : summary.policies) {
    for (std::size_t t = 0; t < p.time_avg_cost.size(); ++t) {
      out << (t + 1) << ',' << p.label << ',' << format_g12(p.time_avg_cost[t]) << '\n';
    }
  }
}

void write_policy_diagnostics(std::ostream& out, const PolicyRun& run, bool with_perturbation) {
  out << "slot,level,delta,triggered,tau" << (with_perturbation ? ",perturbation" : "") << '\n';
  const auto levels = run.decisions.levels();
  for (std::size_t t = 0; t < run.steps.size(); ++t) {
    const auto& d = run.steps[t].diagnostic;
    out << (t + 1) << ',' << to_string(levels[t]) << ',';
    if (d) {
      out << format_g12(d->accumulator) << ',' << (d->triggered ? 1 : 0) << ',';
      if (d->tau) out << *d->tau;
      if (with_perturbation) out << ',' << (d->perturbation ? format_g12(*d->perturbation) : "");
    } else {
      out << ",0," << (with_perturbation ? "," : "");
    }
    out << '\n';
  }
}

}  // namespace edgerent
