#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "edgerent/bounds.hpp"
#include "edgerent/harness.hpp"
#include "edgerent/offline.hpp"
#include "oracles.hpp"

using namespace edgerent;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.horizon = 200;
  s.trials = 20;
  s.seed = 9;
  s.threads = 4;
  return s;
}

// NaN half-widths (single trial) compare equal to themselves here.
bool eq(double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); }

bool same(const RunSummary& a, const RunSummary& b) {
  if (a.policies.size() != b.policies.size()) return false;
  for (std::size_t i = 0; i < a.policies.size(); ++i) {
    const auto& x = a.policies[i];
    const auto& y = b.policies[i];
    if (x.label != y.label || x.totals != y.totals || x.mean_total != y.mean_total ||
        !eq(x.ci99, y.ci99) || x.rho_hat != y.rho_hat || x.sigma_hat != y.sigma_hat ||
        !eq(x.sigma_ci99, y.sigma_ci99) ||
        x.switches != y.switches) {
      return false;
    }
  }
  return a.opt_off_totals == b.opt_off_totals && a.opt_on_totals == b.opt_on_totals;
}

}  // namespace

TEST_CASE("run_experiment is a pure function of its spec") {
  ExperimentSpec s = small_spec();
  const RunSummary a = run_experiment(s);
  s.threads = 1;
  const RunSummary b = run_experiment(s);
  CHECK(same(a, b));
  s.seed = 10;
  CHECK_FALSE(same(a, run_experiment(s)));

  s.trials = 1;
  CHECK(same(run_experiment(s), run_experiment(s)));
}

TEST_CASE("trials see the trace their seed produces") {
  ExperimentSpec s = small_spec();
  s.policies = {PolicyKind::StaticLow};
  const RunSummary r = run_experiment(s);
  const CostModel m(s.params);
  for (std::size_t i = 0; i < s.trials; ++i) {
    const ArrivalTrace t = gen_iid(IidSpec{PoissonLaw{700.0}}, s.horizon, s.seed + i);
    CHECK(trial_trace(s, i) == t);
    std::vector<Level> low(s.horizon, Level::Low);
    CHECK(r.at(PolicyKind::StaticLow).totals[i] == evaluate(m, t, DecisionTrace(low, Level::Low)).total().to_double());
    CHECK(r.opt_off_totals[i] == opt_off(m, t).ledger.total().to_double());
  }
}

TEST_CASE("ledger conservation in the summary") {
  const RunSummary r = run_experiment(small_spec());
  for (const auto& p : r.policies) {
    CHECK(p.rent + p.service + p.switching == doctest::Approx(p.mean_total).epsilon(1e-12));
  }
}

TEST_CASE("BLTN stays close to OPT-ON under Poisson(700)") {
  ExperimentSpec s;
  s.seed = 42;
  const RunSummary r = run_experiment(s);
  const PolicySummary& bltn = r.at(PolicyKind::Bltn);
  CHECK(r.opt_on_label == "opt-on");
  CHECK(bltn.sigma_hat <= 1.05);
  CHECK(bltn.sigma_hat >= 1.0 - bltn.sigma_ci99);
  const StochasticStats stats = stats_for(IidSpec{PoissonLaw{700.0}}, CostModel(s.params));
  CHECK(bltn.sigma_hat + bltn.sigma_ci99 <= sigma_upper_bltn(CostModel(s.params), stats, 1000).bound);
  // OPT-OFF is the per-trace minimum, so every policy ratio is at least 1.
  for (const auto& p : r.policies) CHECK(p.rho_hat >= 1.0);
  CHECK(r.at(PolicyKind::OptOff).rho_hat == 1.0);
}

TEST_CASE("BLTN beats FTPL under time-varying intensity") {
  ExperimentSpec s;
  s.seed = 42;
  s.arrivals = GilbertElliotSpec{};
  const RunSummary r = run_experiment(s);
  CHECK(r.opt_on_label == "opt-on(stationary)");
  const PolicySummary& bltn = r.at(PolicyKind::Bltn);
  const PolicySummary& ftpl = r.at(PolicyKind::Ftpl);
  CHECK(bltn.mean_total < ftpl.mean_total);
  CHECK(bltn.mean_total + bltn.ci99 < ftpl.mean_total - ftpl.ci99);
}

TEST_CASE("empirical ratios") {
  const std::vector<double> off{10, 20, 0};
  const std::vector<double> on{12, 22, 0};
  const EmpiricalRatios self = empirical_ratios(off, off, on);
  CHECK(self.rho_hat == 1.0);
  const EmpiricalRatios online = empirical_ratios(on, off, on);
  CHECK(online.sigma_hat == 1.0);
  CHECK(online.sigma_ci99 == doctest::Approx(0.0));
  CHECK(online.rho_hat == doctest::Approx(1.2));
  CHECK_THROWS(empirical_ratios(std::vector<double>{1.0}, off, on));
}

TEST_CASE("W sweep: BLTN switches less as W grows") {
  ExperimentSpec s;
  s.seed = 5;
  s.trials = 50;
  s.policies = {PolicyKind::Bltn};
  const auto points = sweep(s, SweepRange{SweepParam::SwitchCost, Cost::units(100), Cost::units(1000), Cost::units(100)});
  REQUIRE(points.size() == 10);
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& pt : points) {
    REQUIRE(pt.summary);
    const double switches = pt.summary->at(PolicyKind::Bltn).switches;
    CHECK(switches <= previous);
    previous = switches;
  }
}

TEST_CASE("a one-point sweep equals a plain run") {
  ExperimentSpec s = small_spec();
  const auto points = sweep(s, SweepRange{SweepParam::SwitchCost, Cost::units(275), Cost::units(275), Cost::units(1)});
  REQUIRE(points.size() == 1);
  REQUIRE(points[0].summary);
  CHECK(same(*points[0].summary, run_experiment(s)));
}

TEST_CASE("dc sweep flips OPT-ON where delta_mu crosses delta_c") {
  ExperimentSpec s = small_spec();
  s.trials = 2;
  s.horizon = 20;
  s.policies = {PolicyKind::OptOn};
  const auto points = sweep(s, SweepRange{SweepParam::DeltaC, Cost::units(300), Cost::units(395), Cost::units(5)});
  const double dmu = oracle::truncated_poisson_mean(700.0, 700) - oracle::truncated_poisson_mean(700.0, 300);
  REQUIRE(dmu > 385.0);
  REQUIRE(dmu < 390.0);
  for (const auto& pt : points) {
    REQUIRE(pt.summary);
    const double dc = pt.value.to_double();
    // Rent alone separates the levels: c_L * T = 8000 at every point.
    const double rent = pt.summary->at(PolicyKind::OptOn).rent;
    const bool high = rent > 400.0 * 20 + 1e-9;
    INFO("dc " << dc);
    CHECK(high == (dmu > dc));
  }
}

TEST_CASE("sweep points that break the model are skipped with a warning row") {
  ExperimentSpec s = small_spec();
  s.trials = 2;
  s.horizon = 10;
  const auto points = sweep(s, SweepRange{SweepParam::DeltaC, Cost::units(350), Cost::units(450), Cost::units(50)});
  REQUIRE(points.size() == 3);
  CHECK(points[0].summary);
  CHECK_FALSE(points[1].summary);  // dc = dk is degenerate
  CHECK_FALSE(points[2].summary);
  CHECK_FALSE(points[2].skipped.empty());

  std::ostringstream csv;
  write_sweep_csv(csv, SweepParam::DeltaC, points);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "swept_param,value,policy,mean_total,ci99,rent,service,switch,switches,rho_hat,sigma_hat");
  std::size_t rows = 0, warnings = 0;
  while (std::getline(lines, line)) (line.rfind('#', 0) == 0 ? warnings : rows)++;
  CHECK(warnings == 2);
  CHECK(rows == s.policies.size());
}

TEST_CASE("timeseries output") {
  ExperimentSpec s = small_spec();
  s.horizon = 5;
  s.record_timeseries = true;
  s.policies = {PolicyKind::StaticLow};
  const RunSummary r = run_experiment(s);
  REQUIRE(r.at(PolicyKind::StaticLow).time_avg_cost.size() == 5);
  std::ostringstream out;
  write_timeseries_csv(out, r);
  CHECK(out.str().rfind("slot,policy,mean_time_avg_cost\n", 0) == 0);
  CHECK(out.str().find("\n1,static-low,") != std::string::npos);
}

TEST_CASE("fixed traces reuse the same arrivals every trial") {
  ExperimentSpec s = small_spec();
  s.arrivals = ArrivalTrace(oracle::worked_example_counts());
  s.trials = 3;
  s.policies = {PolicyKind::Bltn, PolicyKind::OptOff};
  const RunSummary r = run_experiment(s);
  CHECK(r.horizon == 11);
  for (const double t : r.at(PolicyKind::Bltn).totals) CHECK(t == 8550.0);
  for (const double t : r.opt_off_totals) CHECK(t == 7350.0);
}

TEST_CASE("arrival source syntax") {
  CHECK(std::get<PoissonLaw>(std::get<IidSpec>(parse_arrival_source("poisson:700"))).rate == 700.0);
  const auto ge = std::get<GilbertElliotSpec>(parse_arrival_source("ge:800,300,0.2,0.05,H"));
  CHECK(ge.lambda_high == 800.0);
  CHECK(ge.lambda_low == 300.0);
  CHECK(ge.p_hl == 0.2);
  CHECK(ge.p_lh == 0.05);
  CHECK(ge.initial == Regime::High);
  CHECK_FALSE(std::get<GilbertElliotSpec>(parse_arrival_source("ge:800,300")).initial);
  CHECK(std::holds_alternative<IidSpec>(parse_arrival_source("bernoulli:0.5,900")));
  CHECK(std::holds_alternative<IidSpec>(parse_arrival_source("pmf:0.5,0.5")));
  for (const char* bad : {"poisson", "poisson:-1", "poisson:x", "ge:800", "ge:300,800",
                          "ge:800,300,2,0.1", "pmf:0.5", "uniform:3", "bernoulli:1.5,3"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_arrival_source(bad), std::invalid_argument);
  }
}

TEST_CASE("experiment validation") {
  ExperimentSpec s = small_spec();
  s.trials = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = small_spec();
  s.policies.clear();
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK(parse_policy_kind("bltn-naive") == PolicyKind::BltnNaive);
  CHECK_THROWS_AS(parse_policy_kind("greedy"), std::invalid_argument);
}
