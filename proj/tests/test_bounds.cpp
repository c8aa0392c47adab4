#include <doctest.h>

#include <cmath>
#include <random>

#include "edgerent/arrivals.hpp"
#include "edgerent/bounds.hpp"
#include "edgerent/offline.hpp"
#include "edgerent/verify.hpp"

using namespace edgerent;

namespace {

const CostModel reference{CostParams{}};

CostModel with_switch_costs(Cost each) {
  CostParams p;
  p.w_hl = each;
  p.w_lh = each;
  return CostModel(p);
}

}  // namespace

TEST_CASE("competitive-ratio upper bound") {
  CHECK(std::abs(rho_upper_bltn(reference) - (1.0 + 1500.0 / 3300.0)) < 1e-12);
  CHECK(std::abs(rho_upper_bltn(reference, RhoUpperVariant::DerivationDwell) -
                 (1.0 + 1500.0 / 2750.0)) < 1e-12);
  CHECK(rho_upper_bltn(with_switch_costs(Cost::units(550))) < rho_upper_bltn(reference));

  // dk - dc = 1e-6 dc: the c_H / (dk - dc) term swamps the denominator.
  CostParams p;
  p.c_high = p.c_low + Cost::from_micros(399'999'600);
  const CostModel tight(p);
  CHECK((Cost::units(400) - tight.delta_c()).to_double() ==
        doctest::Approx(1e-6 * tight.delta_c().to_double()).epsilon(1e-3));
  CHECK(rho_upper_bltn(tight) > 1.0);
  CHECK(rho_upper_bltn(tight) - 1.0 < 1e-5);

  p = CostParams{};
  p.c_high = Cost::units(800);
  CHECK_THROWS_AS(rho_upper_bltn(CostModel(p, true)), RegimeError);
  CHECK_THROWS_AS(rho_upper_bltn(with_switch_costs(Cost{})), RegimeError);
}

TEST_CASE("the worst-case upper bound does not hold off the reference parameters") {
  // OPT-OFF may switch up near the end of the horizon without paying for the
  // way back, which the bound does not account for.
  CostParams p;
  p.c_high = Cost::units(536);
  p.c_low = Cost::units(387);
  p.kappa_high = 696;
  p.kappa_low = 205;
  p.w_hl = Cost::units(768);
  p.w_lh = Cost::units(10);
  const CostModel m(p);
  const ArrivalTrace trace({696, 696, 696});
  BltnPolicy bltn(m);
  const double ratio = run_policy(bltn, m, trace).ledger.total().to_double() /
                       opt_off(m, trace).ledger.total().to_double();
  CHECK(ratio == doctest::Approx(2634.0 / 1618.0));
  CHECK(ratio > rho_upper_bltn(m) + 0.1);

  // Reference model with dc = 50: the adaptive adversary alone beats it.
  CostParams q;
  q.c_high = Cost::units(450);
  const CostModel narrow(q);
  const BatteryResult adversary = check_lower_bound_realization(narrow, 2000);
  CHECK(adversary.extreme > rho_upper_bltn(narrow));
  CHECK_FALSE(check_upper_bound(narrow, 200, 500, 3).ok());

  // The reference model itself shows no violation.
  CHECK(check_upper_bound(reference, 2000, 500, 3).ok());
}

TEST_CASE("universal lower bound") {
  CHECK(std::abs(rho_lower_any(reference) - 1950.0 / 1550.0) < 1e-12);
  CHECK(rho_lower_any(reference) <= rho_upper_bltn(reference));

  CostParams p;
  p.c_high = p.c_low + Cost::from_micros(1);
  const double r = rho_lower_any(CostModel(p));
  CHECK(r > 1.0);
  CHECK(r - 1.0 < 1e-8);
}

TEST_CASE("lower bound stays below upper bound across the reference sweeps") {
  for (int dc = 100; dc <= 350; dc += 50) {
    CostParams p;
    p.c_high = p.c_low + Cost::units(dc);
    const CostModel m(p);
    CHECK(rho_lower_any(m) <= rho_upper_bltn(m));
  }
  for (int w = 100; w <= 1000; w += 100) {
    const CostModel m = with_switch_costs(Cost::units(w));
    CHECK(rho_lower_any(m) <= rho_upper_bltn(m));
  }
}

TEST_CASE("f vanishes as W grows") {
  const double dmu = 389.446;
  double previous = std::numeric_limits<double>::infinity();
  for (const int w : {1000, 10'000, 100'000}) {
    const double f = lemma1_f(with_switch_costs(Cost::units(w / 2)), dmu, 2.0);
    CHECK(std::isfinite(f));
    CHECK(f >= 0.0);
    CHECK(f < previous);
    previous = f;
  }
  CHECK(previous < 1e-6);
}

TEST_CASE("g stays finite next to the regime boundary") {
  const double g = lemma1_g(reference, 200.0 - 1e-9, 1.5);
  CHECK(std::isfinite(g));
  CHECK(g > 0.0);
}

TEST_CASE("f and g regime and parameter checks") {
  CHECK_THROWS_AS(lemma1_f(reference, 150.0, 2.0), RegimeError);
  CHECK_THROWS_AS(lemma1_g(reference, 250.0, 2.0), RegimeError);
  CHECK_THROWS_AS(lemma1_f(reference, 250.0, 1.0), RegimeError);
  CHECK_THROWS_AS(lemma1_g(reference, 150.0, 0.5), RegimeError);
}

TEST_CASE("f and g are finite and non-negative on a dense random sweep") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t evaluated = 0;
  for (int i = 0; i < 10'000; ++i) {
    CostParams p;
    p.kappa_low = 1 + static_cast<std::int64_t>(rng() % 500);
    p.kappa_high = p.kappa_low + 2 + static_cast<std::int64_t>(rng() % 800);
    const double dk = static_cast<double>(p.kappa_high - p.kappa_low);
    p.c_low = Cost::from_double(1000.0 * unit(rng));
    p.c_high = p.c_low + Cost::from_double(std::max(1e-6, dk * unit(rng) * 0.999));
    p.w_hl = Cost::from_double(2000.0 * unit(rng));
    p.w_lh = Cost::from_double(2000.0 * unit(rng));
    const CostModel m(p);
    const double dc = m.delta_c().to_double();
    const double lambda = 1.0 + 1e-6 + 99.0 * unit(rng) * unit(rng);
    // delta_mu anywhere in [0, dk], including points very close to dc
    const double spread = std::pow(10.0, -9.0 + 12.0 * unit(rng));
    const double dmu = std::clamp(dc + (unit(rng) < 0.5 ? -spread : spread), 0.0, dk);
    if (dmu == dc) continue;
    const double v = dmu > dc ? lemma1_f(m, dmu, lambda) : lemma1_g(m, dmu, lambda);
    INFO("dmu " << dmu << " dc " << dc << " lambda " << lambda);
    REQUIRE(std::isfinite(v));
    REQUIRE(v >= 0.0);
    ++evaluated;
  }
  CHECK(evaluated > 9900);
}

TEST_CASE("per-slot excess bound switches branch after the warm-up") {
  const StochasticStats s{700.0, 689.446, 300.0};
  const double lambda = 2.0;
  const double warm = warmup_slots(reference, s.delta_mu(), lambda);
  CHECK(warm == std::ceil(2.0 * 550.0 / (s.delta_mu() - 200.0)));
  CHECK(lemma1_delta_bound(reference, s, 1, lambda) == doctest::Approx(550.0 + s.delta_mu() - 200.0));
  const auto at = static_cast<std::size_t>(warm);
  CHECK(lemma1_delta_bound(reference, s, at, lambda) == doctest::Approx(550.0 + s.delta_mu() - 200.0));
  CHECK(lemma1_delta_bound(reference, s, at + 1, lambda) == lemma1_f(reference, s.delta_mu(), lambda));
  CHECK(lemma1_delta_bound(reference, s, 1'000'000, lambda) == lemma1_f(reference, s.delta_mu(), lambda));
  CHECK_THROWS_AS(lemma1_delta_bound(reference, StochasticStats{700, 500, 300}, 1, lambda), RegimeError);
}

TEST_CASE("stochastic bound") {
  const StochasticStats poisson = stats_for(IidSpec{PoissonLaw{700.0}}, reference);

  SUBCASE("search result is no worse than a dense grid") {
    const SigmaBound b = sigma_upper_bltn(reference, poisson, 1000);
    REQUIRE(b.lambda_star);
    CHECK(b.regime == StochasticRegime::HighFavoured);
    CHECK(b.bound >= 1.0);
    CHECK(b.bound == doctest::Approx(sigma_objective(reference, poisson, 1000, *b.lambda_star)));
    double dense = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100'000; ++i) {
      const double lambda = std::exp(std::log(1.0 + 1e-6) + (std::log(100.0) - std::log(1.0 + 1e-6)) * i / 100'000.0);
      dense = std::min(dense, sigma_objective(reference, poisson, 1000, lambda));
    }
    CHECK(b.bound <= dense + 1e-9 * dense);
  }

  SUBCASE("bound is at least 1 in both regimes") {
    for (const double rate : {50.0, 300.0, 450.0, 700.0, 2000.0}) {
      const StochasticStats s = stats_for(IidSpec{PoissonLaw{rate}}, reference);
      for (const std::size_t T : {1u, 10u, 1000u, 100000u}) {
        CHECK(sigma_upper_bltn(reference, s, T).bound >= 1.0);
      }
    }
    const StochasticStats low = stats_for(IidSpec{PoissonLaw{300.0}}, reference);
    CHECK(sigma_upper_bltn(reference, low, 1000).regime == StochasticRegime::LowFavoured);
  }

  SUBCASE("balanced regime") {
    const SigmaBound b = sigma_upper_bltn(reference, StochasticStats{700.0, 500.0, 300.0}, 1000);
    CHECK(b.bound == 1.0);
    CHECK_FALSE(b.lambda_star);
    CHECK(b.regime == StochasticRegime::Balanced);
  }

  SUBCASE("the transient term vanishes like 1 / T") {
    const double lambda = 3.0;
    const double limit = 1.0 + lemma1_f(reference, poisson.delta_mu(), lambda) /
                                   (poisson.nu - poisson.mu_high + 600.0);
    double previous = std::numeric_limits<double>::infinity();
    for (const std::size_t T : {1'000u, 100'000u, 10'000'000u}) {
      const double gap = std::abs(sigma_objective(reference, poisson, T, lambda) - limit);
      CHECK(gap < previous);
      CHECK(gap * static_cast<double>(T) < 1e4);
      previous = gap;
    }
    CHECK(previous < 1e-3);
  }
}

TEST_CASE("bound report") {
  const StochasticStats s = stats_for(IidSpec{PoissonLaw{700.0}}, reference);
  const BoundReport r = bound_report(reference, s, 1000);
  REQUIRE(r.rho_upper);
  REQUIRE(r.sigma);
  REQUIRE(r.lemma_value);
  CHECK(r.rho_lower <= *r.rho_upper);
  CHECK(r.sigma->bound >= 1.0);
  CHECK(*r.lemma_value == doctest::Approx(lemma1_f(reference, s.delta_mu(), *r.sigma->lambda_star)));
  CHECK(bound_report_csv_header() ==
        "c_high,c_low,kappa_high,kappa_low,w_hl,w_lh,nu,mu_high,mu_low,T,regime,rho_upper,"
        "rho_upper_derivation,rho_lower,sigma_upper,lambda_star,lemma_value");
  const std::string row = bound_report_csv_row(r);
  CHECK(row.rfind("600,400,700,300,275,275,700,", 0) == 0);
  CHECK(row.find(",high,1.45454545455,1.54545454545,1.25806451613,") != std::string::npos);
  const std::string json = bound_report_jsonl(r);
  CHECK(json.find("\"rho_lower\":1.25806451612903") != std::string::npos);
  CHECK(json.find('\n') == std::string::npos);

  CostParams p;
  p.c_high = Cost::units(800);
  const BoundReport degenerate = bound_report(CostModel(p, true), std::nullopt, 1000);
  CHECK_FALSE(degenerate.rho_upper);
  CHECK_FALSE(degenerate.sigma);
}
