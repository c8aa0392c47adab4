#include <doctest.h>

#include <fstream>
#include <string>

#include "cli_runner.hpp"

namespace {

const std::string kSmall = "--T 100 --trials 8 --threads 2";

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help and usage errors") {
  const auto help = cli::run("--help");
  CHECK(help.code == 0);
  for (const char* cmd : {"simulate", "sweep", "bounds", "verify"}) CHECK(contains(help.output, cmd));
  const auto sim_help = cli::run("simulate --help");
  CHECK(sim_help.code == 0);
  CHECK(contains(sim_help.output, "--arrivals"));
  CHECK(contains(sim_help.output, "--explain"));

  CHECK(cli::run("").code == 2);
  CHECK(cli::run("frobnicate").code == 2);
  CHECK(cli::run("simulate --no-such-flag 1 --seed 1").code == 2);
  CHECK(cli::run("simulate --T 0 --seed 1").code == 2);
  CHECK(cli::run("simulate --arrivals poisson:-3 --seed 1").code == 2);
  CHECK(cli::run("simulate --policies bltn,greedy --seed 1").code == 2);
  CHECK(cli::run("sweep --sweep q:1:2:3 --seed 1").code == 2);
  CHECK(cli::run("simulate --c-high 12x --seed 1").code == 2);
}

TEST_CASE("stochastic runs need a seed") {
  cli::ScratchDir dir("seed");
  const std::string out = dir / "a.csv";
  const auto missing = cli::run("simulate " + kSmall + " --out " + out, "env -u EDGERENT_SEED");
  CHECK(missing.code == 2);
  CHECK(contains(missing.output, "seed"));

  const auto from_env = cli::run("simulate " + kSmall + " --out " + out, "EDGERENT_SEED=7");
  REQUIRE(from_env.code == 0);
  const std::string env_file = cli::slurp(out);
  const std::string flag_out = dir / "b.csv";
  REQUIRE(cli::run("simulate " + kSmall + " --seed 7 --out " + flag_out, "env -u EDGERENT_SEED").code == 0);
  CHECK(cli::slurp(flag_out) == env_file);

  // A flag beats the environment.
  REQUIRE(cli::run("simulate " + kSmall + " --seed 8 --out " + flag_out, "EDGERENT_SEED=7").code == 0);
  CHECK(cli::slurp(flag_out) != env_file);
}

TEST_CASE("simulate writes the sweep schema with an echoed header") {
  cli::ScratchDir dir("sim");
  const std::string out = dir / "sweep.csv";
  const std::string ts = dir / "ts.csv";
  const auto r = cli::run("simulate " + kSmall + " --seed 42 --out " + out + " --timeseries " + ts);
  REQUIRE(r.code == 0);
  CHECK(contains(r.output, "bltn"));
  const std::string csv = cli::slurp(out);
  CHECK(csv.rfind("# edgerent simulate\n", 0) == 0);
  CHECK(contains(csv, "# seed=42\n"));
  CHECK(contains(csv, "\nswept_param,value,policy,mean_total,ci99,rent,service,switch,switches,rho_hat,sigma_hat\n"));
  CHECK(contains(csv, "\nnone,,bltn,"));
  CHECK(contains(csv, "\nnone,,opt-off,"));
  CHECK(contains(cli::slurp(ts), "\nslot,policy,mean_time_avg_cost\n"));
}

TEST_CASE("config file precedence: flags, then file, then defaults") {
  cli::ScratchDir dir("cfg");
  const std::string cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# comment\nT=50\ntrials=4\nseed=3\nw=400\nallow_degenerate=false\n";
  }
  const std::string out = dir / "o.csv";
  REQUIRE(cli::run("simulate --config " + cfg + " --trials 6 --out " + out).code == 0);
  const std::string csv = cli::slurp(out);
  CHECK(contains(csv, "# T=50\n"));
  CHECK(contains(csv, "# trials=6\n"));
  CHECK(contains(csv, "# w_hl=400\n"));
  CHECK(contains(csv, "# c_high=600\n"));

  // The echoed header is itself a valid config that reproduces the run.
  const std::string again = dir / "again.csv";
  REQUIRE(cli::run("simulate --config " + out + " --out " + again).code == 0);
  CHECK(cli::slurp(again) == csv);

  {
    std::ofstream f(cfg);
    f << "bogus_key=1\n";
  }
  CHECK(cli::run("simulate --config " + cfg + " --seed 1").code == 2);
  CHECK(cli::run("simulate --config " + (dir / "missing.cfg") + " --seed 1").code == 2);
}

TEST_CASE("bounds subcommand") {
  const auto r = cli::run("bounds");
  REQUIRE(r.code == 0);
  CHECK(contains(r.output, ",1.45454545455,1.54545454545,1.25806451613,"));

  const auto j = cli::run("bounds --stats poisson:700 --format jsonl");
  REQUIRE(j.code == 0);
  CHECK(contains(j.output, "\"rho_upper\":1.4545454545454"));
  CHECK(contains(j.output, "\"regime\":\"high\""));

  CHECK(cli::run("bounds --c-high 800").code == 2);
  const auto degenerate = cli::run("bounds --c-high 800 --allow-degenerate");
  CHECK(degenerate.code == 0);
  CHECK(contains(degenerate.output, "warning: competitive-ratio upper bound undefined"));
  CHECK(cli::run("bounds --format xml").code == 2);
}

TEST_CASE("verify subcommand") {
  const auto ok = cli::run("verify --cases 300 --max-T 200 --adversary-T 500");
  CHECK(ok.code == 0);
  CHECK(contains(ok.output, "verify: all batteries passed"));

  // Degenerate model pushed through with the override: the upper-bound battery fails.
  const auto broken = cli::run("verify --cases 50 --max-T 50 --adversary-T 100 --c-high 800 --allow-degenerate");
  CHECK(broken.code == 1);
  CHECK(contains(broken.output, "verify: violations found"));
}

TEST_CASE("explain writes per-slot diagnostics") {
  cli::ScratchDir dir("explain");
  const std::string trace = dir / "trace.csv";
  {
    std::ofstream f(trace);
    f << "slot,arrivals\n";
    const int counts[] = {900, 900, 900, 900, 900, 900, 200, 200, 200, 200, 200};
    for (int i = 0; i < 11; ++i) f << i + 1 << ',' << counts[i] << '\n';
  }
  const std::string diag = dir / "explain.csv";
  const auto r = cli::run("simulate --trace " + trace + " --policies bltn --trials 1 --explain --explain-out " +
                          diag + " --out " + (dir / "o.csv"));
  REQUIRE(r.code == 0);
  const std::string csv = cli::slurp(diag);
  CHECK(contains(csv, "\nslot,level,delta,triggered,tau\n"));
  CHECK(contains(csv, "\n3,L,600,1,"));
  CHECK(contains(csv, "\n4,H,"));
  CHECK(contains(csv, "\n10,L,"));
}

TEST_CASE("identical invocations produce identical files") {
  cli::ScratchDir dir("det");
  const std::string common = " --seed 11 ";
  const std::string cmds[] = {
      "simulate " + kSmall + common + "--arrivals ge:800,300,0.1,0.1 --policies bltn,ftpl,opt-on,opt-off,bltn-naive",
      "sweep --T 60 --trials 4 --sweep w:100:400:100" + common,
      "bounds --stats poisson:700",
  };
  int k = 0;
  for (const auto& cmd : cmds) {
    const std::string a = dir / ("a" + std::to_string(k) + ".csv");
    const std::string b = dir / ("b" + std::to_string(k) + ".csv");
    REQUIRE(cli::run(cmd + " --out " + a).code == 0);
    REQUIRE(cli::run(cmd + " --out " + b).code == 0);
    INFO(cmd);
    CHECK(!cli::slurp(a).empty());
    CHECK(cli::slurp(a) == cli::slurp(b));
    ++k;
  }
}
