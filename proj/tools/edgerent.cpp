// edgerent: simulate, sweep, bound and verify two-level edge rental policies.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "edgerent/arrivals.hpp"
#include "edgerent/bounds.hpp"
#include "edgerent/core.hpp"
#include "edgerent/format.hpp"
#include "edgerent/harness.hpp"
#include "edgerent/policies.hpp"
#include "edgerent/verify.hpp"

namespace {

using namespace edgerent;

/// Bad or missing arguments discovered after parsing; exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Echo = std::vector<std::pair<std::string, std::string>>;

struct ModelOptions {
  std::string c_high = "600";
  std::string c_low = "400";
  std::int64_t kappa_high = 700;
  std::int64_t kappa_low = 300;
  std::string w_hl = "275";
  std::string w_lh = "275";
  std::string w;
  bool allow_degenerate = false;

  void add_to(CLI::App& app) {
    app.add_option("--c-high", c_high, "Rent per slot at the HIGH level")->capture_default_str();
    app.add_option("--c-low", c_low, "Rent per slot at the LOW level")->capture_default_str();
    app.add_option("--kappa-high", kappa_high, "Requests served per slot at HIGH")
        ->capture_default_str();
    app.add_option("--kappa-low", kappa_low, "Requests served per slot at LOW")
        ->capture_default_str();
    app.add_option("--w-hl", w_hl, "Cost of a HIGH to LOW switch")->capture_default_str();
    app.add_option("--w-lh", w_lh, "Cost of a LOW to HIGH switch")->capture_default_str();
    app.add_option("--w", w, "Set both switch costs to this value");
    app.add_flag("--allow-degenerate", allow_degenerate,
                 "Accept models where kappa_high - kappa_low <= c_high - c_low");
  }

  CostParams params() const {
    CostParams p;
    p.c_high = Cost::parse(c_high);
    p.c_low = Cost::parse(c_low);
    p.kappa_high = kappa_high;
    p.kappa_low = kappa_low;
    p.w_hl = Cost::parse(w.empty() ? w_hl : w);
    p.w_lh = Cost::parse(w.empty() ? w_lh : w);
    return p;
  }

  void echo(Echo& out) const {
    const CostParams p = params();
    out.emplace_back("c_high", p.c_high.str());
    out.emplace_back("c_low", p.c_low.str());
    out.emplace_back("kappa_high", std::to_string(p.kappa_high));
    out.emplace_back("kappa_low", std::to_string(p.kappa_low));
    out.emplace_back("w_hl", p.w_hl.str());
    out.emplace_back("w_lh", p.w_lh.str());
    out.emplace_back("allow_degenerate", allow_degenerate ? "true" : "false");
  }
};

/// --seed, else EDGERENT_SEED, else nothing.
std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  const char* env = std::getenv("EDGERENT_SEED");
  if (!env || !*env) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("EDGERENT_SEED is not an unsigned integer: ") + env);
  }
}

void write_echo(std::ostream& out, const std::string& command, const Echo& echo) {
  out << "# edgerent " << command << '\n';
  for (const auto& [k, v] : echo) out << "# " << k << '=' << v << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
  return s;
}

// ---------------------------------------------------------------------------
// Config files: KEY=VALUE lines, `#` comments. A key names a flag of the
// subcommand without the leading dashes; underscores stand for dashes. A file
// starting with `# edgerent` is read as an echoed output header: its
// `# key=value` lines are the entries and the first non-comment line ends it.
// Flags on the command line win over the file.

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

std::vector<std::string> config_arguments(const std::string& path,
                                          const std::vector<std::string>& user_args) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  bool echoed = false;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (lineno == 1 && line.rfind("# edgerent ", 0) == 0) {
      echoed = true;
      continue;
    }
    if (echoed) {
      if (line.rfind("# ", 0) != 0) break;
      line = line.substr(2);
      if (line.rfind("explain_", 0) == 0) continue;
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected KEY=VALUE");
    }
    const auto trim = [](std::string t) {
      const auto b = t.find_first_not_of(" \t\r");
      const auto e = t.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (key == "config") throw UsageError(path + ": config files cannot include others");
    if (given_on_command_line(user_args, flag)) continue;
    if (key == "allow-degenerate" || key == "explain") {
      if (value == "true" || value == "1") out.push_back(flag);
      continue;
    }
    out.push_back(flag + "=" + value);
  }
  return out;
}

/// argv with the entries of every `--config FILE` spliced in after the
/// subcommand name.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() < 2) return args;
  std::vector<std::string> user(args.begin() + 2, args.end());
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < user.size(); ++i) {
    std::string path;
    if (user[i] == "--config" && i + 1 < user.size()) path = user[i + 1];
    if (user[i].rfind("--config=", 0) == 0) path = user[i].substr(9);
    if (path.empty()) continue;
    const auto more = config_arguments(path, user);
    extra.insert(extra.end(), more.begin(), more.end());
  }
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), user.begin(), user.end());
  return out;
}

// ---------------------------------------------------------------------------
// simulate / sweep

struct ExperimentOptions {
  ModelOptions model;
  std::string arrivals = "poisson:700";
  std::string trace;
  std::size_t horizon = 1000;
  std::size_t trials = 200;
  std::vector<std::string> policies{"bltn", "ftpl", "opt-on", "opt-off"};
  std::optional<std::uint64_t> seed;
  double ftpl_gamma = 1.0;
  std::string ftpl_noise = "var";
  std::string initial = "L";
  unsigned threads = 0;
  std::string out = "sweep.csv";
  std::string timeseries;

  void add_to(CLI::App& app) {
    model.add_to(app);
    auto* arr = app.add_option("--arrivals", arrivals,
                               "Arrival law: poisson:RATE, bernoulli:P,MAGNITUDE, pmf:P0,P1,..., "
                               "or ge:LAMBDA_H,LAMBDA_L[,P_HL,P_LH[,H|L]]")
                    ->capture_default_str();
    app.add_option("--trace", trace, "Replay a fixed trace CSV in every trial")->excludes(arr);
    app.add_option("--T", horizon, "Slots per trial (ignored with --trace)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--trials", trials, "Monte-Carlo trials")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--policies", policies,
                   "Comma-separated: bltn, bltn-naive, ftpl, static-high, static-low, opt-on, "
                   "opt-off")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--seed", seed,
                   "Base seed (trial i uses seed + i); falls back to EDGERENT_SEED");
    app.add_option("--ftpl-gamma", ftpl_gamma, "FTPL perturbation scale")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--ftpl-noise", ftpl_noise,
                   "FTPL noise at slot t: var (standard deviation t^1/4) or stddev (sqrt t)")
        ->capture_default_str()
        ->check(CLI::IsMember({"var", "stddev"}));
    app.add_option("--initial", initial, "Level inherited before slot 1 (L or H)")
        ->capture_default_str()
        ->check(CLI::IsMember({"L", "H"}));
    app.add_option("--threads", threads, "Worker threads, 0 for all cores")->capture_default_str();
    app.add_option("--out", out, "Summary CSV path")->capture_default_str();
    app.add_option("--timeseries", timeseries,
                   "Also write the trial-averaged cumulative cost / t per slot to this CSV");
  }

  bool stochastic() const {
    if (trace.empty()) return true;
    for (const auto& p : policies) {
      if (p == "ftpl") return true;
    }
    return false;
  }

  ExperimentSpec spec() const {
    ExperimentSpec s;
    s.params = model.params();
    s.allow_degenerate = model.allow_degenerate;
    s.arrivals = trace.empty() ? parse_arrival_source(arrivals) : ArrivalSource{load_trace(trace)};
    s.horizon = horizon;
    s.trials = trials;
    const auto resolved = resolve_seed(seed);
    if (!resolved && stochastic()) {
      throw UsageError("a seed is required for stochastic runs (--seed or EDGERENT_SEED)");
    }
    s.seed = resolved.value_or(0);
    s.policies.clear();
    for (const auto& p : policies) s.policies.push_back(parse_policy_kind(p));
    if (s.policies.empty()) throw UsageError("--policies must name at least one policy");
    s.ftpl.gamma = ftpl_gamma;
    s.ftpl.noise = ftpl_noise == "stddev" ? FtplNoise::StdDev : FtplNoise::Variance;
    s.initial_level = parse_level(initial);
    s.record_timeseries = !timeseries.empty();
    s.threads = threads;
    (void)CostModel(s.params, s.allow_degenerate);
    s.validate();
    return s;
  }

  void echo(Echo& out, const ExperimentSpec& s) const {
    model.echo(out);
    if (trace.empty()) {
      out.emplace_back("arrivals", describe(s.arrivals));
      out.emplace_back("T", std::to_string(s.horizon));
    } else {
      out.emplace_back("trace", trace);
      out.emplace_back("T", std::to_string(std::get<ArrivalTrace>(s.arrivals).horizon()));
    }
    out.emplace_back("trials", std::to_string(s.trials));
    out.emplace_back("policies", join(policies));
    out.emplace_back("seed", std::to_string(s.seed));
    out.emplace_back("ftpl_gamma", format_g12(ftpl_gamma));
    out.emplace_back("ftpl_noise", ftpl_noise);
    out.emplace_back("initial", initial);
  }
};

void print_summary(std::ostream& out, const RunSummary& summary) {
  out << std::left << std::setw(20) << "policy" << std::right;
  for (const char* h : {"mean_total", "ci99", "rent", "service", "switch", "switches", "rho_hat",
                        "sigma_hat"}) {
    out << ' ' << std::setw(15) << h;
  }
  out << '\n';
  for (const auto& p : summary.policies) {
    out << std::left << std::setw(20) << p.label << std::right;
    for (const double v : {p.mean_total, p.ci99, p.rent, p.service, p.switching, p.switches,
                           p.rho_hat, p.sigma_hat}) {
      out << ' ' << std::setw(15) << format_g12(v);
    }
    out << '\n';
  }
}

/// Per-slot internals of the first explainable policy on trial 0.
void write_explain(const ExperimentSpec& spec, const std::string& path, const Echo& echo) {
  std::optional<PolicyKind> kind;
  for (const PolicyKind k : spec.policies) {
    if (k == PolicyKind::Bltn || k == PolicyKind::BltnNaive || k == PolicyKind::Ftpl) {
      kind = k;
      break;
    }
  }
  if (!kind) throw UsageError("--explain needs bltn, bltn-naive or ftpl in --policies");
  const CostModel model(spec.params, spec.allow_degenerate);
  std::unique_ptr<OnlinePolicy> policy;
  if (*kind == PolicyKind::Bltn) policy = std::make_unique<BltnPolicy>(model);
  if (*kind == PolicyKind::BltnNaive) policy = std::make_unique<BltnNaivePolicy>(model);
  if (*kind == PolicyKind::Ftpl) {
    FtplConfig cfg = spec.ftpl;
    cfg.seed = ftpl_trial_seed(spec.seed, 0);
    policy = std::make_unique<FtplPolicy>(model, cfg);
  }
  const PolicyRun run = run_policy(*policy, model, trial_trace(spec, 0), spec.initial_level);
  std::ofstream out = open_output(path);
  Echo e = echo;
  e.emplace_back("explain_policy", to_string(*kind));
  e.emplace_back("explain_trial", "0");
  write_echo(out, "simulate --explain", e);
  write_policy_diagnostics(out, run, *kind == PolicyKind::Ftpl);
}

int cmd_simulate(const ExperimentOptions& opt, bool explain, const std::string& explain_out) {
  const ExperimentSpec spec = opt.spec();
  Echo echo;
  opt.echo(echo, spec);
  const RunSummary summary = run_experiment(spec);
  {
    std::ofstream out = open_output(opt.out);
    write_echo(out, "simulate", echo);
    write_sweep_header(out);
    write_sweep_rows(out, "none", "", summary);
  }
  if (!opt.timeseries.empty()) {
    std::ofstream out = open_output(opt.timeseries);
    write_echo(out, "simulate", echo);
    write_timeseries_csv(out, summary);
  }
  if (explain) write_explain(spec, explain_out, echo);
  std::cout << "# " << summary.opt_on_label << " stats: nu=" << format_g12(summary.opt_on_stats.nu)
            << " mu_high=" << format_g12(summary.opt_on_stats.mu_high)
            << " mu_low=" << format_g12(summary.opt_on_stats.mu_low) << '\n';
  print_summary(std::cout, summary);
  return 0;
}

SweepRange parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4 || (parts[0] != "dc" && parts[0] != "w")) {
    throw UsageError("--sweep must look like dc:START:STOP:STEP or w:START:STOP:STEP");
  }
  SweepRange r;
  r.param = parts[0] == "dc" ? SweepParam::DeltaC : SweepParam::SwitchCost;
  r.start = Cost::parse(parts[1]);
  r.stop = Cost::parse(parts[2]);
  r.step = Cost::parse(parts[3]);
  (void)r.values();
  return r;
}

int cmd_sweep(const ExperimentOptions& opt, const std::string& sweep_text) {
  const SweepRange range = parse_sweep(sweep_text);
  // The base point itself may be invalid; only the swept points must be valid.
  ExperimentOptions base = opt;
  base.model.allow_degenerate = true;
  ExperimentSpec spec = base.spec();
  spec.allow_degenerate = opt.model.allow_degenerate;
  Echo echo;
  opt.echo(echo, spec);
  echo.emplace_back("sweep", sweep_text);
  const std::vector<SweepPoint> points = sweep(spec, range);
  {
    std::ofstream out = open_output(opt.out);
    write_echo(out, "sweep", echo);
    write_sweep_csv(out, range.param, points);
  }
  if (!opt.timeseries.empty()) {
    std::ofstream out = open_output(opt.timeseries);
    write_echo(out, "sweep", echo);
    out << "swept_param,value,slot,policy,mean_time_avg_cost\n";
    for (const auto& p : points) {
      if (!p.summary) continue;
      for (const auto& ps : p.summary->policies) {
        for (std::size_t t = 0; t < ps.time_avg_cost.size(); ++t) {
          out << to_string(range.param) << ',' << p.value.str() << ',' << (t + 1) << ','
              << ps.label << ',' << format_g12(ps.time_avg_cost[t]) << '\n';
        }
      }
    }
  }
  for (const auto& p : points) {
    std::cout << "## " << to_string(range.param) << '=' << p.value.str() << '\n';
    if (p.summary) {
      print_summary(std::cout, *p.summary);
    } else {
      std::cerr << "warning: skipped " << to_string(range.param) << '=' << p.value.str() << ": "
                << p.skipped << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
  ModelOptions model;
  std::string stats;
  std::size_t horizon = 1000;
  double lambda_max = 100.0;
  std::size_t grid = 256;
  std::string format = "csv";
  std::string out;
};

int cmd_bounds(const BoundsOptions& opt) {
  const CostModel model(opt.model.params(), opt.model.allow_degenerate);
  std::optional<StochasticStats> stats;
  if (!opt.stats.empty()) {
    const ArrivalSource source = parse_arrival_source(opt.stats);
    stats = opt_on_stats(source, model);
  }
  LambdaSearch search;
  search.lambda_max = opt.lambda_max;
  search.grid_points = opt.grid;
  const BoundReport report = bound_report(model, stats, opt.horizon, search);
  if (!report.rho_upper) {
    std::cerr << "warning: competitive-ratio upper bound undefined (needs "
                 "kappa_high - kappa_low > c_high - c_low and W > 0)\n";
  }

  std::ostringstream body;
  if (opt.format == "jsonl") {
    body << bound_report_jsonl(report) << '\n';
  } else {
    body << bound_report_csv_header() << '\n' << bound_report_csv_row(report) << '\n';
  }
  if (opt.out.empty()) {
    std::cout << body.str();
  } else {
    Echo echo;
    opt.model.echo(echo);
    echo.emplace_back("stats", opt.stats);
    echo.emplace_back("T", std::to_string(opt.horizon));
    echo.emplace_back("lambda_max", format_g12(opt.lambda_max));
    echo.emplace_back("grid", std::to_string(opt.grid));
    echo.emplace_back("format", opt.format);
    std::ofstream out = open_output(opt.out);
    write_echo(out, "bounds", echo);
    out << body.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  ModelOptions model;
  std::size_t cases = 10000;
  std::size_t max_horizon = 500;
  std::size_t adversary_horizon = 2000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_verify(const VerifyOptions& opt) {
  const CostModel model(opt.model.params(), opt.model.allow_degenerate);
  std::vector<BatteryResult> results;
  results.push_back(check_bltn_equivalence(opt.cases, opt.max_horizon, opt.seed));
  results.push_back(check_dwell_times(nullptr, opt.cases, opt.max_horizon, opt.seed + 1));
  results.push_back(check_dwell_times(&model, opt.cases, opt.max_horizon, opt.seed + 2));
  results.back().name += "(model)";
  results.push_back(
      check_upper_bound(model, opt.cases, opt.adversary_horizon, opt.seed + 3));
  results.push_back(check_lower_bound_realization(model, opt.adversary_horizon));

  std::ostringstream report;
  report << "battery,cases,violations,extreme,first_violation\n";
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.ok();
    report << r.name << ',' << r.cases << ',' << r.violations << ',' << format_g12(r.extreme)
           << ',' << '"' << r.first_violation << '"' << '\n';
  }
  std::cout << report.str();
  if (!opt.out.empty()) {
    Echo echo;
    opt.model.echo(echo);
    echo.emplace_back("cases", std::to_string(opt.cases));
    echo.emplace_back("max_T", std::to_string(opt.max_horizon));
    echo.emplace_back("adversary_T", std::to_string(opt.adversary_horizon));
    echo.emplace_back("seed", std::to_string(opt.seed));
    std::ofstream out = open_output(opt.out);
    write_echo(out, "verify", echo);
    out << report.str();
  }
  std::cout << (ok ? "verify: all batteries passed\n" : "verify: violations found\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate, bound and verify rental policies for two-level edge resources"};
  app.require_subcommand(1);
  std::string config_path;

  ExperimentOptions sim;
  bool explain = false;
  std::string explain_out = "explain.csv";
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the listed policies");
  simulate->add_option("--config", config_path, "Read KEY=VALUE options from a file (flags win)");
  sim.add_to(*simulate);
  simulate->add_flag("--explain", explain,
                     "Write per-slot diagnostics of the first bltn/bltn-naive/ftpl policy on "
                     "trial 0");
  simulate->add_option("--explain-out", explain_out, "Diagnostics CSV path")
      ->capture_default_str();

  ExperimentOptions swp;
  std::string sweep_text;
  auto* sweep_cmd = app.add_subcommand("sweep", "Repeat a run over a range of dc or W");
  sweep_cmd->add_option("--config", config_path, "Read KEY=VALUE options from a file (flags win)");
  swp.add_to(*sweep_cmd);
  sweep_cmd
      ->add_option("--sweep", sweep_text,
                   "dc:START:STOP:STEP sets c_high = c_low + value; w:START:STOP:STEP sets "
                   "w_hl = w_lh = value")
      ->required();

  BoundsOptions bnd;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the closed-form performance bounds");
  bounds->add_option("--config", config_path, "Read KEY=VALUE options from a file (flags win)");
  bnd.model.add_to(*bounds);
  bounds->add_option("--stats", bnd.stats,
                     "Arrival law for the stochastic bound (same syntax as simulate --arrivals)");
  bounds->add_option("--T", bnd.horizon, "Horizon of the stochastic bound")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bounds->add_option("--lambda-max", bnd.lambda_max, "Upper end of the tuning-parameter search")
      ->capture_default_str();
  bounds->add_option("--grid", bnd.grid, "Log-spaced grid points before refinement")
      ->capture_default_str();
  bounds->add_option("--format", bnd.format, "csv or jsonl")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "jsonl"}));
  bounds->add_option("--out", bnd.out, "Write the report here instead of standard output");

  VerifyOptions ver;
  auto* verify = app.add_subcommand(
      "verify", "Run the seeded property batteries; exit 1 on any violation");
  verify->add_option("--config", config_path, "Read KEY=VALUE options from a file (flags win)");
  ver.model.add_to(*verify);
  verify->add_option("--cases", ver.cases, "Random cases per battery")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--max-T", ver.max_horizon, "Longest random trace")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--adversary-T", ver.adversary_horizon,
                     "Longest trace in the bound batteries")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", ver.seed, "Battery seed")->capture_default_str();
  verify->add_option("--out", ver.out, "Also write the battery table to this CSV");

  try {
    std::vector<std::string> args;
    try {
      args = expand_config(argc, argv);
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    std::vector<char*> raw;
    for (auto& a : args) raw.push_back(a.data());
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return cmd_simulate(sim, explain, explain_out);
    if (*sweep_cmd) return cmd_sweep(swp, sweep_text);
    if (*bounds) return cmd_bounds(bnd);
    if (*verify) return cmd_verify(ver);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
