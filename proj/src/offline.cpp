#include "edgerent/offline.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>

namespace edgerent {
namespace {

constexpr std::array<Level, 2> kLevels{Level::Low, Level::High};
constexpr std::size_t idx(Level l) { return static_cast<std::size_t>(l); }

Cost serve_cost(const CostModel& model, std::int64_t x, Level l) {
  return model.rent(l) + Cost::units(x - std::min(x, model.cap(l)));
}

// best[l] = cheapest schedule of the slots seen so far ending at level l;
// nullopt marks an unreachable state (only before slot 1).
using Frontier = std::array<std::optional<Cost>, 2>;

struct Transition {
  Cost cost;
  Level from;
};

Transition cheapest_entry(const CostModel& model, const Frontier& prev, Level to) {
  std::optional<Transition> best;
  // Staying is examined first so that ties keep the current level.
  for (const Level from : {to, other(to)}) {
    if (!prev[idx(from)]) continue;
    const Cost c = *prev[idx(from)] + model.switch_cost(from, to);
    if (!best || c < best->cost) best = Transition{c, from};
  }
  return *best;
}

Frontier initial_frontier(Level initial_level) {
  Frontier f;
  f[idx(initial_level)] = Cost{};
  return f;
}

}  // namespace

OfflineSolution opt_off(const CostModel& model, const ArrivalTrace& arrivals, Level initial_level) {
  const auto counts = arrivals.counts();
  const std::size_t T = counts.size();
  std::vector<std::array<Level, 2>> parent(T);

  Frontier frontier = initial_frontier(initial_level);
  for (std::size_t i = 0; i < T; ++i) {
    Frontier next;
    for (const Level l : kLevels) {
      const Transition tr = cheapest_entry(model, frontier, l);
      next[idx(l)] = tr.cost + serve_cost(model, counts[i], l);
      parent[i][idx(l)] = tr.from;
    }
    frontier = next;
  }

  Level level = *frontier[idx(Level::High)] < *frontier[idx(Level::Low)] ? Level::High : Level::Low;
  std::vector<Level> levels(T);
  for (std::size_t i = T; i-- > 0;) {
    levels[i] = level;
    level = parent[i][idx(level)];
  }
  DecisionTrace decisions(std::move(levels), initial_level);
  CostLedger ledger = evaluate(model, arrivals, decisions);
  return {std::move(decisions), std::move(ledger)};
}

std::vector<Cost> opt_off_prefix_costs(const CostModel& model, const ArrivalTrace& arrivals,
                                       Level initial_level) {
  std::vector<Cost> out;
  out.reserve(arrivals.horizon());
  Frontier frontier = initial_frontier(initial_level);
  for (const std::int64_t x : arrivals.counts()) {
    Frontier next;
    for (const Level l : kLevels) {
      next[idx(l)] = cheapest_entry(model, frontier, l).cost + serve_cost(model, x, l);
    }
    frontier = next;
    out.push_back(min(*frontier[0], *frontier[1]));
  }
  return out;
}

DwellReport verify_dwell_times(const CostModel& model, const DecisionTrace& decisions) {
  DwellReport report;
  const double w = model.w_sum().to_double();
  const double dc = model.delta_c().to_double();
  const double gap = static_cast<double>(model.delta_kappa()) - dc;
  const double inf = std::numeric_limits<double>::infinity();
  report.min_high = gap > 0.0 ? w / gap : inf;
  report.min_low = dc > 0.0 ? w / dc : inf;

  const auto levels = decisions.levels();
  const std::size_t T = levels.size();
  std::size_t start = 0;
  while (start < T) {
    std::size_t end = start;
    while (end + 1 < T && levels[end + 1] == levels[start]) ++end;
    const Level before = start == 0 ? decisions.initial_level() : levels[start - 1];
    const bool entered_by_switch = before != levels[start];
    const bool left_by_switch = end + 1 < T;
    if (entered_by_switch && left_by_switch) {
      ++report.runs_checked;
      const double required = levels[start] == Level::High ? report.min_high : report.min_low;
      const auto length = static_cast<double>(end - start + 1);
      if (length < required) {
        report.violations.push_back({levels[start], start + 1, end + 1, required});
      }
    }
    start = end + 1;
  }
  return report;
}

std::vector<FrameFinding> check_frame_structure(const DecisionTrace& opt_off_decisions,
                                                const DecisionTrace& bltn_decisions) {
  std::vector<FrameFinding> findings;
  const auto opt = opt_off_decisions.levels();
  const auto bltn = bltn_decisions.levels();
  const std::size_t T = std::min(opt.size(), bltn.size());

  std::vector<std::size_t> up;  // 0-indexed slots where OPT-OFF enters HIGH
  for (std::size_t i = 0; i < T; ++i) {
    const Level before = i == 0 ? opt_off_decisions.initial_level() : opt[i - 1];
    if (opt[i] == Level::High && before == Level::Low) up.push_back(i);
  }

  for (std::size_t k = 0; k + 1 < up.size(); ++k) {
    const std::size_t first = up[k];
    const std::size_t last = up[k + 1] - 1;
    const auto report = [&](std::string msg) {
      findings.push_back({first + 1, last + 1, std::move(msg)});
    };
    std::size_t opt_down = first;
    while (opt[opt_down] == Level::High) ++opt_down;  // first LOW slot of OPT-OFF

    if (bltn[first] != Level::Low) {
      report("BLTN is not at LOW when the frame opens");
      continue;
    }
    std::vector<std::size_t> bltn_up;
    std::vector<std::size_t> bltn_down;
    // A switch in force from the next frame's first slot was decided inside
    // this frame.
    for (std::size_t i = first + 1; i <= last + 1; ++i) {
      if (bltn[i] != bltn[i - 1]) (bltn[i] == Level::High ? bltn_up : bltn_down).push_back(i);
    }
    if (bltn_up.size() != 1 || bltn_down.size() != 1) {
      report("BLTN switched up " + std::to_string(bltn_up.size()) + " and down " +
             std::to_string(bltn_down.size()) + " times");
      continue;
    }
    if (bltn_up[0] > opt_down) {
      report("BLTN entered HIGH at slot " + std::to_string(bltn_up[0] + 1) +
             ", after OPT-OFF returned to LOW at slot " + std::to_string(opt_down + 1));
    }
    if (bltn_down[0] <= opt_down) {
      report("BLTN left HIGH at slot " + std::to_string(bltn_down[0] + 1) +
             ", not after OPT-OFF returned to LOW at slot " + std::to_string(opt_down + 1));
    }
  }
  return findings;
}

}  // namespace edgerent
