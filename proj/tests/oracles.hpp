#pragma once

// Reference computations used only by the tests. They share no code with the
// library beyond its value types.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/distributions/poisson.hpp>

#include "edgerent/core.hpp"

namespace oracle {

using edgerent::Cost;
using edgerent::CostModel;
using edgerent::Level;

inline Cost slot_total(const CostModel& m, std::int64_t x, Level now, Level prev) {
  const bool high = now == Level::High;
  Cost c = high ? m.params().c_high : m.params().c_low;
  const std::int64_t cap = high ? m.params().kappa_high : m.params().kappa_low;
  if (x > cap) c += Cost::units(x - cap);
  if (now != prev) c += high ? m.params().w_lh : m.params().w_hl;
  return c;
}

inline Cost total(const CostModel& m, const std::vector<std::int64_t>& xs,
                  const std::vector<Level>& levels, Level initial) {
  Cost c;
  Level prev = initial;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    c += slot_total(m, xs[t], levels[t], prev);
    prev = levels[t];
  }
  return c;
}

/// Minimum total over all 2^T level sequences.
inline Cost brute_force_opt_off(const CostModel& m, const std::vector<std::int64_t>& xs,
                                Level initial) {
  const std::size_t T = xs.size();
  Cost best = Cost::from_micros(std::numeric_limits<std::int64_t>::max());
  std::vector<Level> levels(T);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << T); ++mask) {
    for (std::size_t t = 0; t < T; ++t) levels[t] = (mask >> t) & 1 ? Level::High : Level::Low;
    best = edgerent::min(best, total(m, xs, levels, initial));
  }
  return best;
}

/// E[min(X, cap)] = sum_{k=0}^{cap-1} P(X > k) for X ~ Poisson(rate).
inline double truncated_poisson_mean(double rate, std::int64_t cap) {
  const boost::math::poisson_distribution<double> law(rate);
  double s = 0.0;
  for (std::int64_t k = 0; k < cap; ++k) {
    s += boost::math::cdf(boost::math::complement(law, static_cast<double>(k)));
  }
  return s;
}

/// The 11-slot example: 900 requests in slots 1-6, then 200 in slots 7-11.
inline std::vector<std::int64_t> worked_example_counts() {
  return {900, 900, 900, 900, 900, 900, 200, 200, 200, 200, 200};
}

}  // namespace oracle
