#include "edgerent/statistics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace edgerent {

double student_t_critical(double confidence, double df) {
  if (!(confidence > 0.0 && confidence < 1.0) || !(df > 0.0)) {
    throw std::invalid_argument("student_t_critical: bad confidence or degrees of freedom");
  }
  const boost::math::students_t dist(df);
  return boost::math::quantile(dist, 0.5 + confidence / 2.0);
}

SampleSummary summarize(std::span<const double> samples, double confidence) {
  SampleSummary s;
  s.n = samples.size();
  if (s.n == 0) throw std::invalid_argument("summarize: empty sample");
  double sum = 0.0;
  for (const double x : samples) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) {
    s.half_width = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double ss = 0.0;
  for (const double x : samples) ss += (x - s.mean) * (x - s.mean);
  const double sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  s.half_width = student_t_critical(confidence, static_cast<double>(s.n - 1)) * sd /
                 std::sqrt(static_cast<double>(s.n));
  return s;
}

SampleSummary ratio_of_means(std::span<const double> num, std::span<const double> den,
                             double confidence) {
  if (num.size() != den.size() || num.empty()) {
    throw std::invalid_argument("ratio_of_means: samples must be paired and non-empty");
  }
  const std::size_t n = num.size();
  double sn = 0.0;
  double sd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sn += num[i];
    sd += den[i];
  }
  const double mean_den = sd / static_cast<double>(n);
  SampleSummary s;
  s.n = n;
  s.mean = sn / sd;
  if (n < 2) {
    s.half_width = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = num[i] - s.mean * den[i];
    ss += r * r;
  }
  const double se = std::sqrt(ss / static_cast<double>(n - 1)) /
                    (std::sqrt(static_cast<double>(n)) * mean_den);
  s.half_width = student_t_critical(confidence, static_cast<double>(n - 1)) * se;
  return s;
}

}  // namespace edgerent
