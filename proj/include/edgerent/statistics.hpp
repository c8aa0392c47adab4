#pragma once

#include <cstddef>
#include <span>

namespace edgerent {

struct SampleSummary {
  double mean = 0.0;
  /// Student-t confidence half-width; NaN for fewer than two samples.
  double half_width = 0.0;
  std::size_t n = 0;

  double upper() const { return mean + half_width; }
  double lower() const { return mean - half_width; }
};

SampleSummary summarize(std::span<const double> samples, double confidence = 0.99);

/// mean(num) / mean(den) for paired samples, with a delta-method Student-t
/// half-width computed from the residuals num_i - ratio * den_i.
SampleSummary ratio_of_means(std::span<const double> num, std::span<const double> den,
                             double confidence = 0.99);

/// Two-sided critical value t_{(1+confidence)/2, df}.
double student_t_critical(double confidence, double df);

}  // namespace edgerent
