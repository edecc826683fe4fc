#pragma once

#include <string>

#include "seds/grid.hpp"

namespace seds {

/// (1 / (R*C)) * sum |a - b|, row-major summation. Throws DimensionMismatch.
double mean_abs_diff(const Grid& a, const Grid& b);

double max_abs_diff(const Grid& a, const Grid& b);

/// 100 * mean_abs_diff / mean(reference). Throws ZeroMeanReference when the
/// reference mean is not positive.
double relative_error_percent(const Grid& reference, const Grid& other);

struct MetricsReport {
  double mean_abs_diff = 0.0;
  double relative_to_mean_percent = 0.0;
  double max_abs_diff = 0.0;

  std::string to_text() const;
};

MetricsReport compute_metrics(const Grid& reference, const Grid& recovered);

}  // namespace seds
