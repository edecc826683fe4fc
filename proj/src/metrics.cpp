#include "seds/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "seds/error.hpp"

namespace seds {

namespace {

void check_same_shape(const Grid& a, const Grid& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (a.empty()) throw Error(ErrorCode::DimensionMismatch, "empty grids");
}

}  // namespace

double mean_abs_diff(const Grid& a, const Grid& b) {
  check_same_shape(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a.values()[i] - b.values()[i]);
  return sum / static_cast<double>(a.size());
}

double max_abs_diff(const Grid& a, const Grid& b) {
  check_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

double relative_error_percent(const Grid& reference, const Grid& other) {
  check_same_shape(reference, other);
  double sum = 0.0;
  for (double v : reference.values()) sum += v;
  const double mean = sum / static_cast<double>(reference.size());
  if (!(mean > 0.0)) {
    throw Error(ErrorCode::ZeroMeanReference, "reference image mean must be positive");
  }
  return 100.0 * mean_abs_diff(reference, other) / mean;
}

std::string MetricsReport::to_text() const {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mean_abs_diff=%.17g\nrelative_to_mean_percent=%.17g\nmax_abs_diff=%.17g\n",
                mean_abs_diff, relative_to_mean_percent, max_abs_diff);
  return buf;
}

MetricsReport compute_metrics(const Grid& reference, const Grid& recovered) {
  MetricsReport m;
  m.mean_abs_diff = mean_abs_diff(reference, recovered);
  m.max_abs_diff = max_abs_diff(reference, recovered);
  m.relative_to_mean_percent = relative_error_percent(reference, recovered);
  return m;
}

}  // namespace seds
