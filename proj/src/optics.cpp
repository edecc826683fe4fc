#include "seds/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seds/error.hpp"
#include "seds/random.hpp"

namespace seds {

namespace {

void check_size(int size_px) {
  if (size_px < 1) {
    throw Error(ErrorCode::NonPositiveParam, "spot size must be >= 1, got " + std::to_string(size_px));
  }
  if (size_px % 2 == 0) {
    throw Error(ErrorCode::EvenSize, "spot size must be odd, got " + std::to_string(size_px));
  }
}

void check_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveParam, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

SpotKernel::SpotKernel(int size_px, std::vector<double> values)
    : size_(size_px), values_(std::move(values)) {
  check_size(size_px);
  const auto n = static_cast<std::size_t>(size_px) * static_cast<std::size_t>(size_px);
  if (values_.size() != n) {
    throw Error(ErrorCode::InvalidSpot, "expected " + std::to_string(n) + " spot values, got " +
                                            std::to_string(values_.size()));
  }
  bool any_positive = false;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidSpot, "spot values must be finite and nonnegative");
    }
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::InvalidSpot, "spot has no positive value");
}

double SpotKernel::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

Grid SpotKernel::to_grid() const {
  return Grid(static_cast<std::size_t>(size_), static_cast<std::size_t>(size_), values_);
}

SpotKernel SpotKernel::from_grid(const Grid& grid) {
  if (grid.rows() != grid.cols()) {
    throw Error(ErrorCode::InvalidSpot, "spot grid must be square, got " +
                                            std::to_string(grid.rows()) + "x" +
                                            std::to_string(grid.cols()));
  }
  return SpotKernel(static_cast<int>(grid.rows()), grid.vector());
}

SpotKernel SpotKernel::flipped() const {
  std::vector<double> out(values_.rbegin(), values_.rend());
  return SpotKernel(size_, std::move(out));
}

SpotKernel make_gaussian_spot(int size_px, double sigma_px, double peak) {
  check_size(size_px);
  check_positive(sigma_px, "sigma_px");
  check_positive(peak, "peak");
  const int half = (size_px - 1) / 2;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(size_px) * size_px);
  for (int u = -half; u <= half; ++u) {
    for (int v = -half; v <= half; ++v) {
      const double r2 = static_cast<double>(u * u + v * v);
      values.push_back(peak * std::exp(-r2 / (2.0 * sigma_px * sigma_px)));
    }
  }
  return SpotKernel(size_px, std::move(values));
}

SpotKernel make_disk_spot(int size_px, double radius_px, double intensity) {
  check_size(size_px);
  check_positive(radius_px, "radius_px");
  check_positive(intensity, "intensity");
  const int half = (size_px - 1) / 2;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(size_px) * size_px);
  for (int u = -half; u <= half; ++u) {
    for (int v = -half; v <= half; ++v) {
      const double r = std::sqrt(static_cast<double>(u * u + v * v));
      values.push_back(r <= radius_px ? intensity : 0.0);
    }
  }
  return SpotKernel(size_px, std::move(values));
}

SpotDiagnostics validate_spot(const SpotKernel& spot) {
  const auto values = spot.values();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  SpotDiagnostics d;
  d.min_value = *lo;
  d.max_value = *hi;
  d.sum = spot.sum();
  d.constancy_spread = d.max_value - d.min_value;
  d.is_constant = d.constancy_spread < kConstancyEpsilon * d.max_value;
  return d;
}

PhantomKind parse_phantom_kind(std::string_view name) {
  if (name == "uniform-random") return PhantomKind::UniformRandom;
  if (name == "checkerboard") return PhantomKind::Checkerboard;
  if (name == "constant") return PhantomKind::Constant;
  throw Error(ErrorCode::UnknownKind, "unknown phantom kind '" + std::string(name) + "'");
}

std::string_view to_string(PhantomKind kind) {
  switch (kind) {
    case PhantomKind::UniformRandom: return "uniform-random";
    case PhantomKind::Checkerboard: return "checkerboard";
    case PhantomKind::Constant: return "constant";
  }
  return "unknown";
}

ImageGrid make_phantom(int rows, int cols, PhantomKind kind, std::uint64_t seed, double scale) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::NonPositiveParam, "phantom dimensions must be >= 1");
  }
  check_positive(scale, "scale");
  ImageGrid image(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  switch (kind) {
    case PhantomKind::UniformRandom: {
      SplitMix64 rng(seed);
      for (double& v : image.values()) v = scale * rng.uniform();
      break;
    }
    case PhantomKind::Checkerboard:
      for (std::size_t i = 0; i < image.rows(); ++i) {
        for (std::size_t j = 0; j < image.cols(); ++j) {
          image(i, j) = (i + j) % 2 == 0 ? scale : 0.0;
        }
      }
      break;
    case PhantomKind::Constant:
      for (double& v : image.values()) v = scale;
      break;
  }
  return image;
}

}  // namespace seds
