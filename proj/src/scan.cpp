#include "seds/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "seds/error.hpp"
#include "seds/parallel.hpp"
#include "seds/random.hpp"

namespace seds {

BoundaryCondition BoundaryCondition::constant(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "boundary value must be finite and >= 0");
  }
  return BoundaryCondition(Kind::Constant, value);
}

std::string BoundaryCondition::to_string() const {
  if (kind_ == Kind::Zero) return "zero";
  char buf[64];
  std::snprintf(buf, sizeof buf, "const:%.17g", value_);
  return buf;
}

BoundaryCondition BoundaryCondition::parse(const std::string& text) {
  if (text == "zero") return zero();
  constexpr std::string_view prefix = "const:";
  if (text.rfind(prefix, 0) == 0) {
    const char* first = text.data() + prefix.size();
    const char* last = text.data() + text.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc() && ptr == last && first != last) return constant(value);
  }
  throw Error(ErrorCode::Parse, "boundary condition must be 'zero' or 'const:<v>', got '" + text + "'");
}

std::string to_string(ScanMode mode) { return mode == ScanMode::SEDS ? "seds" : "dds"; }

ScanMode parse_scan_mode(const std::string& text) {
  if (text == "seds") return ScanMode::SEDS;
  if (text == "dds") return ScanMode::DDS;
  throw Error(ErrorCode::Parse, "scan mode must be 'seds' or 'dds', got '" + text + "'");
}

namespace {

// One footprint sum at signed center (ci, cj), taps in row-major (u, v) order.
double footprint_sum(const ImageGrid& sample, const SpotKernel& spot,
                     const BoundaryCondition& bc, long ci, long cj) {
  const long rows = static_cast<long>(sample.rows());
  const long cols = static_cast<long>(sample.cols());
  const long half = spot.half();
  double sum = 0.0;
  if (bc.kind() == BoundaryCondition::Kind::Zero) {
    const long u0 = std::max(-half, -ci), u1 = std::min(half, rows - 1 - ci);
    const long v0 = std::max(-half, -cj), v1 = std::min(half, cols - 1 - cj);
    for (long u = u0; u <= u1; ++u) {
      for (long v = v0; v <= v1; ++v) {
        sum += spot.at(static_cast<int>(u), static_cast<int>(v)) *
               sample(static_cast<std::size_t>(ci + u), static_cast<std::size_t>(cj + v));
      }
    }
    return sum;
  }
  const double c = bc.value();
  for (long u = -half; u <= half; ++u) {
    const long r = ci + u;
    const bool row_in = r >= 0 && r < rows;
    for (long v = -half; v <= half; ++v) {
      const long q = cj + v;
      const double e = (row_in && q >= 0 && q < cols)
                           ? sample(static_cast<std::size_t>(r), static_cast<std::size_t>(q))
                           : c;
      sum += spot.at(static_cast<int>(u), static_cast<int>(v)) * e;
    }
  }
  return sum;
}

void check_inputs(const ImageGrid& sample) {
  if (sample.empty()) throw Error(ErrorCode::InvalidImage, "sample has no pixels");
  if (!sample.all_finite()) throw Error(ErrorCode::InvalidImage, "sample has non-finite values");
}

void add_noise(Grid& grid, const NoiseOptions& noise) {
  if (noise.sigma <= 0.0) return;
  SplitMix64 rng(noise.seed);
  for (double& v : grid.values()) v += noise.sigma * rng.normal();
}

MeasurementGrid scan_with_margin(const ImageGrid& sample, const SpotKernel& spot,
                                 const BoundaryCondition& bc, int margin,
                                 const NoiseOptions& noise) {
  check_inputs(sample);
  if (margin < 0) throw Error(ErrorCode::InvalidArgument, "margin must be >= 0");
  const std::size_t m = static_cast<std::size_t>(margin);
  Grid out(sample.rows() + 2 * m, sample.cols() + 2 * m);
  parallel_for(out.rows(), [&](std::size_t a) {
    for (std::size_t b = 0; b < out.cols(); ++b) {
      out(a, b) = footprint_sum(sample, spot, bc, static_cast<long>(a) - margin,
                                static_cast<long>(b) - margin);
    }
  });
  add_noise(out, noise);
  return MeasurementGrid{std::move(out), ScanMode::SEDS, margin, spot.size(), bc};
}

}  // namespace

MeasurementGrid scan_seds(const ImageGrid& sample, const SpotKernel& spot,
                          const BoundaryCondition& bc, const NoiseOptions& noise) {
  return scan_with_margin(sample, spot, bc, 0, noise);
}

MeasurementGrid scan_dds(const ImageGrid& sample, const SpotKernel& spot,
                         const BoundaryCondition& bc, int margin_px, const NoiseOptions& noise) {
  MeasurementGrid s = scan_with_margin(sample, spot, bc, margin_px, noise);
  s.mode = ScanMode::DDS;
  return s;
}

ImageGrid scan_sted(const ImageGrid& sample, const SpotKernel& spot) {
  check_inputs(sample);
  const std::size_t k = static_cast<std::size_t>(spot.size());
  if (k > std::min(sample.rows(), sample.cols())) {
    throw Error(ErrorCode::SpotLargerThanROI,
                "spot " + std::to_string(k) + "x" + std::to_string(k) + " exceeds ROI " +
                    std::to_string(sample.rows()) + "x" + std::to_string(sample.cols()));
  }
  const auto zero = BoundaryCondition::zero();
  const long half = spot.half();
  ImageGrid out(sample.rows() / k, sample.cols() / k);
  for (std::size_t p = 0; p < out.rows(); ++p) {
    for (std::size_t q = 0; q < out.cols(); ++q) {
      out(p, q) = footprint_sum(sample, spot, zero, static_cast<long>(p * k) + half,
                                static_cast<long>(q * k) + half);
    }
  }
  return out;
}

ImageGrid blur_conventional(const ImageGrid& sample, const SpotKernel& psf) {
  check_inputs(sample);
  const double total = psf.sum();
  std::vector<double> unit(psf.values().begin(), psf.values().end());
  for (double& v : unit) v /= total;
  const SpotKernel normalized(psf.size(), std::move(unit));
  const auto zero = BoundaryCondition::zero();
  ImageGrid out(sample.rows(), sample.cols());
  parallel_for(out.rows(), [&](std::size_t i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out(i, j) = footprint_sum(sample, normalized, zero, static_cast<long>(i), static_cast<long>(j));
    }
  });
  return out;
}

std::int64_t footprint_count(ScanMode mode, std::int64_t rows, std::int64_t cols,
                             int spot_size_px, int margin_px) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidArgument, "ROI dimensions must be >= 1");
  if (spot_size_px < 1 || spot_size_px % 2 == 0) {
    throw Error(ErrorCode::EvenSize, "spot size must be odd and >= 1");
  }
  if (mode == ScanMode::SEDS) return rows * cols;
  if (margin_px < 0) throw Error(ErrorCode::InvalidArgument, "margin must be >= 0");
  return (rows + 2 * margin_px) * (cols + 2 * margin_px);
}

}  // namespace seds
