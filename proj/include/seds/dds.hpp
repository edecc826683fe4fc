#pragma once

#include <cstdint>
#include <string>

#include "seds/grid.hpp"
#include "seds/optics.hpp"
#include "seds/scan.hpp"
#include "seds/solve.hpp"

namespace seds {

/// Frequency-domain filter used by the DDS baseline.
struct FilterConfig {
  enum class Kind { Inverse, Wiener };

  Kind kind = Kind::Inverse;
  /// Inverse filter: bins with |H| < eps * max|H| are zeroed.
  double eps = 1e-8;
  /// Wiener noise-to-signal constant: conj(H) / (|H|^2 + wiener_k).
  double wiener_k = 1e-3;

  void validate() const;
};

FilterConfig::Kind parse_filter_kind(const std::string& text);
std::string to_string(FilterConfig::Kind kind);

/// Smallest power of two >= n.
std::size_t next_power_of_two(std::size_t n);

/// Recovers the R x C ROI from a DDS scan. Known boundary contributions are
/// subtracted first; the remainder is the ROI convolved with the flipped spot,
/// which is inverted on a zero-padded power-of-two grid of at least
/// (R + 2m + k) per side and cropped back to the ROI.
///
/// Throws ModeMismatch, SpotMismatch, or MarginTooSmall when margin < half.
ImageGrid dds_deconvolve(const MeasurementGrid& scan, const SpotKernel& spot,
                         const FilterConfig& config);

struct ComparisonReport {
  std::int64_t seds_footprints = 0;
  std::int64_t dds_footprints = 0;
  double seds_mean_abs_diff = 0.0;
  double dds_mean_abs_diff = 0.0;
  double seds_seconds = 0.0;
  double dds_seconds = 0.0;
  SolveReport seds_solve;
  ImageGrid seds_image;
  ImageGrid dds_image;

  /// key=value block. Wall times are machine-dependent, so they are only
  /// included on request.
  std::string to_text(bool include_timings = false) const;
};

/// Runs both pipelines on the same sample: SEDS (scan_seds, build_system,
/// solve) and DDS (scan_dds with margin_px, dds_deconvolve).
ComparisonReport compare_methods(const ImageGrid& sample, const SpotKernel& spot, int margin_px,
                                 const SolverConfig& solver, const FilterConfig& filter,
                                 const BoundaryCondition& bc = BoundaryCondition::zero());

}  // namespace seds
