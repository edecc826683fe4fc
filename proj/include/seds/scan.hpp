#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "seds/grid.hpp"
#include "seds/optics.hpp"

namespace seds {

/// Known optical property of the peripheral frame around the ROI.
class BoundaryCondition {
 public:
  enum class Kind { Zero, Constant };

  static BoundaryCondition zero() { return BoundaryCondition(Kind::Zero, 0.0); }
  /// Throws InvalidArgument for negative or non-finite values.
  static BoundaryCondition constant(double value);

  Kind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

  /// "zero" or "const:<v>" (17 significant digits).
  std::string to_string() const;
  static BoundaryCondition parse(const std::string& text);

  friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;

 private:
  BoundaryCondition(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

enum class ScanMode { SEDS, DDS };

std::string to_string(ScanMode mode);
ScanMode parse_scan_mode(const std::string& text);

/// Scan sums S over footprint centers. For SEDS the grid covers the ROI; for
/// DDS it covers the ROI plus margin_px on every side, so S(0, 0) belongs to
/// the footprint centered at ROI pixel (-margin_px, -margin_px).
struct MeasurementGrid {
  Grid values;
  ScanMode mode = ScanMode::SEDS;
  int margin_px = 0;
  int spot_size_px = 1;
  BoundaryCondition bc = BoundaryCondition::zero();

  std::size_t roi_rows() const { return values.rows() - 2 * static_cast<std::size_t>(margin_px); }
  std::size_t roi_cols() const { return values.cols() - 2 * static_cast<std::size_t>(margin_px); }
};

/// Additive Gaussian noise on the scan sums. Off unless a sigma is given.
struct NoiseOptions {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// S(i, j) = sum_u sum_v I(u, v) * E(i+u, j+v) for every ROI pixel, with E
/// extended by the boundary value outside the ROI.
MeasurementGrid scan_seds(const ImageGrid& sample, const SpotKernel& spot,
                          const BoundaryCondition& bc, const NoiseOptions& noise = {});

/// Dense scan over the ROI and a margin_px-wide frame of peripheral area.
MeasurementGrid scan_dds(const ImageGrid& sample, const SpotKernel& spot,
                         const BoundaryCondition& bc, int margin_px,
                         const NoiseOptions& noise = {});

/// Default DDS margin per side: k - 1.
inline int default_dds_margin(int spot_size_px) { return spot_size_px - 1; }

/// Non-overlapping scan with step k anchored at the ROI's top-left corner,
/// zero boundary. Output (p, q) is the sum at center (p*k + half, q*k + half).
/// Throws SpotLargerThanROI when k > min(R, C).
ImageGrid scan_sted(const ImageGrid& sample, const SpotKernel& spot);

/// Zero-boundary correlation with the unit-sum normalized psf; same size as
/// the sample. Only used to visualize the diffraction-limited image.
ImageGrid blur_conventional(const ImageGrid& sample, const SpotKernel& psf);

std::int64_t footprint_count(ScanMode mode, std::int64_t rows, std::int64_t cols,
                             int spot_size_px, int margin_px = 0);

}  // namespace seds
