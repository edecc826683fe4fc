#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "seds/grid.hpp"

namespace seds {

/// Illumination spot I(u, v): a square, odd-sized kernel addressed by signed
/// offsets u, v in [-half, half] with (0, 0) at the center. Intensities are
/// raw (not normalized to unit sum).
class SpotKernel {
 public:
  /// Validates: size odd and >= 1, values finite and >= 0, at least one > 0.
  SpotKernel(int size_px, std::vector<double> values);

  int size() const noexcept { return size_; }
  int half() const noexcept { return (size_ - 1) / 2; }

  double at(int u, int v) const noexcept {
    return values_[static_cast<std::size_t>((u + half()) * size_ + (v + half()))];
  }

  std::span<const double> values() const noexcept { return values_; }
  double sum() const;

  /// The kernel as a size x size grid (row index u + half, column v + half).
  Grid to_grid() const;
  static SpotKernel from_grid(const Grid& grid);

  /// I(-u, -v); the kernel of the transpose operator.
  SpotKernel flipped() const;

  friend bool operator==(const SpotKernel&, const SpotKernel&) = default;

 private:
  int size_;
  std::vector<double> values_;
};

struct SpotDiagnostics {
  bool is_constant = false;
  double min_value = 0.0;
  double max_value = 0.0;
  double sum = 0.0;
  double constancy_spread = 0.0;
};

/// Relative spread below which a spot counts as constant.
inline constexpr double kConstancyEpsilon = 1e-12;

SpotKernel make_gaussian_spot(int size_px, double sigma_px, double peak);
SpotKernel make_disk_spot(int size_px, double radius_px, double intensity);

/// Flags the constant-intensity spot, for which every equation of a small ROI
/// is identical and the scan cannot be inverted.
SpotDiagnostics validate_spot(const SpotKernel& spot);

enum class PhantomKind { UniformRandom, Checkerboard, Constant };

PhantomKind parse_phantom_kind(std::string_view name);
std::string_view to_string(PhantomKind kind);

/// Synthetic sample. UniformRandom draws row-major values scale * u with u
/// from SplitMix64(seed).uniform(); Checkerboard puts scale at (0,0) and
/// alternates with 0; Constant fills with scale.
ImageGrid make_phantom(int rows, int cols, PhantomKind kind, std::uint64_t seed,
                       double scale);

}  // namespace seds
