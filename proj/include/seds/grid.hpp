#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seds {

/// Dense row-major 2-D array of doubles.
///
/// Indices are 0-based: pixel (i, j) here is pixel (i+1, j+1) in the 1-based
/// convention the measurement equations are usually written in. The flattened
/// position of (i, j) is i*cols + j, which is also the row/column ordering of
/// the assembled linear system.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, double fill = 0.0);
  Grid(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  bool all_finite() const;
  bool all_nonnegative() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Sample optical-property image (the expected image E, or a recovered one).
/// Recovered images may carry tiny negative rounding residue; only inputs to
/// the simulators are required to be nonnegative.
using ImageGrid = Grid;

/// Throws InvalidImage unless the grid is nonempty, finite and nonnegative.
void check_image(const Grid& image);

}  // namespace seds
