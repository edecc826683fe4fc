#include "seds/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seds/error.hpp"

namespace seds {

Grid::Grid(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw Error(ErrorCode::LengthMismatch,
                "grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " given " + std::to_string(values_.size()) + " values");
  }
}

bool Grid::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool Grid::all_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= 0.0; });
}

void check_image(const Grid& image) {
  if (image.empty()) throw Error(ErrorCode::InvalidImage, "image has no pixels");
  if (!image.all_finite()) throw Error(ErrorCode::InvalidImage, "image has non-finite values");
  if (!image.all_nonnegative()) throw Error(ErrorCode::InvalidImage, "image has negative values");
}

}  // namespace seds
