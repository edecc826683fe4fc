#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "seds/optics.hpp"
#include "seds/scan.hpp"

namespace seds {

/// Default upper bound on R*C for explicit assembly.
inline constexpr std::size_t kExplicitAssemblyCap = 20000;

/// Row-compressed sparse matrix. Row r = i*C + j is the footprint centered at
/// ROI pixel (i, j); column c = p*C + q is unknown pixel (p, q). Entries in a
/// row are stored in ascending column order, which is row-major (u, v) order.
class ExplicitMatrix {
 public:
  ExplicitMatrix(std::size_t n, std::vector<std::size_t> row_start,
                 std::vector<std::size_t> columns, std::vector<double> coefficients);

  std::size_t n() const noexcept { return n_; }
  std::size_t nonzeros() const noexcept { return coefficients_.size(); }

  std::span<const std::size_t> row_columns(std::size_t r) const {
    return {columns_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }
  std::span<const double> row_coefficients(std::size_t r) const {
    return {coefficients_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }

  double at(std::size_t r, std::size_t c) const;

  void apply(std::span<const double> x, std::span<double> y) const;
  void apply_transpose(std::span<const double> y, std::span<double> x) const;

  /// "row col value" per line, 0-based, sorted by (row, col), %.17g values.
  void write_coordinate(std::ostream& out) const;

 private:
  std::size_t n_;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> columns_;
  std::vector<double> coefficients_;
};

/// Matrix-free A: zero-boundary correlation of the R x C unknown image with
/// the spot. Zero-valued taps are skipped, which keeps the result bit-equal
/// to the explicit product.
class ImplicitOperator {
 public:
  ImplicitOperator(SpotKernel spot, std::size_t rows, std::size_t cols);

  std::size_t n() const noexcept { return rows_ * cols_; }
  const SpotKernel& spot() const noexcept { return spot_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  /// A^T y: correlation with the offset-flipped kernel.
  void apply_transpose(std::span<const double> y, std::span<double> x) const;

 private:
  // A run of consecutive nonzero taps I(u, v_first .. v_first + n - 1).
  struct Segment {
    long u;
    long v_first;
    std::vector<double> weights;
  };

  static std::vector<Segment> nonzero_segments(const SpotKernel& spot);
  void correlate(const std::vector<Segment>& segments, std::span<const double> x,
                 std::span<double> y) const;

  SpotKernel spot_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Segment> segments_;
  std::vector<Segment> flipped_segments_;
};

enum class Representation { Explicit, Implicit };

struct LinearSystem {
  std::variant<ExplicitMatrix, ImplicitOperator> op;
  std::vector<double> rhs;
  std::size_t roi_rows = 0;
  std::size_t roi_cols = 0;
  /// The spot the system was built from, when known.
  std::optional<SpotKernel> spot;

  std::size_t n() const noexcept { return roi_rows * roi_cols; }
  bool is_explicit() const noexcept { return std::holds_alternative<ExplicitMatrix>(op); }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_transpose(std::span<const double> y) const;
};

ExplicitMatrix assemble_explicit(const SpotKernel& spot, std::size_t rows, std::size_t cols,
                                 std::size_t cap = kExplicitAssemblyCap);

/// y = A x through the implicit operator. Throws LengthMismatch.
std::vector<double> apply_operator(const SpotKernel& spot, std::size_t rows, std::size_t cols,
                                   std::span<const double> x);

/// Builds A x = b from a SEDS scan. Boundary constants fold into b:
/// b(i, j) = S(i, j) - c * (sum of spot taps landing outside the ROI).
LinearSystem build_system(const MeasurementGrid& scan, const SpotKernel& spot,
                          const BoundaryCondition& bc, Representation representation,
                          std::size_t explicit_cap = kExplicitAssemblyCap);

}  // namespace seds
