#include "seds/system.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "seds/error.hpp"
#include "seds/parallel.hpp"

namespace seds {

namespace {

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::LengthMismatch, std::string(what) + " has length " +
                                               std::to_string(got) + ", expected " +
                                               std::to_string(want));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ExplicitMatrix

ExplicitMatrix::ExplicitMatrix(std::size_t n, std::vector<std::size_t> row_start,
                               std::vector<std::size_t> columns, std::vector<double> coefficients)
    : n_(n),
      row_start_(std::move(row_start)),
      columns_(std::move(columns)),
      coefficients_(std::move(coefficients)) {
  if (row_start_.size() != n_ + 1 || row_start_.front() != 0 ||
      row_start_.back() != columns_.size() || columns_.size() != coefficients_.size()) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent row-compressed storage");
  }
  for (std::size_t r = 0; r < n_; ++r) {
    if (row_start_[r] > row_start_[r + 1]) {
      throw Error(ErrorCode::InvalidArgument, "row offsets must be nondecreasing");
    }
    for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
      if (columns_[e] >= n_ || (e > row_start_[r] && columns_[e] <= columns_[e - 1])) {
        throw Error(ErrorCode::InvalidArgument, "columns must be in range and strictly ascending");
      }
    }
  }
}

double ExplicitMatrix::at(std::size_t r, std::size_t c) const {
  const auto cols = row_columns(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return row_coefficients(r)[static_cast<std::size_t>(it - cols.begin())];
}

void ExplicitMatrix::apply(std::span<const double> x, std::span<double> y) const {
  check_length(x.size(), n_, "x");
  check_length(y.size(), n_, "y");
  parallel_for(n_, [&](std::size_t r) {
    double sum = 0.0;
    for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
      sum += coefficients_[e] * x[columns_[e]];
    }
    y[r] = sum;
  });
}

void ExplicitMatrix::apply_transpose(std::span<const double> y, std::span<double> x) const {
  check_length(y.size(), n_, "y");
  check_length(x.size(), n_, "x");
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
      x[columns_[e]] += coefficients_[e] * y[r];
    }
  }
}

void ExplicitMatrix::write_coordinate(std::ostream& out) const {
  char buf[96];
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
      std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", r, columns_[e], coefficients_[e]);
      out << buf;
    }
  }
}

// ---------------------------------------------------------------------------
// ImplicitOperator

ImplicitOperator::ImplicitOperator(SpotKernel spot, std::size_t rows, std::size_t cols)
    : spot_(std::move(spot)),
      rows_(rows),
      cols_(cols),
      segments_(nonzero_segments(spot_)),
      flipped_segments_(nonzero_segments(spot_.flipped())) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidArgument, "ROI dimensions must be >= 1");
}

std::vector<ImplicitOperator::Segment> ImplicitOperator::nonzero_segments(const SpotKernel& spot) {
  std::vector<Segment> segments;
  const int half = spot.half();
  for (int u = -half; u <= half; ++u) {
    for (int v = -half; v <= half; ++v) {
      const double w = spot.at(u, v);
      if (w == 0.0) continue;
      const bool extends = !segments.empty() && segments.back().u == u &&
                           segments.back().v_first + static_cast<long>(segments.back().weights.size()) == v;
      if (!extends) segments.push_back({u, v, {}});
      segments.back().weights.push_back(w);
    }
  }
  return segments;
}

// Same tap order as the explicit rows: row-major (u, v), zero and
// out-of-range taps skipped.
void ImplicitOperator::correlate(const std::vector<Segment>& segments, std::span<const double> x,
                                 std::span<double> y) const {
  const long rows = static_cast<long>(rows_);
  const long cols = static_cast<long>(cols_);
  parallel_for(rows_, [&](std::size_t i) {
    const long ci = static_cast<long>(i);
    for (long cj = 0; cj < cols; ++cj) {
      double sum = 0.0;
      for (const Segment& s : segments) {
        const long r = ci + s.u;
        if (r < 0 || r >= rows) continue;
        const long len = static_cast<long>(s.weights.size());
        const long first = std::max(0L, -(cj + s.v_first));
        const long last = std::min(len, cols - cj - s.v_first);
        if (first >= last) continue;
        const double* w = s.weights.data() + first;
        const double* xr = x.data() + (r * cols + cj + s.v_first + first);
        for (long t = 0; t < last - first; ++t) sum += w[t] * xr[t];
      }
      y[static_cast<std::size_t>(ci * cols + cj)] = sum;
    }
  });
}

void ImplicitOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_length(x.size(), n(), "x");
  check_length(y.size(), n(), "y");
  correlate(segments_, x, y);
}

void ImplicitOperator::apply_transpose(std::span<const double> y, std::span<double> x) const {
  check_length(y.size(), n(), "y");
  check_length(x.size(), n(), "x");
  correlate(flipped_segments_, y, x);
}

// ---------------------------------------------------------------------------
// LinearSystem

std::vector<double> LinearSystem::apply(std::span<const double> x) const {
  std::vector<double> y(n());
  std::visit([&](const auto& a) { a.apply(x, y); }, op);
  return y;
}

std::vector<double> LinearSystem::apply_transpose(std::span<const double> y) const {
  std::vector<double> x(n());
  std::visit([&](const auto& a) { a.apply_transpose(y, x); }, op);
  return x;
}

ExplicitMatrix assemble_explicit(const SpotKernel& spot, std::size_t rows, std::size_t cols,
                                 std::size_t cap) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidArgument, "ROI dimensions must be >= 1");
  const std::size_t n = rows * cols;
  if (n > cap) {
    throw Error(ErrorCode::DimensionOverflow, "explicit assembly of " + std::to_string(n) +
                                                  " rows exceeds cap " + std::to_string(cap) +
                                                  "; use the implicit representation");
  }
  const long half = spot.half();
  const long R = static_cast<long>(rows);
  const long C = static_cast<long>(cols);
  std::vector<std::size_t> row_start{0};
  std::vector<std::size_t> columns;
  std::vector<double> coefficients;
  row_start.reserve(n + 1);
  for (long i = 0; i < R; ++i) {
    for (long j = 0; j < C; ++j) {
      for (long u = std::max(-half, -i); u <= std::min(half, R - 1 - i); ++u) {
        for (long v = std::max(-half, -j); v <= std::min(half, C - 1 - j); ++v) {
          const double w = spot.at(static_cast<int>(u), static_cast<int>(v));
          if (w == 0.0) continue;
          columns.push_back(static_cast<std::size_t>((i + u) * C + (j + v)));
          coefficients.push_back(w);
        }
      }
      row_start.push_back(columns.size());
    }
  }
  return ExplicitMatrix(n, std::move(row_start), std::move(columns), std::move(coefficients));
}

std::vector<double> apply_operator(const SpotKernel& spot, std::size_t rows, std::size_t cols,
                                   std::span<const double> x) {
  const ImplicitOperator op(spot, rows, cols);
  check_length(x.size(), op.n(), "x");
  std::vector<double> y(op.n());
  op.apply(x, y);
  return y;
}

LinearSystem build_system(const MeasurementGrid& scan, const SpotKernel& spot,
                          const BoundaryCondition& bc, Representation representation,
                          std::size_t explicit_cap) {
  if (scan.mode != ScanMode::SEDS || scan.margin_px != 0) {
    throw Error(ErrorCode::ModeMismatch, "the equation system is built from a SEDS scan");
  }
  if (scan.spot_size_px != spot.size()) {
    throw Error(ErrorCode::SpotMismatch, "scan used a " + std::to_string(scan.spot_size_px) +
                                             "-pixel spot, given " + std::to_string(spot.size()));
  }
  if (!scan.values.all_finite()) throw Error(ErrorCode::InvalidArgument, "scan has non-finite values");
  const std::size_t rows = scan.values.rows();
  const std::size_t cols = scan.values.cols();
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidArgument, "empty scan");

  std::vector<double> rhs(scan.values.values().begin(), scan.values.values().end());
  if (bc.kind() == BoundaryCondition::Kind::Constant && bc.value() != 0.0) {
    const long half = spot.half();
    const long R = static_cast<long>(rows);
    const long C = static_cast<long>(cols);
    for (long i = 0; i < R; ++i) {
      for (long j = 0; j < C; ++j) {
        double outside = 0.0;
        for (long u = -half; u <= half; ++u) {
          for (long v = -half; v <= half; ++v) {
            const bool in = i + u >= 0 && i + u < R && j + v >= 0 && j + v < C;
            if (!in) outside += spot.at(static_cast<int>(u), static_cast<int>(v));
          }
        }
        rhs[static_cast<std::size_t>(i * C + j)] -= bc.value() * outside;
      }
    }
  }

  LinearSystem system{
      representation == Representation::Explicit
          ? std::variant<ExplicitMatrix, ImplicitOperator>(assemble_explicit(spot, rows, cols, explicit_cap))
          : std::variant<ExplicitMatrix, ImplicitOperator>(ImplicitOperator(spot, rows, cols)),
      std::move(rhs), rows, cols, spot};
  return system;
}

}  // namespace seds
