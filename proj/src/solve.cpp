#include "seds/solve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "seds/error.hpp"
#include "seds/optics.hpp"

namespace seds {

std::string to_string(Method method) {
  switch (method) {
    case Method::Auto: return "auto";
    case Method::Direct: return "direct";
    case Method::Iterative: return "iterative";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  if (text == "auto") return Method::Auto;
  if (text == "direct") return Method::Direct;
  if (text == "iterative") return Method::Iterative;
  throw Error(ErrorCode::Parse, "method must be auto, direct or iterative; got '" + text + "'");
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0");
  if (!(regularization_lambda >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "regularization lambda must be >= 0");
  }
}

std::string SolveReport::to_text() const {
  char buf[64];
  std::string out;
  out += "method=" + to_string(method) + "\n";
  out += "iterations=" + std::to_string(iterations) + "\n";
  std::snprintf(buf, sizeof buf, "%.17g", residual_norm);
  out += std::string("residual_norm=") + buf + "\n";
  out += std::string("converged=") + (converged ? "true" : "false") + "\n";
  if (condition_hint) {
    std::snprintf(buf, sizeof buf, "%.17g", *condition_hint);
    out += std::string("condition_hint=") + buf + "\n";
  }
  return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

ImageGrid unflatten(const LinearSystem& system, std::vector<double> x) {
  return ImageGrid(system.roi_rows, system.roi_cols, std::move(x));
}

// Dense band storage for LU with partial pivoting. Row r keeps columns
// [r - lower, r + lower + upper]: pivoting can push the upper bandwidth of U
// up to lower + upper.
class BandedLU {
 public:
  BandedLU(const ExplicitMatrix& a) : n_(a.n()) {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c : a.row_columns(r)) {
        if (c < r) lower_ = std::max(lower_, r - c);
        else upper_ = std::max(upper_, c - r);
      }
    }
    width_ = 2 * lower_ + upper_ + 1;
    band_.assign(n_ * width_, 0.0);
    for (std::size_t r = 0; r < n_; ++r) {
      const auto cols = a.row_columns(r);
      const auto coef = a.row_coefficients(r);
      for (std::size_t e = 0; e < cols.size(); ++e) {
        at(r, cols[e]) = coef[e];
        scale_ = std::max(scale_, std::abs(coef[e]));
      }
    }
  }

  // Factors and solves in place; returns the pivot magnitude ratio.
  double solve(std::vector<double>& b) {
    const double threshold = kPivotEpsilon * scale_;
    double min_pivot = INFINITY, max_pivot = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t last_row = std::min(n_ - 1, k + lower_);
      const std::size_t last_col = std::min(n_ - 1, k + lower_ + upper_);
      std::size_t p = k;
      for (std::size_t r = k + 1; r <= last_row; ++r) {
        if (std::abs(at(r, k)) > std::abs(at(p, k))) p = r;
      }
      const double pivot = std::abs(at(p, k));
      if (!(pivot >= threshold) || pivot == 0.0) {
        throw Error(ErrorCode::Singular,
                    "pivot " + std::to_string(pivot) + " at column " + std::to_string(k) +
                        " below threshold; the system cannot be solved uniquely");
      }
      min_pivot = std::min(min_pivot, pivot);
      max_pivot = std::max(max_pivot, pivot);
      if (p != k) {
        for (std::size_t c = k; c <= last_col; ++c) std::swap(at(k, c), at(p, c));
        std::swap(b[k], b[p]);
      }
      const double diag = at(k, k);
      for (std::size_t r = k + 1; r <= last_row; ++r) {
        const double f = at(r, k) / diag;
        if (f == 0.0) continue;
        at(r, k) = 0.0;
        for (std::size_t c = k + 1; c <= last_col; ++c) at(r, c) -= f * at(k, c);
        b[r] -= f * b[k];
      }
    }
    for (std::size_t k = n_; k-- > 0;) {
      const std::size_t last_col = std::min(n_ - 1, k + lower_ + upper_);
      double s = b[k];
      for (std::size_t c = k + 1; c <= last_col; ++c) s -= at(k, c) * b[c];
      b[k] = s / at(k, k);
    }
    return max_pivot / min_pivot;
  }

 private:
  double& at(std::size_t r, std::size_t c) { return band_[r * width_ + (c + lower_ - r)]; }

  std::size_t n_;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::size_t width_ = 1;
  double scale_ = 0.0;
  std::vector<double> band_;
};

}  // namespace

void check_constant_spot_degeneracy(const LinearSystem& system) {
  if (!system.spot) return;
  const SpotKernel& spot = *system.spot;
  const std::size_t reach = std::max(system.roi_rows, system.roi_cols) - 1;
  if (static_cast<std::size_t>(spot.half()) >= reach && validate_spot(spot).is_constant) {
    throw Error(ErrorCode::Singular,
                "constant spot covers the whole ROI from every footprint; all equations are "
                "identical and the system cannot be solved uniquely");
  }
}

double residual_norm(const LinearSystem& system, std::span<const double> x) {
  if (x.size() != system.n()) {
    throw Error(ErrorCode::LengthMismatch, "x has length " + std::to_string(x.size()) +
                                               ", system has " + std::to_string(system.n()));
  }
  std::vector<double> r = system.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= system.rhs[i];
  return norm2(r);
}

SolveResult solve_direct(const LinearSystem& system) {
  const auto* matrix = std::get_if<ExplicitMatrix>(&system.op);
  if (matrix == nullptr) {
    throw Error(ErrorCode::NotExplicit, "direct solve needs an explicitly assembled matrix");
  }
  check_constant_spot_degeneracy(system);
  std::vector<double> x = system.rhs;
  BandedLU lu(*matrix);
  const double pivot_ratio = lu.solve(x);

  SolveReport report;
  report.method = Method::Direct;
  report.iterations = 0;
  report.residual_norm = residual_norm(system, x);
  report.converged = true;
  report.condition_hint = pivot_ratio;
  return {unflatten(system, std::move(x)), report};
}

SolveResult solve_iterative(const LinearSystem& system, const SolverConfig& config) {
  config.validate();
  check_constant_spot_degeneracy(system);
  const std::size_t n = system.n();
  const double lambda = config.regularization_lambda;
  const std::size_t max_iterations = config.max_iterations > 0 ? config.max_iterations : 10 * n;

  // g = A^T b - (A^T A + lambda I) x
  auto normal_residual = [&](const std::vector<double>& x) {
    std::vector<double> r = system.apply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= system.rhs[i];
    std::vector<double> g = system.apply_transpose(r);
    for (std::size_t i = 0; i < n; ++i) g[i] = -g[i] - lambda * x[i];
    return g;
  };

  std::vector<double> x(n, 0.0);
  const std::vector<double> atb = system.apply_transpose(system.rhs);
  const double residual_bound = config.tolerance * std::max(1.0, norm2(system.rhs));
  // Without regularization the target is tightened until ||Ax - b|| also
  // meets residual_bound.
  double target = config.tolerance * norm2(atb);

  SolveReport report;
  report.method = Method::Iterative;
  bool converged = target == 0.0;

  std::vector<double> r = atb;
  std::vector<double> p = r;
  double rr = dot(r, r);
  std::size_t it = 0;
  while (!converged && it < max_iterations) {
    ++it;
    const std::vector<double> q = system.apply(p);
    const double denom = dot(q, q) + lambda * dot(p, p);
    if (!(denom > 0.0)) break;
    const double alpha = rr / denom;
    const std::vector<double> s = system.apply_transpose(q);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * (s[i] + lambda * p[i]);
    }
    double rr_next = dot(r, r);
    if (std::sqrt(rr_next) <= target) {
      // Confirm against the true residual; the recursion drifts near machine precision.
      r = normal_residual(x);
      rr_next = dot(r, r);
      if (std::sqrt(rr_next) <= target) {
        if (lambda > 0.0 || residual_norm(system, x) <= residual_bound) {
          converged = true;
          break;
        }
        target *= 0.1;
      }
      p = r;
      rr = rr_next;
      continue;
    }
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
  }

  report.iterations = it;
  report.residual_norm = residual_norm(system, x);
  report.converged = converged && (lambda > 0.0 || report.residual_norm <= residual_bound);
  return {unflatten(system, std::move(x)), report};
}

Representation preferred_representation(std::size_t n, Method method) {
  const bool direct = method == Method::Direct || (method == Method::Auto && n <= kDirectThreshold);
  return direct ? Representation::Explicit : Representation::Implicit;
}

SolveResult solve(const LinearSystem& system, const SolverConfig& config) {
  config.validate();
  Method method = config.method;
  if (method == Method::Auto) {
    method = system.is_explicit() && system.n() <= kDirectThreshold ? Method::Direct
                                                                    : Method::Iterative;
  }
  return method == Method::Direct ? solve_direct(system) : solve_iterative(system, config);
}

}  // namespace seds
