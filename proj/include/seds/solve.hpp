#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seds/grid.hpp"
#include "seds/system.hpp"

namespace seds {

/// Relative pivot threshold of the direct solver.
inline constexpr double kPivotEpsilon = 1e-12;
/// Largest explicit system that Method::Auto hands to the direct solver.
inline constexpr std::size_t kDirectThreshold = 4096;

enum class Method { Auto, Direct, Iterative };

std::string to_string(Method method);
Method parse_method(const std::string& text);

struct SolverConfig {
  double tolerance = 1e-12;
  /// 0 selects 10 * n.
  std::size_t max_iterations = 0;
  Method method = Method::Auto;
  double regularization_lambda = 0.0;

  /// Throws InvalidArgument on tolerance <= 0 or lambda < 0.
  void validate() const;
};

struct SolveReport {
  Method method = Method::Direct;
  std::size_t iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  std::optional<double> condition_hint;

  /// key=value lines, one per field, '\n' terminated.
  std::string to_text() const;
};

struct SolveResult {
  ImageGrid image;
  SolveReport report;
};

/// Gaussian elimination with partial pivoting on the banded explicit matrix.
/// Throws Singular when a pivot falls below kPivotEpsilon times the largest
/// initial coefficient magnitude, and NotExplicit for matrix-free systems.
SolveResult solve_direct(const LinearSystem& system);

/// Conjugate gradients on (A^T A + lambda I) x = A^T b, matrix-free. Stops
/// when ||A^T(Ax - b) + lambda x|| <= tolerance * ||A^T b||. Running out of
/// iterations is not an exception: the last iterate comes back with
/// report.converged == false.
SolveResult solve_iterative(const LinearSystem& system, const SolverConfig& config);

/// Auto picks Direct for explicit systems with n <= kDirectThreshold.
SolveResult solve(const LinearSystem& system, const SolverConfig& config);

/// Explicit when the chosen method will factor the matrix (Direct, or Auto
/// with n <= kDirectThreshold); implicit otherwise.
Representation preferred_representation(std::size_t n, Method method);

/// ||A x - b||_2. Throws LengthMismatch.
double residual_norm(const LinearSystem& system, std::span<const double> x);

/// Throws Singular for a constant spot wide enough that every footprint
/// covers the whole ROI: all equations are then identical.
void check_constant_spot_degeneracy(const LinearSystem& system);

}  // namespace seds
