#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seds/dds.hpp"
#include "seds/metrics.hpp"
#include "seds/optics.hpp"
#include "seds/scan.hpp"
#include "seds/solve.hpp"

namespace seds {

struct SpotSpec {
  enum class Profile { Gaussian, Disk };

  Profile profile = Profile::Gaussian;
  int size_px = 3;
  double sigma_px = 1.0;
  double radius_px = 1.0;
  double peak = 1.0;

  SpotKernel build() const;
};

struct PhantomSpec {
  int rows = 60;
  int cols = 60;
  PhantomKind kind = PhantomKind::UniformRandom;
  std::uint64_t seed = 42;
  double scale = 255.0;

  ImageGrid build() const;
};

enum class GridFormat { Csv, Pgm };

GridFormat parse_grid_format(const std::string& text);

/// One end-to-end simulation: phantom, spot, SEDS scan, system solve, and the
/// optional STED / conventional / DDS comparisons.
struct ExperimentSpec {
  std::string name = "custom";
  PhantomSpec phantom;
  SpotSpec spot;
  BoundaryCondition bc = BoundaryCondition::zero();
  SolverConfig solver;
  /// Negative selects default_dds_margin(k).
  int dds_margin = -1;
  FilterConfig filter;
  bool run_sted = true;
  bool run_conventional = true;
  bool run_dds = true;
  /// Airy-disk radius of the diffraction-limited microscope, in pixels.
  double conventional_airy_radius_px = 100.0;
  std::filesystem::path out_dir = ".";
  GridFormat format = GridFormat::Csv;

  int effective_dds_margin() const {
    return dds_margin >= 0 ? dds_margin : default_dds_margin(spot.size_px);
  }
};

/// Named presets: "1" (3x3 spot, direct), "2" (101x101 spot, iterative), "degenerate".
ExperimentSpec experiment_preset(const std::string& name);

/// Gaussian stand-in for a microscope PSF with the given Airy radius,
/// cropped to the largest window a rows x cols image can see.
SpotKernel conventional_psf(double airy_radius_px, std::size_t rows, std::size_t cols);

struct ExperimentResult {
  MetricsReport metrics;
  SolveReport solve;
  std::int64_t seds_footprints = 0;
  std::optional<std::int64_t> dds_footprints;
  std::optional<double> dds_mean_abs_diff;
  /// "R'xC'" on success, otherwise the reason no STED image exists.
  std::string sted_status = "skipped";
  std::vector<std::filesystem::path> files;

  std::string to_text(const ExperimentSpec& spec) const;
};

/// Writes every grid and report.txt into spec.out_dir. Singular systems
/// propagate as Error; non-convergence is reported via solve.converged.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace seds
