// Command-line front end: phantom/spot generation, scanning, solving, the DDS
// baseline, and the two reference experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "seds/dds.hpp"
#include "seds/error.hpp"
#include "seds/experiment.hpp"
#include "seds/grid_io.hpp"
#include "seds/metrics.hpp"
#include "seds/optics.hpp"
#include "seds/parallel.hpp"
#include "seds/scan.hpp"
#include "seds/solve.hpp"
#include "seds/system.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kSingular = 3,
  kNotConverged = 4,
  kIo = 5,
};

int exit_code_for(seds::ErrorCode code) {
  switch (code) {
    case seds::ErrorCode::Singular: return kSingular;
    case seds::ErrorCode::NotConverged: return kNotConverged;
    case seds::ErrorCode::Io:
    case seds::ErrorCode::Parse: return kIo;
    default: return kUsage;
  }
}

// CLI11 validators that reuse the library parsers.
template <typename Parse>
CLI::Validator parsed_by(Parse parse, std::string name) {
  return CLI::Validator(
      [parse](std::string& text) -> std::string {
        try {
          parse(text);
        } catch (const seds::Error& e) {
          return e.what();
        }
        return {};
      },
      std::move(name));
}

void write_grid(const std::string& path, const seds::Grid& grid, const std::string& format,
                const std::vector<std::string>& comments = {}) {
  if (seds::parse_grid_format(format) == seds::GridFormat::Pgm) {
    seds::write_pgm16(path, grid);
  } else {
    seds::write_grid_csv(path, grid, comments);
  }
}

void emit_report(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    seds::write_text(path, text);
  }
}

seds::SpotKernel read_spot(const std::string& path) {
  return seds::SpotKernel::from_grid(seds::read_grid_csv(path).grid);
}

seds::ImageGrid read_sample(const std::string& path) {
  seds::ImageGrid image = seds::read_grid_csv(path).grid;
  seds::check_image(image);
  return image;
}

struct Common {
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "csv";
  std::string bc = "zero";
  int margin = -1;
  double tol = 1e-12;
  std::size_t max_iters = 0;
  std::string method = "auto";
  double lambda = 0.0;
  unsigned threads = 1;
};

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "Iterative stopping tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", c.max_iters, "Iteration cap (0 = 10 * unknowns)")->capture_default_str();
  cmd->add_option("--method", c.method, "auto, direct or iterative")
      ->capture_default_str()
      ->check(parsed_by(seds::parse_method, "METHOD"));
  cmd->add_option("--lambda", c.lambda, "Tikhonov regularization weight")->capture_default_str()->check(CLI::NonNegativeNumber);
}

seds::SolverConfig solver_config(const Common& c) {
  seds::SolverConfig cfg;
  cfg.tolerance = c.tol;
  cfg.max_iterations = c.max_iters;
  cfg.method = seds::parse_method(c.method);
  cfg.regularization_lambda = c.lambda;
  return cfg;
}

const auto kBcCheck = parsed_by(seds::BoundaryCondition::parse, "BC");
const auto kFormatCheck = CLI::IsMember({"csv", "pgm"});

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dense-scan microscopy simulator and equation-system reconstruction"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();

  // phantom
  auto* phantom = app.add_subcommand("phantom", "Generate a synthetic sample");
  seds::PhantomSpec ph;
  std::string kind = "uniform-random";
  phantom->add_option("--rows", ph.rows)->required()->check(CLI::PositiveNumber);
  phantom->add_option("--cols", ph.cols)->required()->check(CLI::PositiveNumber);
  phantom->add_option("--kind", kind, "uniform-random, checkerboard or constant")
      ->capture_default_str()
      ->check(parsed_by(seds::parse_phantom_kind, "KIND"));
  phantom->add_option("--scale", ph.scale)->capture_default_str()->check(CLI::PositiveNumber);
  phantom->add_option("--seed", c.seed)->capture_default_str();
  phantom->add_option("--out", c.out)->required();
  phantom->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);

  // spot
  auto* spot = app.add_subcommand("spot", "Generate an illumination spot");
  seds::SpotSpec sp;
  std::string profile = "gaussian";
  spot->add_option("--size", sp.size_px, "Odd kernel size in pixels")->required();
  spot->add_option("--profile", profile)->capture_default_str()->check(CLI::IsMember({"gaussian", "disk"}));
  spot->add_option("--sigma", sp.sigma_px)->capture_default_str();
  spot->add_option("--radius", sp.radius_px)->capture_default_str();
  spot->add_option("--peak", sp.peak)->capture_default_str();
  spot->add_option("--out", c.out)->required();
  spot->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);

  // scan
  auto* scan = app.add_subcommand("scan", "Simulate a dense scan (SEDS or DDS footprints)");
  std::string sample_path, spot_path, mode = "seds";
  double noise_sigma = 0.0;
  scan->add_option("--sample", sample_path)->required();
  scan->add_option("--spot", spot_path)->required();
  scan->add_option("--mode", mode)->capture_default_str()->check(CLI::IsMember({"seds", "dds"}));
  scan->add_option("--bc", c.bc, "zero or const:<v>")->capture_default_str()->check(kBcCheck);
  scan->add_option("--margin", c.margin, "DDS margin per side (default k - 1)");
  scan->add_option("--noise-sigma", noise_sigma, "Additive Gaussian noise on S")->check(CLI::NonNegativeNumber);
  scan->add_option("--seed", c.seed, "Noise seed")->capture_default_str();
  scan->add_option("--out", c.out)->required();
  scan->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);

  // solve
  auto* solve = app.add_subcommand("solve", "Recover the ROI from a SEDS scan");
  std::string scan_path, report_path, reference_path, matrix_path, representation = "auto";
  std::optional<std::string> solve_bc;
  solve->add_option("--scan", scan_path)->required();
  solve->add_option("--spot", spot_path)->required();
  solve->add_option("--bc", solve_bc, "Override the scan's boundary condition")->check(kBcCheck);
  solve->add_option("--representation", representation)
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "explicit", "implicit"}));
  solve->add_option("--out", c.out)->required();
  solve->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);
  solve->add_option("--report", report_path, "Write the key=value report here instead of stdout");
  solve->add_option("--reference", reference_path, "Ground-truth sample for error metrics");
  solve->add_option("--export-matrix", matrix_path, "Write A in coordinate format");
  add_solver_flags(solve, c);

  // sted
  auto* sted = app.add_subcommand("sted", "Non-overlapping scan with step = spot size");
  sted->add_option("--sample", sample_path)->required();
  sted->add_option("--spot", spot_path)->required();
  sted->add_option("--out", c.out)->required();
  sted->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);

  // blur
  auto* blur = app.add_subcommand("blur", "Diffraction-limited wide-field image");
  std::string psf_path;
  double airy_radius = 0.0;
  blur->add_option("--sample", sample_path)->required();
  auto* psf_opt = blur->add_option("--psf", psf_path, "PSF grid");
  blur->add_option("--airy-radius", airy_radius, "Gaussian PSF with this Airy radius (px)")->excludes(psf_opt);
  blur->add_option("--out", c.out)->required();
  blur->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);

  // dds
  auto* dds = app.add_subcommand("dds", "Deconvolve a DDS scan by frequency-domain filtering");
  seds::FilterConfig filter;
  std::string filter_kind = "inverse";
  dds->add_option("--scan", scan_path)->required();
  dds->add_option("--spot", spot_path)->required();
  dds->add_option("--filter", filter_kind)->capture_default_str()->check(CLI::IsMember({"inverse", "wiener"}));
  dds->add_option("--eps", filter.eps)->capture_default_str()->check(CLI::NonNegativeNumber);
  dds->add_option("--wiener-k", filter.wiener_k)->capture_default_str()->check(CLI::NonNegativeNumber);
  dds->add_option("--out", c.out)->required();
  dds->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);

  // compare
  auto* compare = app.add_subcommand("compare", "SEDS versus DDS on one sample");
  std::string seds_out, dds_out;
  bool timings = false;
  compare->add_option("--sample", sample_path)->required();
  compare->add_option("--spot", spot_path)->required();
  compare->add_option("--bc", c.bc)->capture_default_str()->check(kBcCheck);
  compare->add_option("--margin", c.margin, "DDS margin per side (default k - 1)");
  compare->add_option("--filter", filter_kind)->capture_default_str()->check(CLI::IsMember({"inverse", "wiener"}));
  compare->add_option("--eps", filter.eps)->capture_default_str()->check(CLI::NonNegativeNumber);
  compare->add_option("--wiener-k", filter.wiener_k)->capture_default_str()->check(CLI::NonNegativeNumber);
  compare->add_option("--report", report_path);
  compare->add_option("--seds-out", seds_out, "Grid-CSV of the SEDS reconstruction");
  compare->add_option("--dds-out", dds_out, "Grid-CSV of the DDS reconstruction");
  compare->add_flag("--timings", timings, "Include wall times in the report");
  add_solver_flags(compare, c);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a reference experiment end to end");
  std::string preset = "1", out_dir;
  std::optional<double> sigma;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::string> exp_bc, exp_method;
  std::optional<int> exp_margin;
  bool no_sted = false, no_conventional = false, no_dds = false;
  experiment->add_option("--preset", preset)->capture_default_str()->check(CLI::IsMember({"1", "2", "degenerate"}));
  experiment->add_option("--out-dir", out_dir)->required();
  experiment->add_option("--seed", exp_seed, "Phantom seed");
  experiment->add_option("--sigma", sigma, "Gaussian spot sigma (px)")->check(CLI::PositiveNumber);
  experiment->add_option("--bc", exp_bc)->check(kBcCheck);
  experiment->add_option("--margin", exp_margin, "DDS margin per side");
  experiment->add_option("--method", exp_method)->check(parsed_by(seds::parse_method, "METHOD"));
  experiment->add_option("--tol", c.tol)->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--max-iters", c.max_iters)->capture_default_str();
  experiment->add_option("--format", c.format)->capture_default_str()->check(kFormatCheck);
  experiment->add_flag("--no-sted", no_sted);
  experiment->add_flag("--no-conventional", no_conventional);
  experiment->add_flag("--no-dds", no_dds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    seds::set_thread_count(c.threads);

    if (*phantom) {
      ph.kind = seds::parse_phantom_kind(kind);
      ph.seed = c.seed;
      write_grid(c.out, ph.build(), c.format);
    } else if (*spot) {
      sp.profile = profile == "disk" ? seds::SpotSpec::Profile::Disk : seds::SpotSpec::Profile::Gaussian;
      write_grid(c.out, sp.build().to_grid(), c.format);
    } else if (*scan) {
      const auto sample = read_sample(sample_path);
      const auto kernel = read_spot(spot_path);
      const auto bc = seds::BoundaryCondition::parse(c.bc);
      const seds::NoiseOptions noise{noise_sigma, c.seed};
      const auto result = mode == "seds"
                              ? seds::scan_seds(sample, kernel, bc, noise)
                              : seds::scan_dds(sample, kernel, bc,
                                               c.margin >= 0 ? c.margin : seds::default_dds_margin(kernel.size()),
                                               noise);
      write_grid(c.out, result.values, c.format, {seds::measurement_metadata(result)});
    } else if (*solve) {
      const auto measured = seds::read_measurement_csv(scan_path);
      const auto kernel = read_spot(spot_path);
      const auto bc = solve_bc ? seds::BoundaryCondition::parse(*solve_bc) : measured.bc;
      const auto cfg = solver_config(c);
      seds::Representation rep = seds::preferred_representation(measured.values.size(), cfg.method);
      if (representation == "explicit") rep = seds::Representation::Explicit;
      if (representation == "implicit") rep = seds::Representation::Implicit;
      if (!matrix_path.empty()) rep = seds::Representation::Explicit;
      const auto system = seds::build_system(measured, kernel, bc, rep);
      if (!matrix_path.empty()) {
        std::ofstream out(matrix_path);
        if (!out) throw seds::Error(seds::ErrorCode::Io, "cannot open '" + matrix_path + "'");
        std::get<seds::ExplicitMatrix>(system.op).write_coordinate(out);
        if (!out.flush()) throw seds::Error(seds::ErrorCode::Io, "write to '" + matrix_path + "' failed");
      }
      const auto solved = seds::solve(system, cfg);
      write_grid(c.out, solved.image, c.format);
      std::string text = solved.report.to_text();
      if (!reference_path.empty()) {
        text += seds::compute_metrics(read_sample(reference_path), solved.image).to_text();
      }
      emit_report(report_path, text);
      if (!solved.report.converged) {
        std::cerr << "solve did not converge\n";
        return kNotConverged;
      }
    } else if (*sted) {
      write_grid(c.out, seds::scan_sted(read_sample(sample_path), read_spot(spot_path)), c.format);
    } else if (*blur) {
      const auto sample = read_sample(sample_path);
      if (psf_path.empty() && !(airy_radius > 0.0)) {
        throw seds::Error(seds::ErrorCode::InvalidArgument, "give --psf or a positive --airy-radius");
      }
      const auto psf = psf_path.empty()
                           ? seds::conventional_psf(airy_radius, sample.rows(), sample.cols())
                           : read_spot(psf_path);
      write_grid(c.out, seds::blur_conventional(sample, psf), c.format);
    } else if (*dds) {
      filter.kind = seds::parse_filter_kind(filter_kind);
      const auto measured = seds::read_measurement_csv(scan_path);
      write_grid(c.out, seds::dds_deconvolve(measured, read_spot(spot_path), filter), c.format);
    } else if (*compare) {
      filter.kind = seds::parse_filter_kind(filter_kind);
      const auto sample = read_sample(sample_path);
      const auto kernel = read_spot(spot_path);
      const int margin = c.margin >= 0 ? c.margin : seds::default_dds_margin(kernel.size());
      const auto report = seds::compare_methods(sample, kernel, margin, solver_config(c), filter,
                                                seds::BoundaryCondition::parse(c.bc));
      if (!seds_out.empty()) seds::write_grid_csv(seds_out, report.seds_image);
      if (!dds_out.empty()) seds::write_grid_csv(dds_out, report.dds_image);
      emit_report(report_path, report.to_text(timings) + report.seds_solve.to_text());
      if (!report.seds_solve.converged) return kNotConverged;
    } else if (*experiment) {
      auto spec = seds::experiment_preset(preset);
      spec.out_dir = out_dir;
      spec.format = seds::parse_grid_format(c.format);
      if (exp_seed) spec.phantom.seed = *exp_seed;
      if (sigma) spec.spot.sigma_px = *sigma;
      if (exp_bc) spec.bc = seds::BoundaryCondition::parse(*exp_bc);
      if (exp_margin) spec.dds_margin = *exp_margin;
      if (exp_method) spec.solver.method = seds::parse_method(*exp_method);
      spec.solver.tolerance = c.tol;
      spec.solver.max_iterations = c.max_iters;
      if (no_sted) spec.run_sted = false;
      if (no_conventional) spec.run_conventional = false;
      if (no_dds) spec.run_dds = false;
      const auto result = seds::run_experiment(spec);
      std::cout << result.to_text(spec);
      if (!result.solve.converged) return kNotConverged;
    }
  } catch (const seds::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
