#include "seds/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "seds/error.hpp"
#include "seds/grid_io.hpp"

namespace seds {

SpotKernel SpotSpec::build() const {
  return profile == Profile::Gaussian ? make_gaussian_spot(size_px, sigma_px, peak)
                                      : make_disk_spot(size_px, radius_px, peak);
}

ImageGrid PhantomSpec::build() const { return make_phantom(rows, cols, kind, seed, scale); }

GridFormat parse_grid_format(const std::string& text) {
  if (text == "csv") return GridFormat::Csv;
  if (text == "pgm") return GridFormat::Pgm;
  throw Error(ErrorCode::Parse, "format must be csv or pgm; got '" + text + "'");
}

ExperimentSpec experiment_preset(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  if (name == "1") {
    // 9 nm spot, 3 nm step: 3x3 pixels; Airy radius 67-100 px.
    spec.spot = {SpotSpec::Profile::Gaussian, 3, 1.0, 1.0, 1.0};
    spec.solver.method = Method::Direct;
    spec.conventional_airy_radius_px = 100.0;
  } else if (name == "2") {
    // 10.1 nm spot, 0.1 nm step: 101x101 pixels; Airy radius 2000-3000 px.
    spec.spot = {SpotSpec::Profile::Gaussian, 101, 0.8, 1.0, 1.0};
    spec.solver.method = Method::Iterative;
    spec.conventional_airy_radius_px = 2000.0;
  } else if (name == "degenerate") {
    spec.phantom.rows = 2;
    spec.phantom.cols = 2;
    spec.spot = {SpotSpec::Profile::Disk, 5, 1.0, 10.0, 1.0};
    spec.solver.method = Method::Direct;
    spec.run_sted = false;
    spec.run_conventional = false;
    spec.run_dds = false;
  } else {
    throw Error(ErrorCode::UnknownKind, "unknown experiment preset '" + name + "'");
  }
  return spec;
}

SpotKernel conventional_psf(double airy_radius_px, std::size_t rows, std::size_t cols) {
  if (!(airy_radius_px > 0.0)) throw Error(ErrorCode::NonPositiveParam, "Airy radius must be > 0");
  const double reach = static_cast<double>(std::max(rows, cols) - 1);
  const int half = static_cast<int>(std::min(std::ceil(airy_radius_px), reach));
  return make_gaussian_spot(2 * half + 1, airy_radius_px / 3.0, 1.0);
}

namespace {

void emit(ExperimentResult& result, const ExperimentSpec& spec, const std::string& stem,
          const Grid& grid, const std::vector<std::string>& comments = {}) {
  const auto csv = spec.out_dir / (stem + ".csv");
  write_grid_csv(csv, grid, comments);
  result.files.push_back(csv);
  if (spec.format == GridFormat::Pgm) {
    const auto pgm = spec.out_dir / (stem + ".pgm");
    write_pgm16(pgm, grid);
    result.files.push_back(pgm);
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string ExperimentResult::to_text(const ExperimentSpec& spec) const {
  std::string out;
  out += "experiment=" + spec.name + "\n";
  out += "roi=" + std::to_string(spec.phantom.rows) + "x" + std::to_string(spec.phantom.cols) + "\n";
  out += "spot_size_px=" + std::to_string(spec.spot.size_px) + "\n";
  out += "bc=" + spec.bc.to_string() + "\n";
  out += "seds_footprints=" + std::to_string(seds_footprints) + "\n";
  if (dds_footprints) out += "dds_footprints=" + std::to_string(*dds_footprints) + "\n";
  out += "sted=" + sted_status + "\n";
  out += metrics.to_text();
  if (dds_mean_abs_diff) out += "dds_mean_abs_diff=" + format_double(*dds_mean_abs_diff) + "\n";
  out += solve.to_text();
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.solver.validate();
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + spec.out_dir.string() + "': " + ec.message());

  ExperimentResult result;
  const ImageGrid phantom = spec.phantom.build();
  const SpotKernel spot = spec.spot.build();
  emit(result, spec, "phantom", phantom);
  emit(result, spec, "spot", spot.to_grid());

  const MeasurementGrid scan = scan_seds(phantom, spot, spec.bc);
  write_measurement_csv(spec.out_dir / "scan.csv", scan);
  result.files.push_back(spec.out_dir / "scan.csv");
  result.seds_footprints = footprint_count(ScanMode::SEDS, spec.phantom.rows, spec.phantom.cols,
                                           spot.size());

  if (spec.run_sted) {
    try {
      const ImageGrid sted = scan_sted(phantom, spot);
      emit(result, spec, "sted", sted);
      result.sted_status = std::to_string(sted.rows()) + "x" + std::to_string(sted.cols());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SpotLargerThanROI) throw;
      result.sted_status = "no-image(SpotLargerThanROI)";
    }
  }
  if (spec.run_conventional) {
    const SpotKernel psf =
        conventional_psf(spec.conventional_airy_radius_px, phantom.rows(), phantom.cols());
    emit(result, spec, "conventional", blur_conventional(phantom, psf));
  }
  if (spec.run_dds) {
    const int margin = spec.effective_dds_margin();
    const MeasurementGrid dds_scan = scan_dds(phantom, spot, spec.bc, margin);
    write_measurement_csv(spec.out_dir / "dds_scan.csv", dds_scan);
    result.files.push_back(spec.out_dir / "dds_scan.csv");
    const ImageGrid dds_image = dds_deconvolve(dds_scan, spot, spec.filter);
    emit(result, spec, "dds_recovered", dds_image);
    result.dds_footprints = footprint_count(ScanMode::DDS, spec.phantom.rows, spec.phantom.cols,
                                            spot.size(), margin);
    result.dds_mean_abs_diff = mean_abs_diff(phantom, dds_image);
  }

  const LinearSystem system = build_system(
      scan, spot, spec.bc, preferred_representation(phantom.size(), spec.solver.method));
  SolveResult solved = solve(system, spec.solver);
  emit(result, spec, "recovered", solved.image);
  result.solve = solved.report;
  result.metrics = compute_metrics(phantom, solved.image);

  const auto report_path = spec.out_dir / "report.txt";
  write_text(report_path, result.to_text(spec));
  result.files.push_back(report_path);
  return result;
}

}  // namespace seds
