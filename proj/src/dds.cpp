#include "seds/dds.hpp"

#include <fftw3.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>
#include <mutex>

#include "seds/error.hpp"
#include "seds/metrics.hpp"

namespace seds {

void FilterConfig::validate() const {
  if (kind == Kind::Inverse && !(eps >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "inverse-filter eps must be >= 0");
  }
  if (kind == Kind::Wiener && !(wiener_k >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Wiener constant must be >= 0");
  }
}

FilterConfig::Kind parse_filter_kind(const std::string& text) {
  if (text == "inverse") return FilterConfig::Kind::Inverse;
  if (text == "wiener") return FilterConfig::Kind::Wiener;
  throw Error(ErrorCode::Parse, "filter must be inverse or wiener; got '" + text + "'");
}

std::string to_string(FilterConfig::Kind kind) {
  return kind == FilterConfig::Kind::Inverse ? "inverse" : "wiener";
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// Real 2-D transform pair on a rows x cols grid; spectra hold rows x (cols/2+1).
class RealFft2d {
 public:
  RealFft2d(std::size_t rows, std::size_t cols)
      : rows_(rows),
        cols_(cols),
        spectrum_cols_(cols / 2 + 1),
        real_(fftw_buffer<double>(rows * cols)),
        complex_(fftw_buffer<fftw_complex>(rows * spectrum_cols_)) {
    std::lock_guard lock(planner_mutex());
    forward_.reset(fftw_plan_dft_r2c_2d(static_cast<int>(rows), static_cast<int>(cols),
                                        real_.get(), complex_.get(), FFTW_ESTIMATE));
    backward_.reset(fftw_plan_dft_c2r_2d(static_cast<int>(rows), static_cast<int>(cols),
                                         complex_.get(), real_.get(), FFTW_ESTIMATE));
  }

  std::size_t spectrum_size() const { return rows_ * spectrum_cols_; }

  std::vector<std::complex<double>> forward(const std::vector<double>& input) {
    std::copy(input.begin(), input.end(), real_.get());
    fftw_execute(forward_.get());
    std::vector<std::complex<double>> out(spectrum_size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {complex_[i][0], complex_[i][1]};
    return out;
  }

  // Unnormalized inverse; c2r destroys its input, so the spectrum is copied.
  std::vector<double> backward(const std::vector<std::complex<double>>& spectrum) {
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      complex_[i][0] = spectrum[i].real();
      complex_[i][1] = spectrum[i].imag();
    }
    fftw_execute(backward_.get());
    return std::vector<double>(real_.get(), real_.get() + rows_ * cols_);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t spectrum_cols_;
  FftwBuffer<double> real_;
  FftwBuffer<fftw_complex> complex_;
  Plan forward_;
  Plan backward_;
};

// Scan sums with the known frame contribution c * (taps outside the ROI) removed.
Grid remove_boundary_contribution(const MeasurementGrid& scan, const SpotKernel& spot) {
  Grid out = scan.values;
  if (scan.bc.kind() != BoundaryCondition::Kind::Constant || scan.bc.value() == 0.0) return out;
  const long m = scan.margin_px;
  const long R = static_cast<long>(scan.roi_rows());
  const long C = static_cast<long>(scan.roi_cols());
  const long half = spot.half();
  for (std::size_t a = 0; a < out.rows(); ++a) {
    for (std::size_t b = 0; b < out.cols(); ++b) {
      const long i = static_cast<long>(a) - m;
      const long j = static_cast<long>(b) - m;
      double outside = 0.0;
      for (long u = -half; u <= half; ++u) {
        for (long v = -half; v <= half; ++v) {
          const bool in = i + u >= 0 && i + u < R && j + v >= 0 && j + v < C;
          if (!in) outside += spot.at(static_cast<int>(u), static_cast<int>(v));
        }
      }
      out(a, b) -= scan.bc.value() * outside;
    }
  }
  return out;
}

}  // namespace

ImageGrid dds_deconvolve(const MeasurementGrid& scan, const SpotKernel& spot,
                         const FilterConfig& config) {
  config.validate();
  if (scan.mode != ScanMode::DDS) {
    throw Error(ErrorCode::ModeMismatch, "DDS deconvolution needs a DDS scan");
  }
  if (scan.spot_size_px != spot.size()) {
    throw Error(ErrorCode::SpotMismatch, "scan used a " + std::to_string(scan.spot_size_px) +
                                             "-pixel spot, given " + std::to_string(spot.size()));
  }
  if (scan.margin_px < spot.half()) {
    throw Error(ErrorCode::MarginTooSmall, "margin " + std::to_string(scan.margin_px) +
                                               " is smaller than the spot radius " +
                                               std::to_string(spot.half()));
  }
  const std::size_t m = static_cast<std::size_t>(scan.margin_px);
  const std::size_t rows = scan.roi_rows();
  const std::size_t cols = scan.roi_cols();
  const std::size_t k = static_cast<std::size_t>(spot.size());
  const std::size_t pr = next_power_of_two(scan.values.rows() + k);
  const std::size_t pc = next_power_of_two(scan.values.cols() + k);

  const Grid s = remove_boundary_contribution(scan, spot);
  std::vector<double> padded_scan(pr * pc, 0.0);
  for (std::size_t a = 0; a < s.rows(); ++a) {
    for (std::size_t b = 0; b < s.cols(); ++b) padded_scan[a * pc + b] = s(a, b);
  }
  // S = K * X with X the ROI placed at offset m and K(d) = I(-d); K wraps
  // around the origin of the periodic grid.
  std::vector<double> padded_kernel(pr * pc, 0.0);
  const long half = spot.half();
  for (long u = -half; u <= half; ++u) {
    for (long v = -half; v <= half; ++v) {
      const std::size_t r = static_cast<std::size_t>((-u + static_cast<long>(pr)) % static_cast<long>(pr));
      const std::size_t c = static_cast<std::size_t>((-v + static_cast<long>(pc)) % static_cast<long>(pc));
      padded_kernel[r * pc + c] = spot.at(static_cast<int>(u), static_cast<int>(v));
    }
  }

  RealFft2d fft(pr, pc);
  std::vector<std::complex<double>> scan_spectrum = fft.forward(padded_scan);
  const std::vector<std::complex<double>> kernel_spectrum = fft.forward(padded_kernel);

  if (config.kind == FilterConfig::Kind::Inverse) {
    double peak = 0.0;
    for (const auto& h : kernel_spectrum) peak = std::max(peak, std::abs(h));
    const double floor = config.eps * peak;
    for (std::size_t i = 0; i < scan_spectrum.size(); ++i) {
      const auto& h = kernel_spectrum[i];
      scan_spectrum[i] = std::abs(h) < floor ? std::complex<double>(0.0) : scan_spectrum[i] / h;
    }
  } else {
    for (std::size_t i = 0; i < scan_spectrum.size(); ++i) {
      const auto& h = kernel_spectrum[i];
      scan_spectrum[i] *= std::conj(h) / (std::norm(h) + config.wiener_k);
    }
  }

  const std::vector<double> restored = fft.backward(scan_spectrum);
  const double scale = 1.0 / static_cast<double>(pr * pc);
  ImageGrid out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = restored[(i + m) * pc + (j + m)] * scale;
  }
  return out;
}

std::string ComparisonReport::to_text(bool include_timings) const {
  char buf[64];
  std::string out;
  out += "seds_footprints=" + std::to_string(seds_footprints) + "\n";
  out += "dds_footprints=" + std::to_string(dds_footprints) + "\n";
  std::snprintf(buf, sizeof buf, "%.17g", seds_mean_abs_diff);
  out += std::string("seds_mean_abs_diff=") + buf + "\n";
  std::snprintf(buf, sizeof buf, "%.17g", dds_mean_abs_diff);
  out += std::string("dds_mean_abs_diff=") + buf + "\n";
  if (include_timings) {
    std::snprintf(buf, sizeof buf, "%.6f", seds_seconds);
    out += std::string("seds_seconds=") + buf + "\n";
    std::snprintf(buf, sizeof buf, "%.6f", dds_seconds);
    out += std::string("dds_seconds=") + buf + "\n";
  }
  return out;
}

ComparisonReport compare_methods(const ImageGrid& sample, const SpotKernel& spot, int margin_px,
                                 const SolverConfig& solver, const FilterConfig& filter,
                                 const BoundaryCondition& bc) {
  using Clock = std::chrono::steady_clock;
  ComparisonReport report;
  const auto rows = static_cast<std::int64_t>(sample.rows());
  const auto cols = static_cast<std::int64_t>(sample.cols());
  report.seds_footprints = footprint_count(ScanMode::SEDS, rows, cols, spot.size());
  report.dds_footprints = footprint_count(ScanMode::DDS, rows, cols, spot.size(), margin_px);

  const auto t0 = Clock::now();
  const MeasurementGrid seds_scan = scan_seds(sample, spot, bc);
  const LinearSystem system =
      build_system(seds_scan, spot, bc, preferred_representation(sample.size(), solver.method));
  SolveResult solved = solve(system, solver);
  const auto t1 = Clock::now();
  const MeasurementGrid dds_scan = scan_dds(sample, spot, bc, margin_px);
  report.dds_image = dds_deconvolve(dds_scan, spot, filter);
  const auto t2 = Clock::now();

  report.seds_image = std::move(solved.image);
  report.seds_solve = solved.report;
  report.seds_mean_abs_diff = mean_abs_diff(sample, report.seds_image);
  report.dds_mean_abs_diff = mean_abs_diff(sample, report.dds_image);
  report.seds_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.dds_seconds = std::chrono::duration<double>(t2 - t1).count();
  return report;
}

}  // namespace seds
