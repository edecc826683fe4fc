#include "seds/grid_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "seds/error.hpp"

namespace seds {

namespace {

std::size_t parse_size(std::string_view text, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": bad dimension '" +
                                      std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": bad value '" +
                                      std::string(text) + "'");
  }
  return value;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace

void write_grid_csv(std::ostream& out, const Grid& grid, const std::vector<std::string>& comments) {
  out << grid.rows() << ',' << grid.cols() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  char buf[32];
  std::string line;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      if (j > 0) line += ',';
      std::snprintf(buf, sizeof buf, "%.17g", grid(i, j));
      line += buf;
    }
    line += '\n';
    out << line;
  }
}

GridCsv read_grid_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty Grid-CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::Parse, "line 1 must be 'rows,cols'");
  const std::string_view header(line);
  const std::size_t rows = parse_size(header.substr(0, comma), line_no);
  const std::size_t cols = parse_size(header.substr(comma + 1), line_no);
  if (rows == 0 || cols == 0) throw Error(ErrorCode::Parse, "Grid-CSV dimensions must be >= 1");

  GridCsv result;
  std::vector<double> values;
  values.reserve(rows * cols);
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') {
      if (data_rows > 0) throw Error(ErrorCode::Parse, "comment after data at line " + std::to_string(line_no));
      std::string text = line.substr(1);
      if (!text.empty() && text.front() == ' ') text.erase(0, 1);
      result.comments.push_back(std::move(text));
      continue;
    }
    if (line.empty() && data_rows == rows) continue;
    if (data_rows == rows) throw Error(ErrorCode::Parse, "more than " + std::to_string(rows) + " data rows");
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto next = rest.find(',');
      values.push_back(parse_double(rest.substr(0, next), line_no));
      ++count;
      if (next == std::string_view::npos) break;
      rest.remove_prefix(next + 1);
    }
    if (count != cols) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + " has " +
                                        std::to_string(count) + " values, expected " +
                                        std::to_string(cols));
    }
    ++data_rows;
  }
  if (data_rows != rows) {
    throw Error(ErrorCode::Parse, "expected " + std::to_string(rows) + " data rows, found " +
                                      std::to_string(data_rows));
  }
  result.grid = Grid(rows, cols, std::move(values));
  return result;
}

void write_grid_csv(const std::filesystem::path& path, const Grid& grid,
                    const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_grid_csv(out, grid, comments);
  finish(out, path);
}

GridCsv read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return read_grid_csv(in);
}

std::string measurement_metadata(const MeasurementGrid& scan) {
  return "mode=" + to_string(scan.mode) + " margin_px=" + std::to_string(scan.margin_px) +
         " spot_size_px=" + std::to_string(scan.spot_size_px) + " bc=" + scan.bc.to_string();
}

void write_measurement_csv(const std::filesystem::path& path, const MeasurementGrid& scan) {
  write_grid_csv(path, scan.values, {measurement_metadata(scan)});
}

MeasurementGrid read_measurement_csv(const std::filesystem::path& path) {
  GridCsv csv = read_grid_csv(path);
  MeasurementGrid scan;
  bool have_mode = false, have_margin = false, have_spot = false, have_bc = false;
  for (const auto& comment : csv.comments) {
    std::istringstream fields(comment);
    std::string field;
    while (fields >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "mode") {
        scan.mode = parse_scan_mode(value);
        have_mode = true;
      } else if (key == "margin_px") {
        scan.margin_px = static_cast<int>(parse_size(value, 0));
        have_margin = true;
      } else if (key == "spot_size_px") {
        scan.spot_size_px = static_cast<int>(parse_size(value, 0));
        have_spot = true;
      } else if (key == "bc") {
        scan.bc = BoundaryCondition::parse(value);
        have_bc = true;
      }
    }
  }
  if (!(have_mode && have_margin && have_spot && have_bc)) {
    throw Error(ErrorCode::Parse, "'" + path.string() +
                                      "' lacks the mode/margin_px/spot_size_px/bc metadata comment");
  }
  const std::size_t frame = 2 * static_cast<std::size_t>(scan.margin_px);
  if (csv.grid.rows() <= frame || csv.grid.cols() <= frame) {
    throw Error(ErrorCode::Parse, "margin leaves no ROI in '" + path.string() + "'");
  }
  if (scan.mode == ScanMode::SEDS && scan.margin_px != 0) {
    throw Error(ErrorCode::Parse, "SEDS scans have margin_px = 0");
  }
  scan.values = std::move(csv.grid);
  return scan;
}

void write_pgm16(std::ostream& out, const Grid& grid) {
  double lo = 0.0, hi = 0.0;
  if (!grid.empty()) {
    const auto [a, b] = std::minmax_element(grid.values().begin(), grid.values().end());
    lo = *a;
    hi = *b;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "P5\n# normalization min=%.17g max=%.17g\n%zu %zu\n65535\n", lo, hi,
                grid.cols(), grid.rows());
  out << buf;
  const double span = hi - lo;
  std::string data;
  data.reserve(grid.size() * 2);
  for (double v : grid.values()) {
    const double t = span > 0.0 ? (v - lo) / span : 0.0;
    const auto level = static_cast<unsigned>(std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
    data.push_back(static_cast<char>((level >> 8) & 0xFF));
    data.push_back(static_cast<char>(level & 0xFF));
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void write_pgm16(const std::filesystem::path& path, const Grid& grid) {
  auto out = open_out(path, std::ios::binary);
  write_pgm16(out, grid);
  finish(out, path);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

}  // namespace seds
