#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seds/grid.hpp"
#include "seds/scan.hpp"

namespace seds {

/// Grid-CSV:
///   line 1       "rows,cols"
///   then         any number of "#"-prefixed comment lines
///   then         `rows` lines of `cols` comma-separated values, %.17g, "\n"
struct GridCsv {
  Grid grid;
  /// Comment lines with the leading "#" and one optional space removed.
  std::vector<std::string> comments;
};

void write_grid_csv(std::ostream& out, const Grid& grid,
                    const std::vector<std::string>& comments = {});
GridCsv read_grid_csv(std::istream& in);

void write_grid_csv(const std::filesystem::path& path, const Grid& grid,
                    const std::vector<std::string>& comments = {});
GridCsv read_grid_csv(const std::filesystem::path& path);

/// Grid-CSV with a "mode=... margin_px=... spot_size_px=... bc=..." comment.
std::string measurement_metadata(const MeasurementGrid& scan);
void write_measurement_csv(const std::filesystem::path& path, const MeasurementGrid& scan);
MeasurementGrid read_measurement_csv(const std::filesystem::path& path);

/// Binary 16-bit portable graymap (P5, maxval 65535, big-endian samples),
/// min-max normalized. The normalization range is kept in a header comment
/// "# normalization min=<v> max=<v>"; a flat image maps to 0.
void write_pgm16(std::ostream& out, const Grid& grid);
void write_pgm16(const std::filesystem::path& path, const Grid& grid);

/// Writes "text" verbatim, throwing Io on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace seds
