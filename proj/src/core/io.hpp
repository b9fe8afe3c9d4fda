#pragma once

#include <optional>
#include <string>

#include "core/types.hpp"

namespace mppc {

// CSV ingestion. has_header unset means sniff: a first row with any
// non-numeric cell is treated as a header. weight_column selects a column
// by name (requires a header); absent weights default to 1/n. The cloud is
// normalized to total mass 1 unless normalize is false.
PointCloud load_csv(const std::string& path,
                    std::optional<bool> has_header = std::nullopt,
                    const std::optional<std::string>& weight_column =
                        std::nullopt,
                    bool do_normalize = true);

// Writes "x1,...,xd,weight" with 17-significant-digit values.
void save_csv(const PointCloud& cloud, const std::string& path);

struct LoadedResult {
  MultiCurve curves;
  FitReport report;
  Params params;
};

// Versioned JSON result document ("mppc-result/1"): params echo, energy
// breakdown, components as vertex arrays with singleton flags, iteration
// history, topology events. Coordinates round-trip bit-exactly.
void save_result(const std::string& path, const MultiCurve& curves,
                 const FitReport& report, const Params& params);
LoadedResult load_result(const std::string& path);

struct SvgOptions {
  enum class Projection { First2, Pca2 };
  Projection projection = Projection::First2;
  int width = 900;
};

// Standalone SVG: gray data points, green curves, one polyline per
// multi-vertex component and one marker per singleton. Deterministic byte
// output for fixed inputs and options. d = 1 clouds are lifted to the
// plane; d > 2 requires a projection choice.
void render_svg(const std::string& path, const PointCloud& cloud,
                const MultiCurve& curves, const SvgOptions& options = {});

}  // namespace mppc
