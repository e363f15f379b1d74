#pragma once

#include <string>

#include "cev/chart.hpp"

namespace cev {

enum class ChartFormat { Svg, Csv, Json };

struct RenderOptions {
  std::string units;  // appended to the value-axis label when non-empty
};

/// Deterministic chart document: SVG 1.1 with one marker per subgroup, a
/// horizontal UCL line and highlighted signals; or row-oriented CSV / JSON
/// with (subgroup, statistic, ucl, signal).
std::string render_chart(const ChartReport& report, ChartFormat format,
                         const RenderOptions& options = {});

ChartFormat chart_format_from_name(const std::string& name);

}  // namespace cev
