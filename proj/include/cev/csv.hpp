#pragma once

#include <string>

#include "cev/chart.hpp"

namespace cev {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

/// Wide-format ingestion: one subgroup per row, exactly `subgroup_size` fields,
/// decimal point '.', optional header (detected by a non-numeric first row).
/// A field that is numeric and <= threshold, or the literal token '<', is
/// normalized to (threshold, censored). Parse errors carry row and column.
SubgroupMatrix parse_csv(const std::string& text, double threshold, int subgroup_size);

/// parse_csv over the contents of `path`.
SubgroupMatrix ingest_csv(const std::string& path, double threshold, int subgroup_size);

/// Lossless wide-format emission; ingesting the output reproduces the matrix.
std::string matrix_to_csv(const SubgroupMatrix& matrix);

}  // namespace cev
