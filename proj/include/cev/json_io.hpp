#pragma once

#include <string>

#include "cev/chart.hpp"

namespace cev {

std::string estimation_to_json(const EstimationResult& result, bool include_trace);
std::string coefficients_to_json(const LimitCoefficients& coeffs);
std::string comparison_to_json(const TableComparisonReport& report);
std::string phase1_to_json(const Phase1Result& result);
Phase1Result phase1_from_json(const std::string& text);
std::string monitor_to_json(const MonitorResult& result);

/// The four naive baselines and the CEV estimate side by side.
std::string naive_comparison_json(const CensoredSample& sample, const EstimationConfig& config);

}  // namespace cev
