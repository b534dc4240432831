#pragma once

#include <string>

#include "polyrad/analysis.hpp"

namespace polyrad {

// Serializers for the artifacts the command-line tool writes. All output is
// deterministic: fixed key order, exact fraction strings wherever the value
// is exact, shortest round-trip decimals otherwise.

std::string analysis_json(const ProblemSpec& spec, const AnalysisResult& res);
std::string region_json(const AnalysisResult& res);
std::string slice_json(const AnalysisResult& res);

std::string sublevel_csv(const std::vector<GrowthPoint>& points);
// predicted: closed-form exponent when one exists, for the agreement check.
std::string growth_fit_json(const GrowthFit& fit,
                            const std::optional<Rat>& predicted);

std::string sharpness_csv(const SharpnessReport& report);
std::string sharpness_json(const SharpnessReport& report);

// Unit-square picture of the s = 0 slice: bounded-region polygon, excluded
// line when it applies, and the diagonal p = q cut.
std::string region_svg(const AnalysisResult& res);

// Agreement rule shared by the CLI and the serializer: the fitted exponent
// verifies a closed form when it lands within 0.05.
bool fit_agrees(const GrowthFit& fit, const Rat& predicted);

}  // namespace polyrad
