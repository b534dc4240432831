#pragma once

#include <optional>
#include <vector>

#include "polyrad/face_zeros.hpp"
#include "polyrad/newton.hpp"
#include "polyrad/problem_spec.hpp"
#include "polyrad/regions.hpp"
#include "polyrad/sharpness.hpp"
#include "polyrad/sublevel.hpp"

namespace polyrad {

struct AnalysisResult {
  NewtonPolyhedron poly;
  Rat d = Rat(0);
  DiagonalSupport support;
  std::vector<Face> faces;
  ZeroOrderSummary zeros;
  int o = 0;
  Scalar a0;
  A0Source a0Source = A0Source::Exact;
  int d0 = 0;
  std::vector<GrowthPoint> samples;    // only when sampling ran
  std::optional<GrowthFit> fit;        // only when a0 had to be fitted
  SmoothingProfile profile;
  RegionSet regions;
};

// Full derivation chain for one problem document: polyhedron, distance and
// diagonal support, off-axis zero order (or override), growth exponent
// (closed form, override, or Monte Carlo fit per the sublevel config), then
// the profile and region geometry.
AnalysisResult analyze_problem(const ProblemSpec& spec);

// eps values spaced geometrically from hi down to lo, inclusive.
std::vector<double> geometric_schedule(double lo, double hi, int count);

// The weighted sublevel measurements for the problem's star function, one
// per schedule entry. Deterministic in (problem, schedule).
std::vector<GrowthPoint> run_sublevel(const ProblemSpec& spec,
                                      const SublevelConfig& config);

// The box-family growth test configured by the problem (kernel floor,
// radius, weights) at the given job parameters.
SharpnessReport run_sharpness_job(const ProblemSpec& spec,
                                  const AnalysisResult& analysis,
                                  const SharpnessJob& job);

}  // namespace polyrad
