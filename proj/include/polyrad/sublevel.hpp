#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyrad/blocks.hpp"
#include "polyrad/newton.hpp"
#include "polyrad/rational.hpp"

namespace polyrad {

struct MeasureEstimate {
  double value = 0.0;
  double stderror = 0.0;
  long long samples = 0;
};

struct SublevelOptions {
  // One-dimensional blocks: sample u = t^{1-alpha} so the density is flat.
  // Disabling this falls back to uniform sampling with an explicit t^{-alpha}
  // importance factor (kept for cross-checking; higher variance).
  bool uSubstitution = true;
  int shells = 40;  // dyadic max-norm strata below r, plus one core stratum
  long long minPerStratum = 64;
  int threads = 0;  // 0 picks hardware_concurrency
};

// Weighted measure of {t in (0,r)^n : S*(t) < eps}, where S* is the star
// function of `vertices` and the weight is the product over blocks of
// |t_block|^{-alpha_block} (Euclidean block norm). Stratified Monte Carlo
// over dyadic max-norm shells; multi-dimensional blocks are drawn in polar
// form so the weight is absorbed exactly. Deterministic given (seed, budget,
// options), and monotone in eps for a fixed seed since the same sample
// streams are replayed.
MeasureEstimate measure_sublevel(const std::vector<std::vector<Rat>>& vertices,
                                 const BlockStructure& blocks, double r,
                                 double eps, long long budget,
                                 std::uint64_t seed,
                                 const SublevelOptions& options = {});

struct GrowthPoint {
  double eps = 0.0;
  double measure = 0.0;
  double stderror = 0.0;
};

struct GrowthFit {
  double a0Hat = 0.0;
  int d0Hat = 0;
  double envLo = 0.0;  // min of measure / (eps^a0 * |ln eps|^d0)
  double envHi = 0.0;  // max of the same ratio
  std::vector<double> epsSchedule;
  double rBox = 0.0;
  double residual = 0.0;  // RMS of the winning regression, log space
  bool stable = true;     // false if measurements decrease in eps beyond noise
};

// Fits log(measure) = a0*log(eps) + d0*log|log eps| + const, with the integer
// d0 ranging over 0..dim-1 and chosen by smallest residual. Points with
// nonpositive measure are dropped; at least 6 usable points are required.
GrowthFit fit_growth(const std::vector<GrowthPoint>& points, int dim, double r);

// Closed-form growth exponent where one is available: 1/distance(N) when all
// weights vanish, else 1/distance of the rescaled polyhedron when all blocks
// are one-dimensional. Requires the off-axis vanishing order to be at most 2;
// empty otherwise, and callers fall back to the fitted value.
std::optional<Rat> predicted_a0(const NewtonPolyhedron& poly,
                                const BlockStructure& blocks, int zeroOrder);

}  // namespace polyrad
