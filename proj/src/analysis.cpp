#include "polyrad/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace polyrad {

std::vector<double> geometric_schedule(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("schedule needs 0 < lo < hi");
  }
  if (count < 2) {
    throw std::invalid_argument("schedule needs at least two points");
  }
  std::vector<double> out(static_cast<size_t>(count));
  const double step = std::log(lo / hi) / (count - 1);
  for (int i = 0; i < count; ++i) {
    out[static_cast<size_t>(i)] = hi * std::exp(step * i);
  }
  out.front() = hi;
  out.back() = lo;
  return out;
}

std::vector<GrowthPoint> run_sublevel(const ProblemSpec& spec,
                                      const SublevelConfig& config) {
  NewtonPolyhedron poly = build_polyhedron(spec.phase);
  const auto schedule =
      geometric_schedule(config.epsMin, config.epsMax, config.epsCount);
  std::vector<GrowthPoint> out;
  out.reserve(schedule.size());
  // One seed for the whole sweep: the same sample streams at every eps keep
  // the errors correlated across the schedule, which steadies the slope fit.
  for (double eps : schedule) {
    MeasureEstimate est =
        measure_sublevel(poly.vertices(), spec.blocks, config.r, eps,
                         config.budget, config.seed);
    out.push_back({eps, est.value, est.stderror});
  }
  return out;
}

AnalysisResult analyze_problem(const ProblemSpec& spec) {
  AnalysisResult res;
  res.poly = build_polyhedron(spec.phase);
  res.d = newton_distance(res.poly);
  res.support = diagonal_support(res.poly);
  res.faces = enumerate_compact_faces(res.poly);

  if (spec.oOverride) {
    res.zeros.order = *spec.oOverride;
    res.zeros.method = ZeroMethod::UserOverride;
    res.zeros.lowConfidence = false;
    res.zeros.perFace.clear();
  } else {
    res.zeros = max_zero_order(spec.phase, res.faces);
  }
  res.o = res.zeros.order;

  bool lowConfidence = res.zeros.lowConfidence;

  if (spec.a0Override) {
    res.a0 = Scalar::of(*spec.a0Override);
    res.a0Source = A0Source::UserOverride;
  } else if (auto exact = predicted_a0(res.poly, spec.blocks, res.o)) {
    res.a0 = Scalar::of(*exact);
    res.a0Source = A0Source::Exact;
  } else {
    res.samples = run_sublevel(spec, spec.sublevel);
    GrowthFit fit = fit_growth(res.samples, spec.dimension, spec.sublevel.r);
    res.a0 = Scalar::fitted(fit.a0Hat);
    res.a0Source = A0Source::Fitted;
    res.d0 = fit.d0Hat;
    lowConfidence = lowConfidence || !fit.stable;
    res.fit = std::move(fit);
  }

  const bool kernelBoundedBelow = spec.kernel.floor > 0;
  res.profile = build_profile(spec.dimension, res.d, res.o, res.a0,
                              res.a0Source, spec.blocks, kernelBoundedBelow,
                              lowConfidence);
  res.profile.d0 = res.d0;
  res.regions = build_regions(res.profile);
  return res;
}

namespace {

// Kernel factor as a callable on t in R^n: the block-weight product, times
// nothing else (any bounded factor only raises the measured norms; the floor
// below is what enters the window bound).
KernelFn make_weight_kernel(const BlockStructure& blocks) {
  if (blocks.all_alpha_zero()) {
    return [](const std::vector<double>&) { return 1.0; };
  }
  const std::vector<int> sizes = blocks.sizes;
  std::vector<double> alphas(blocks.alphas.size());
  for (size_t k = 0; k < alphas.size(); ++k) {
    alphas[k] = rat_to_double(blocks.alphas[k]);
  }
  return [sizes, alphas](const std::vector<double>& t) {
    double value = 1.0;
    size_t base = 0;
    for (size_t k = 0; k < sizes.size(); ++k) {
      const size_t width = static_cast<size_t>(sizes[k]);
      if (alphas[k] != 0.0) {
        double norm2 = 0.0;
        for (size_t i = 0; i < width; ++i) {
          const double c = t[base + i];
          norm2 += c * c;
        }
        value *= std::pow(norm2, -0.5 * alphas[k]);
      }
      base += width;
    }
    return value;
  };
}

// Guaranteed lower bound of the full kernel over |t_block| <= radius*sqrt(m):
// the bounded factor's floor, shrunk when a block norm can exceed 1 (the
// weight |t|^{-alpha} is >= 1 only inside the unit ball).
double kernel_floor_bound(const KernelSpec& kernel,
                          const BlockStructure& blocks) {
  double floorValue = rat_to_double(kernel.floor);
  const double radius = rat_to_double(kernel.radius);
  for (size_t k = 0; k < blocks.alphas.size(); ++k) {
    const double alpha = rat_to_double(blocks.alphas[k]);
    if (alpha == 0.0) continue;
    const double maxNorm =
        radius * std::sqrt(static_cast<double>(blocks.sizes[k]));
    if (maxNorm > 1.0) floorValue *= std::pow(maxNorm, -alpha);
  }
  return floorValue;
}

}  // namespace

SharpnessReport run_sharpness_job(const ProblemSpec& spec,
                                  const AnalysisResult& analysis,
                                  const SharpnessJob& job) {
  BoxTestConfig config;
  config.rList = job.rList;
  config.gridCells = job.gridCells;
  config.initialN = job.cutoff;
  config.kernelSupportRadius = rat_to_double(spec.kernel.radius);
  config.kernelFloor = kernel_floor_bound(spec.kernel, spec.blocks);
  config.seed = job.seed;

  KernelFn kernel = make_weight_kernel(spec.blocks);
  return run_sharpness(spec.phase, analysis.poly, kernel, job.pInv, job.qInv,
                       job.s, config);
}

}  // namespace polyrad
