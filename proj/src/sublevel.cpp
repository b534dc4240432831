#include "polyrad/sublevel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "polyrad/rng.hpp"

namespace polyrad {

namespace {

// Surface measure of the unit sphere in R^l restricted to the open positive
// orthant: (2 pi^{l/2} / Gamma(l/2)) / 2^l.
double orthant_sphere_measure(int l) {
  double full = 2.0 * std::pow(M_PI, 0.5 * l) / std::tgamma(0.5 * l);
  return full / std::pow(2.0, l);
}

struct BlockPlan {
  int offset = 0;
  int len = 1;
  double alpha = 0.0;
  bool substitute = false;  // 1-d blocks with the u = t^{1-alpha} change
};

struct StratumResult {
  double mean = 0.0;
  double variance = 0.0;
  long long samples = 0;
};

// One stratum: the measure restricted to the max-norm shell
// (rhoInner, rhoOuter] inside (0, rhoOuter)^n, or the full core box when
// rhoInner <= 0. Samples are drawn blockwise from the weight-proportional
// density on the box of side rhoOuter; the shell and box conditions enter as
// indicators, which keeps the estimator unbiased without rejection loops.
StratumResult run_stratum(const std::vector<BlockPlan>& plan, int n,
                          const std::vector<std::vector<double>>& exps,
                          double rhoOuter, double rhoInner, double eps,
                          long long samples, Rng rng) {
  double baseMass = 1.0;
  for (const BlockPlan& b : plan) {
    if (b.len == 1) {
      if (b.substitute)
        baseMass *= std::pow(rhoOuter, 1.0 - b.alpha) / (1.0 - b.alpha);
      // Direct 1-d sampling carries its mass in the per-sample factor.
    } else {
      double radius = rhoOuter * std::sqrt(double(b.len));
      baseMass *= orthant_sphere_measure(b.len) *
                  std::pow(radius, b.len - b.alpha) / (b.len - b.alpha);
    }
  }

  std::vector<double> t(n, 0.0);
  double mean = 0.0, m2 = 0.0;
  for (long long it = 0; it < samples; ++it) {
    double factor = baseMass;
    bool inBox = true;
    for (const BlockPlan& b : plan) {
      if (b.len == 1) {
        if (b.substitute) {
          double u = rng.uniform() * std::pow(rhoOuter, 1.0 - b.alpha);
          t[b.offset] = std::pow(u, 1.0 / (1.0 - b.alpha));
        } else {
          double x = rng.uniform() * rhoOuter;
          t[b.offset] = x;
          factor *= rhoOuter * std::pow(x, -b.alpha);
        }
      } else {
        double radius = rhoOuter * std::sqrt(double(b.len));
        double sigma = rng.uniform() * std::pow(radius, b.len - b.alpha);
        double rad = std::pow(sigma, 1.0 / (b.len - b.alpha));
        double norm2 = 0.0;
        do {
          norm2 = 0.0;
          for (int i = 0; i < b.len; ++i) {
            double gi = rng.gaussian();
            t[b.offset + i] = std::fabs(gi);
            norm2 += gi * gi;
          }
        } while (norm2 == 0.0);
        double scale = rad / std::sqrt(norm2);
        for (int i = 0; i < b.len; ++i) {
          t[b.offset + i] *= scale;
          if (t[b.offset + i] >= rhoOuter) inBox = false;
        }
      }
    }

    double value = 0.0;
    if (inBox) {
      double maxCoord = 0.0;
      for (int i = 0; i < n; ++i) maxCoord = std::max(maxCoord, t[i]);
      if (rhoInner <= 0.0 || maxCoord > rhoInner) {
        double star = 0.0;
        for (const auto& v : exps) {
          double term = 1.0;
          for (int i = 0; i < n; ++i)
            if (v[i] != 0.0) term *= std::pow(t[i], v[i]);
          star += term;
          if (star >= eps) break;
        }
        if (star < eps) value = factor;
      }
    }

    double delta = value - mean;
    mean += delta / double(it + 1);
    m2 += delta * (value - mean);
  }

  StratumResult out;
  out.mean = mean;
  out.variance = samples > 1 ? m2 / double(samples - 1) : 0.0;
  out.samples = samples;
  return out;
}

}  // namespace

MeasureEstimate measure_sublevel(const std::vector<std::vector<Rat>>& vertices,
                                 const BlockStructure& blocks, double r,
                                 double eps, long long budget,
                                 std::uint64_t seed,
                                 const SublevelOptions& options) {
  blocks.validate();
  const int n = blocks.dim();
  if (vertices.empty()) throw std::invalid_argument("no vertices given");
  for (const auto& v : vertices) {
    if (int(v.size()) != n)
      throw std::invalid_argument("vertex dimension does not match blocks");
    for (const Rat& e : v)
      if (e < 0) throw std::invalid_argument("negative vertex exponent");
  }
  if (!(r > 0.0)) throw std::invalid_argument("box radius must be positive");
  if (!(eps > 0.0) || eps >= 0.5)
    throw std::invalid_argument("threshold must lie in (0, 1/2)");
  if (budget < 10000) throw std::invalid_argument("budget must be >= 10^4");
  if (options.shells < 0 || options.minPerStratum < 1)
    throw std::invalid_argument("bad sampler options");

  std::vector<std::vector<double>> exps(vertices.size(),
                                        std::vector<double>(n, 0.0));
  for (size_t v = 0; v < vertices.size(); ++v)
    for (int i = 0; i < n; ++i) exps[v][i] = rat_to_double(vertices[v][i]);

  std::vector<BlockPlan> plan;
  int offset = 0;
  for (int b = 0; b < blocks.count(); ++b) {
    BlockPlan p;
    p.offset = offset;
    p.len = blocks.sizes[b];
    p.alpha = rat_to_double(blocks.alphas[b]);
    p.substitute = p.len == 1 && options.uSubstitution;
    plan.push_back(p);
    offset += p.len;
  }

  const int strata = options.shells + 1;
  const long long each =
      std::max(budget / strata, options.minPerStratum);

  std::vector<StratumResult> results(strata);
  std::atomic<int> nextStratum{0};
  auto worker = [&]() {
    for (;;) {
      int j = nextStratum.fetch_add(1);
      if (j >= strata) break;
      double rhoOuter = r * std::ldexp(1.0, -j);
      double rhoInner = j < options.shells ? 0.5 * rhoOuter : 0.0;
      results[j] = run_stratum(plan, n, exps, rhoOuter, rhoInner, eps, each,
                               Rng::substream(seed, std::uint64_t(j)));
    }
  };
  unsigned hw = options.threads > 0 ? unsigned(options.threads)
                                    : std::thread::hardware_concurrency();
  unsigned nThreads = std::min<unsigned>(std::max(1u, hw), unsigned(strata));
  if (nThreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nThreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  MeasureEstimate est;
  double var = 0.0;
  for (const StratumResult& sr : results) {
    est.value += sr.mean;
    var += sr.variance / double(sr.samples);
    est.samples += sr.samples;
  }
  est.stderror = std::sqrt(var);
  return est;
}

GrowthFit fit_growth(const std::vector<GrowthPoint>& points, int dim,
                     double r) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  std::vector<GrowthPoint> pts;
  for (const GrowthPoint& p : points)
    if (p.measure > 0.0 && p.eps > 0.0 && p.eps < 1.0) pts.push_back(p);
  if (pts.size() < 6)
    throw std::invalid_argument("need at least 6 positive measurements");
  std::sort(pts.begin(), pts.end(),
            [](const GrowthPoint& a, const GrowthPoint& b) {
              return a.eps < b.eps;
            });

  const size_t m = pts.size();
  std::vector<double> x(m), loglog(m), logm(m);
  for (size_t i = 0; i < m; ++i) {
    x[i] = std::log(pts[i].eps);
    loglog[i] = std::log(std::log(1.0 / pts[i].eps));
    logm[i] = std::log(pts[i].measure);
  }

  GrowthFit fit;
  fit.rBox = r;
  double bestRms = 0.0;
  bool haveBest = false;
  double bestSlope = 0.0, bestIcept = 0.0;
  for (int d0 = 0; d0 < dim; ++d0) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < m; ++i) {
      double y = logm[i] - d0 * loglog[i];
      sx += x[i];
      sy += y;
      sxx += x[i] * x[i];
      sxy += x[i] * y;
    }
    double denom = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / denom;
    double icept = (sy - slope * sx) / m;
    double ss = 0.0;
    for (size_t i = 0; i < m; ++i) {
      double res = (logm[i] - d0 * loglog[i]) - slope * x[i] - icept;
      ss += res * res;
    }
    double rms = std::sqrt(ss / m);
    if (!haveBest || rms < bestRms) {
      haveBest = true;
      bestRms = rms;
      fit.d0Hat = d0;
      bestSlope = slope;
      bestIcept = icept;
    }
  }
  fit.a0Hat = bestSlope;
  fit.residual = bestRms;

  fit.envLo = fit.envHi = std::exp(bestIcept);
  for (size_t i = 0; i < m; ++i) {
    double q = std::exp(logm[i] - fit.a0Hat * x[i] - fit.d0Hat * loglog[i]);
    fit.envLo = std::min(fit.envLo, q);
    fit.envHi = std::max(fit.envHi, q);
    fit.epsSchedule.push_back(pts[i].eps);
  }

  fit.stable = true;
  for (size_t i = 0; i + 1 < m; ++i) {
    double slack = 3.0 * (pts[i].stderror + pts[i + 1].stderror);
    if (pts[i + 1].measure < pts[i].measure - slack) fit.stable = false;
  }
  return fit;
}

std::optional<Rat> predicted_a0(const NewtonPolyhedron& poly,
                                const BlockStructure& blocks, int zeroOrder) {
  if (zeroOrder > 2) return std::nullopt;
  if (blocks.all_alpha_zero()) {
    Rat d = newton_distance(poly);
    if (d > 0) return Rat(1) / d;
    return std::nullopt;
  }
  if (blocks.all_singleton()) {
    NewtonPolyhedron rescaled = rescale_polyhedron(poly, blocks);
    Rat d = newton_distance(rescaled);
    if (d > 0) return Rat(1) / d;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace polyrad
