#include "polyrad/sharpness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace polyrad {

namespace {

double smoothstep5(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

// Spectrum used for the band-limited profile; supported on (1,2).
double spectrum_bump(double xi) {
  if (xi <= 1.0 || xi >= 2.0) return 0.0;
  return std::exp(-1.0 / ((xi - 1.0) * (2.0 - xi)));
}

double profile_peak(double s) {
  double best = 0.0;
  for (int i = 0; i <= 800; ++i) {
    const double x = -2.0 + i * 0.005;
    best = std::max(best, std::abs(band_profile(x, s)));
  }
  return best;
}

double edge_magnitude(double s, double u) {
  double worst = 0.0;
  for (int j = 0; j <= 32; ++j) {
    const double x = u - 1.0 + j / 32.0;
    worst = std::max(worst,
                     std::max(std::abs(band_profile(x, s)),
                              std::abs(band_profile(-x, s))));
  }
  return worst;
}

struct WindowProbe {
  bool empty = true;
  double sAtCenter = 0.0;
  double sMin = 0.0;
  double sMax = 0.0;
  std::vector<double> tLo, tHi;
};

WindowProbe probe_window(const SparsePolynomial& phase,
                         const std::vector<double>& xp,
                         const std::vector<double>& halfWidths, double R) {
  const int n = static_cast<int>(xp.size());
  WindowProbe probe;
  probe.sAtCenter = phase.evaluate(xp);
  probe.tLo.resize(static_cast<std::size_t>(n));
  probe.tHi.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    probe.tLo[static_cast<std::size_t>(i)] =
        std::max(-R, xp[static_cast<std::size_t>(i)] -
                         halfWidths[static_cast<std::size_t>(i)]);
    probe.tHi[static_cast<std::size_t>(i)] =
        std::min(R, xp[static_cast<std::size_t>(i)] +
                        halfWidths[static_cast<std::size_t>(i)]);
    if (!(probe.tLo[static_cast<std::size_t>(i)] <
          probe.tHi[static_cast<std::size_t>(i)]))
      return probe;
  }
  probe.empty = false;
  const int perAxis = n == 1 ? 33 : (n == 2 ? 9 : 5);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> t(static_cast<std::size_t>(n));
  bool first = true;
  while (true) {
    for (int i = 0; i < n; ++i) {
      const double a = probe.tLo[static_cast<std::size_t>(i)];
      const double b = probe.tHi[static_cast<std::size_t>(i)];
      t[static_cast<std::size_t>(i)] =
          a + (b - a) * idx[static_cast<std::size_t>(i)] / (perAxis - 1);
    }
    const double v = phase.evaluate(t);
    if (first || v < probe.sMin) probe.sMin = v;
    if (first || v > probe.sMax) probe.sMax = v;
    first = false;
    int k = n - 1;
    for (; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < perAxis) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
  return probe;
}

// One output column: integrates the translated profile over the active
// kernel window and accumulates into out[0..yn). Node counts scale with the
// phase oscillation across the window so the quadrature resolves it.
void transport_column(const GridField& input, const SparsePolynomial& phase,
                      const KernelFn& kernel, const TransportSpec& spec,
                      const std::vector<double>& xp, const WindowProbe& probe,
                      const Axis& yAxis, std::complex<double>* out,
                      bool* quadSaturated) {
  const int n = input.dim() - 1;
  if (probe.empty) return;
  const Axis& lastAxis = input.axis(n);
  const int nLast = lastAxis.n;
  const double inStep = lastAxis.step();
  const double ystep = yAxis.step();
  const int yn = yAxis.n;

  const double osc =
      (probe.sMax - probe.sMin) / std::max(spec.heightScale, 1e-300);
  std::vector<int> qn(static_cast<std::size_t>(n));
  double capacity = 1.0;
  for (int i = 0; i < n; ++i) {
    int want = spec.baseQuadNodes;
    if (n == 1)
      want = std::max(want, static_cast<int>(std::ceil(8.0 * osc)));
    else
      want = std::max(want, static_cast<int>(std::ceil(8.0 * osc / n)));
    qn[static_cast<std::size_t>(i)] =
        std::min(n == 1 ? spec.maxQuadNodes : std::min(spec.maxQuadNodes, 256),
                 want);
    capacity *= qn[static_cast<std::size_t>(i)];
  }
  if (quadSaturated && 8.0 * osc > capacity) *quadSaturated = true;

  std::vector<int> strides(static_cast<std::size_t>(n));
  if (n > 0) {
    strides[static_cast<std::size_t>(n - 1)] = nLast;
    for (int k = n - 2; k >= 0; --k)
      strides[static_cast<std::size_t>(k)] =
          strides[static_cast<std::size_t>(k + 1)] * input.axis(k + 1).n;
  }

  std::vector<int> node(static_cast<std::size_t>(n), 0);
  std::vector<double> t(static_cast<std::size_t>(n));
  std::vector<int> cellBase(static_cast<std::size_t>(n));
  std::vector<double> frac(static_cast<std::size_t>(n));
  const std::complex<double>* data = input.data();

  while (true) {
    double nodeWeight = spec.amplitude;
    for (int i = 0; i < n; ++i) {
      const double a = probe.tLo[static_cast<std::size_t>(i)];
      const double b = probe.tHi[static_cast<std::size_t>(i)];
      const double w = (b - a) / qn[static_cast<std::size_t>(i)];
      t[static_cast<std::size_t>(i)] =
          a + (node[static_cast<std::size_t>(i)] + 0.5) * w;
      nodeWeight *= w;
    }
    const double kv = kernel(t);
    bool usable = kv != 0.0;
    if (usable) {
      nodeWeight *= kv;
      for (int i = 0; i < n; ++i) {
        const Axis& ax = input.axis(i);
        const double pos = (xp[static_cast<std::size_t>(i)] -
                            t[static_cast<std::size_t>(i)]) /
                           spec.dims[static_cast<std::size_t>(i)];
        const double u = (pos - ax.lo) / ax.step() - 0.5;
        const double fl = std::floor(u);
        cellBase[static_cast<std::size_t>(i)] = static_cast<int>(fl);
        frac[static_cast<std::size_t>(i)] = u - fl;
        if (cellBase[static_cast<std::size_t>(i)] < -1 ||
            cellBase[static_cast<std::size_t>(i)] >= ax.n) {
          usable = false;
          break;
        }
      }
    }
    if (usable) {
      const double St = phase.evaluate(t);
      const double offset = (spec.shear ? probe.sAtCenter : 0.0) - St;
      const double v0 =
          ((yAxis.lo + 0.5 * ystep + offset) / spec.heightScale - lastAxis.lo) /
              inStep -
          0.5;
      const double dv = ystep / (spec.heightScale * inStep);
      int jLo = 0, jHi = yn - 1;
      {
        const double lo = (-1.0 + 1e-9 - v0) / dv;
        const double hi = (nLast - 1e-9 - v0) / dv;
        jLo = std::max(0, static_cast<int>(std::ceil(lo)));
        jHi = std::min(yn - 1, static_cast<int>(std::floor(hi)));
      }
      for (int corner = 0; corner < (1 << n) && jLo <= jHi; ++corner) {
        double cw = 1.0;
        long rowBase = 0;
        bool inside = true;
        for (int i = 0; i < n; ++i) {
          const int bit = (corner >> i) & 1;
          const int cell = cellBase[static_cast<std::size_t>(i)] + bit;
          cw *= bit ? frac[static_cast<std::size_t>(i)]
                    : 1.0 - frac[static_cast<std::size_t>(i)];
          if (cell < 0 || cell >= input.axis(i).n) {
            inside = false;
            break;
          }
          rowBase += static_cast<long>(cell) *
                     strides[static_cast<std::size_t>(i)];
        }
        if (!inside || cw == 0.0) continue;
        const std::complex<double>* row = data + rowBase;
        const double wc = nodeWeight * cw;
        for (int j = jLo; j <= jHi; ++j) {
          const double v = v0 + j * dv;
          const double fl = std::floor(v);
          const int jf = static_cast<int>(fl);
          const double f = v - fl;
          std::complex<double> val(0.0, 0.0);
          if (jf >= 0) val += row[jf] * (1.0 - f);
          if (jf + 1 < nLast) val += row[jf + 1] * f;
          out[j] += wc * val;
        }
      }
    }
    int k = n - 1;
    for (; k >= 0; --k) {
      if (++node[static_cast<std::size_t>(k)] < qn[static_cast<std::size_t>(k)])
        break;
      node[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
}

void decode_column(std::size_t flat, const std::vector<Axis>& axes, int n,
                   std::vector<int>& idx) {
  for (int k = n - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] =
        static_cast<int>(flat % static_cast<std::size_t>(
                                    axes[static_cast<std::size_t>(k)].n));
    flat /= static_cast<std::size_t>(axes[static_cast<std::size_t>(k)].n);
  }
}

struct FitLine {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

FitLine fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = m * sxx - sx * sx;
  FitLine fit;
  fit.slope = (m * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / m;
  double acc = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = y[i] - fit.slope * x[i] - fit.intercept;
    acc += e * e;
  }
  fit.rms = std::sqrt(acc / m);
  return fit;
}

void append_note(std::string& notes, const std::string& msg) {
  if (!notes.empty()) notes += "; ";
  notes += msg;
}

}  // namespace

double bump(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return smoothstep5(2.0 - a);
}

std::complex<double> band_profile(double x, double s) {
  const int m = 4096;
  const double h = 1.0 / m;
  const std::complex<double> rot =
      std::exp(std::complex<double>(0.0, 2.0 * M_PI * x * h));
  std::complex<double> phase =
      std::exp(std::complex<double>(0.0, 2.0 * M_PI * x));
  std::complex<double> acc(0.0, 0.0);
  for (int j = 0; j <= m; ++j) {
    const double xi = 1.0 + j * h;
    const double simpson = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    const double g = spectrum_bump(xi);
    if (g != 0.0) acc += simpson * g * std::pow(xi, s) * phase;
    phase *= rot;
  }
  return acc * (h / 3.0);
}

Calibration calibrate_profile(double s) {
  double best = 0.0, bx = 0.0;
  for (int i = 0; i <= 3200; ++i) {
    const double x = -8.0 + i * 0.005;
    const double v = std::abs(band_profile(x, s));
    if (v > best) {
      best = v;
      bx = x;
    }
  }
  double lo = bx - 0.005, hi = bx + 0.005;
  for (int it = 0; it < 50; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (std::abs(band_profile(m1, s)) < std::abs(band_profile(m2, s)))
      lo = m1;
    else
      hi = m2;
  }
  Calibration cal;
  cal.anchor = 0.5 * (lo + hi);
  const std::complex<double> peak = band_profile(cal.anchor, s);
  cal.floor = 0.5 * std::abs(peak);
  const double argAnchor = std::arg(peak);
  const auto admissible = [&](double delta) {
    for (int j = 0; j <= 256; ++j) {
      const double x = cal.anchor - 2.0 * delta + j * (4.0 * delta / 256.0);
      const std::complex<double> v = band_profile(x, s);
      if (std::abs(v) <= cal.floor) return false;
      const double drift =
          std::abs(std::remainder(std::arg(v) - argAnchor, 2.0 * M_PI));
      if (drift >= M_PI / 4.0) return false;
    }
    return true;
  };
  double delta = 1.0;
  int guard = 0;
  while (!admissible(delta)) {
    delta *= 0.5;
    if (++guard > 40)
      throw std::runtime_error("profile calibration found no stable window");
  }
  cal.halfWidth = delta;
  return cal;
}

double profile_window(double s) {
  const double peak0 = profile_peak(0.0);
  const double peaks = profile_peak(s);
  for (double u : {16.0, 24.0, 32.0, 48.0, 64.0}) {
    if (edge_magnitude(0.0, u) < 1e-6 * peak0 &&
        edge_magnitude(s, u) < 1e-6 * peaks)
      return u;
  }
  return 64.0;
}

GridField transport(const GridField& input, const SparsePolynomial& phase,
                    const KernelFn& kernel, const std::vector<Axis>& outAxes,
                    const TransportSpec& spec) {
  const int n = input.dim() - 1;
  if (n < 1) throw std::invalid_argument("transport needs a box dimension");
  if (phase.dim() != n)
    throw std::invalid_argument("phase dimension mismatch");
  if (static_cast<int>(outAxes.size()) != n + 1)
    throw std::invalid_argument("output needs one more axis than the phase");
  if (static_cast<int>(spec.dims.size()) != n)
    throw std::invalid_argument("one scale per box axis required");
  for (double dscale : spec.dims)
    if (!(dscale > 0.0)) throw std::invalid_argument("box scales must be positive");
  if (!(spec.heightScale > 0.0) || !(spec.kernelRadius > 0.0))
    throw std::invalid_argument("scales must be positive");

  GridField out(outAxes);
  std::size_t cols = 1;
  for (int i = 0; i < n; ++i)
    cols *= static_cast<std::size_t>(outAxes[static_cast<std::size_t>(i)].n);
  const int yn = outAxes[static_cast<std::size_t>(n)].n;

  std::vector<double> halfWidths(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Axis& ax = input.axis(i);
    halfWidths[static_cast<std::size_t>(i)] =
        spec.dims[static_cast<std::size_t>(i)] *
        std::max(std::abs(ax.lo), std::abs(ax.hi));
  }

  std::atomic<std::size_t> next{0};
  const unsigned hw = std::thread::hardware_concurrency();
  int threads = spec.threads > 0 ? spec.threads : (hw ? static_cast<int>(hw) : 1);
  threads = std::min<std::size_t>(threads, cols);

  auto worker = [&]() {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::vector<double> xp(static_cast<std::size_t>(n));
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= cols) break;
      decode_column(c, outAxes, n, idx);
      for (int i = 0; i < n; ++i)
        xp[static_cast<std::size_t>(i)] =
            outAxes[static_cast<std::size_t>(i)].center(
                idx[static_cast<std::size_t>(i)]);
      const WindowProbe probe =
          probe_window(phase, xp, halfWidths, spec.kernelRadius);
      transport_column(input, phase, kernel, spec, xp, probe,
                       outAxes[static_cast<std::size_t>(n)],
                       out.data() + c * static_cast<std::size_t>(yn), nullptr);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string verdict_name(SharpnessVerdict v) {
  switch (v) {
    case SharpnessVerdict::GrowthObserved: return "GrowthObserved";
    case SharpnessVerdict::NoGrowth: return "NoGrowth";
    case SharpnessVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

SharpnessReport run_sharpness(const SparsePolynomial& phase,
                              const NewtonPolyhedron& poly,
                              const KernelFn& kernel, const Rat& pInv,
                              const Rat& qInv, const Rat& s,
                              const BoxTestConfig& config) {
  const int n = poly.dim;
  if (phase.dim() != n)
    throw std::invalid_argument("phase and polyhedron dimension mismatch");
  if (!(pInv > 0) || !(pInv < 1) || !(qInv > 0) || !(qInv < 1))
    throw std::invalid_argument("1/p and 1/q must lie strictly between 0 and 1");
  if (config.rList.size() < 4)
    throw std::invalid_argument("need at least four box scales");
  for (std::size_t i = 0; i < config.rList.size(); ++i) {
    if (!(config.rList[i] > 0.0) || !(config.rList[i] < 1.0))
      throw std::invalid_argument("box scales must lie in (0,1)");
    if (i > 0 && !(config.rList[i] < config.rList[i - 1]))
      throw std::invalid_argument("box scales must decrease strictly");
  }
  if (config.rList.front() / config.rList.back() < 8.0 * (1.0 - 1e-12))
    throw std::invalid_argument("box scales must span at least a factor of 8");
  if (static_cast<int>(config.gridCells.size()) != n + 1)
    throw std::invalid_argument("need one cell count per coordinate");
  for (int i = 0; i < n; ++i)
    if (config.gridCells[static_cast<std::size_t>(i)] < 64)
      throw std::invalid_argument("box axes need at least 64 cells");
  {
    const int last = config.gridCells[static_cast<std::size_t>(n)];
    if (last < 256 || (last & (last - 1)) != 0)
      throw std::invalid_argument(
          "height axis needs a power-of-two cell count, at least 256");
  }
  if (config.initialN < 4)
    throw std::invalid_argument("cutoff factor must be at least 4");
  if (config.maxDoublings < 0 || !(config.kernelSupportRadius > 0.0) ||
      !(config.kernelFloor > 0.0) || config.baseQuadNodes < 16 ||
      config.maxQuadNodes < config.baseQuadNodes)
    throw std::invalid_argument("invalid harness configuration");
  if (!config.constantDims.empty() &&
      static_cast<int>(config.constantDims.size()) != n)
    throw std::invalid_argument("constant dimensions must match the box rank");

  const DiagonalSupport support = diagonal_support(poly);
  const Rat d = newton_distance(poly);
  Rat sumB(0);
  for (const Rat& bi : support.b) sumB += bi;

  SharpnessReport report;
  for (const Rat& bi : support.b) report.b.push_back(bi.get_d());
  report.b.push_back(support.value.get_d());
  report.predictedExponent =
      sumB * (Rat(1) - s * d + (d + 1) * (qInv - pInv));
  report.predictedValue = report.predictedExponent.get_d();

  const double sD = s.get_d();
  const double pD = 1.0 / pInv.get_d();
  const double qD = 1.0 / qInv.get_d();
  const double R = config.kernelSupportRadius;
  const double bHeight = support.value.get_d();

  const Calibration cal = calibrate_profile(sD);
  const double U = profile_window(sD);

  // Axis scales for a given box size; axes with exponent zero keep a fixed
  // width so the family stays inside the kernel support.
  const auto axisDims = [&](double r) {
    std::vector<double> dims(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (support.b[static_cast<std::size_t>(i)] > 0)
        dims[static_cast<std::size_t>(i)] =
            std::pow(r, support.b[static_cast<std::size_t>(i)].get_d());
      else
        dims[static_cast<std::size_t>(i)] =
            config.constantDims.empty()
                ? R / 8.0
                : config.constantDims[static_cast<std::size_t>(i)];
    }
    return dims;
  };

  // Sharpen the cutoff until the phase stays within half the calibrated
  // window on every box of the family.
  int N = config.initialN;
  bool forcedInconclusive = false;
  std::string notes;
  for (int attempt = 0;; ++attempt) {
    bool ok = true;
    for (double r : config.rList) {
      const std::vector<double> dims = axisDims(r);
      std::vector<double> half(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        half[static_cast<std::size_t>(i)] =
            std::min(dims[static_cast<std::size_t>(i)] / N, R);
      const double spread = phase.magnitude_bound(half);
      if (spread > 0.5 * cal.halfWidth * std::pow(r, bHeight)) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    if (attempt == config.maxDoublings) {
      forcedInconclusive = true;
      append_note(notes,
                  "phase spread still exceeds the calibrated window after "
                  "cutoff doublings");
      break;
    }
    N *= 2;
  }
  report.usedN = N;

  // Normalized profile grid; identical for every r, so it is built once.
  std::vector<double> unitHalf(static_cast<std::size_t>(n));
  std::vector<Axis> inAxes;
  for (int i = 0; i < n; ++i) {
    unitHalf[static_cast<std::size_t>(i)] =
        support.b[static_cast<std::size_t>(i)] > 0 ? 2.0 / N : 2.0;
    inAxes.push_back(Axis{-unitHalf[static_cast<std::size_t>(i)],
                          unitHalf[static_cast<std::size_t>(i)],
                          config.gridCells[static_cast<std::size_t>(i)]});
  }
  const int yn = config.gridCells[static_cast<std::size_t>(n)];
  inAxes.push_back(Axis{-U, U, yn});
  GridField g(inAxes);
  {
    std::vector<std::complex<double>> profile(static_cast<std::size_t>(yn));
    for (int j = 0; j < yn; ++j)
      profile[static_cast<std::size_t>(j)] =
          band_profile(inAxes.back().center(j), 0.0);
    std::size_t cols = g.size() / static_cast<std::size_t>(yn);
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < cols; ++c) {
      decode_column(c, inAxes, n, idx);
      double cut = 1.0;
      for (int i = 0; i < n; ++i) {
        const double w = inAxes[static_cast<std::size_t>(i)].center(
            idx[static_cast<std::size_t>(i)]);
        cut *= bump(support.b[static_cast<std::size_t>(i)] > 0 ? N * w : w);
      }
      std::complex<double>* row =
          g.data() + c * static_cast<std::size_t>(yn);
      if (cut == 0.0) continue;
      for (int j = 0; j < yn; ++j)
        row[j] = cut * profile[static_cast<std::size_t>(j)];
    }
  }
  const double pNormUnit = lp_norm(g, pD);
  apply_ds(g, sD);

  bool quadSaturated = false;
  bool floorFailed = false;
  for (double r : config.rList) {
    const std::vector<double> dims = axisDims(r);
    const double h = std::pow(r, bHeight);
    const double amplitude = std::pow(h, -sD);

    std::vector<Axis> outFirst;
    std::vector<double> halfWidths(static_cast<std::size_t>(n));
    double colArea = 1.0;
    std::size_t cols = 1;
    for (int i = 0; i < n; ++i) {
      halfWidths[static_cast<std::size_t>(i)] =
          dims[static_cast<std::size_t>(i)] *
          unitHalf[static_cast<std::size_t>(i)];
      const double extent =
          (R + halfWidths[static_cast<std::size_t>(i)]) * (1.0 + 1e-9);
      outFirst.push_back(Axis{-extent, extent,
                              config.gridCells[static_cast<std::size_t>(i)]});
      colArea *= outFirst.back().step();
      cols *= static_cast<std::size_t>(outFirst.back().n);
    }

    TransportSpec spec;
    spec.dims = dims;
    spec.heightScale = h;
    spec.amplitude = amplitude;
    spec.kernelRadius = R;
    spec.baseQuadNodes = config.baseQuadNodes;
    spec.maxQuadNodes = config.maxQuadNodes;
    spec.shear = true;

    std::vector<double> colPower(cols, 0.0);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> saturated{false};
    const unsigned hw = std::thread::hardware_concurrency();
    int threads =
        config.threads > 0 ? config.threads : (hw ? static_cast<int>(hw) : 1);
    threads = std::min<std::size_t>(threads, cols);
    auto worker = [&]() {
      std::vector<int> idx(static_cast<std::size_t>(n));
      std::vector<double> xp(static_cast<std::size_t>(n));
      std::vector<std::complex<double>> buf(static_cast<std::size_t>(yn));
      bool sat = false;
      while (true) {
        const std::size_t c = next.fetch_add(1);
        if (c >= cols) break;
        decode_column(c, outFirst, n, idx);
        for (int i = 0; i < n; ++i)
          xp[static_cast<std::size_t>(i)] =
              outFirst[static_cast<std::size_t>(i)].center(
                  idx[static_cast<std::size_t>(i)]);
        const WindowProbe probe = probe_window(phase, xp, halfWidths, R);
        if (probe.empty) continue;
        const double drift =
            std::max({probe.sMax - probe.sAtCenter,
                      probe.sAtCenter - probe.sMin, 0.0});
        double H = 1.05 * U * h + 1.3 * drift;
        H *= 1.0 + 4.0 / yn;
        const Axis yAxis{-H, H, yn};
        std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
        transport_column(g, phase, kernel, spec, xp, probe, yAxis, buf.data(),
                         &sat);
        double acc = 0.0;
        for (int j = 0; j < yn; ++j) {
          const double a = std::abs(buf[static_cast<std::size_t>(j)]);
          if (a != 0.0) acc += std::pow(a, qD);
        }
        colPower[c] = acc * yAxis.step();
      }
      if (sat) saturated.store(true);
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (saturated.load()) quadSaturated = true;

    double powerSum = 0.0;
    for (double cp : colPower) powerSum += cp;
    const double qNorm = std::pow(powerSum * colArea, 1.0 / qD);

    double volume = h;
    for (double dscale : dims) volume *= dscale;
    const double pNorm = pNormUnit * std::pow(volume, 1.0 / pD);

    // Coherence window floor, checked at the exact center of the family.
    SharpnessPoint point;
    point.r = r;
    point.ratio = qNorm / pNorm;
    double windowVol = 1.0;
    for (double dscale : dims) windowVol *= dscale / N;
    point.windowLB =
        cal.floor * config.kernelFloor * M_SQRT1_2 * windowVol * amplitude;
    {
      std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
      const WindowProbe probe = probe_window(phase, origin, halfWidths, R);
      const double span = 0.4 * cal.halfWidth * h;
      const Axis yAxis{cal.anchor * h - span, cal.anchor * h + span, 3};
      std::vector<std::complex<double>> buf(3, std::complex<double>(0, 0));
      transport_column(g, phase, kernel, spec, origin, probe, yAxis,
                       buf.data(), nullptr);
      point.measuredFloor =
          std::min({std::abs(buf[0]), std::abs(buf[1]), std::abs(buf[2])});
    }
    if (point.measuredFloor < 0.5 * point.windowLB) floorFailed = true;
    report.points.push_back(point);
  }

  if (quadSaturated)
    append_note(notes, "quadrature saturated on the widest columns");
  if (floorFailed)
    append_note(notes, "window floor not met on the grid");

  std::vector<double> lx, ly;
  bool degenerate = false;
  for (const SharpnessPoint& pt : report.points) {
    if (!(pt.ratio > 0.0) || !std::isfinite(pt.ratio)) degenerate = true;
    else {
      lx.push_back(std::log(pt.r));
      ly.push_back(std::log(pt.ratio));
    }
  }
  if (degenerate || lx.size() < 3) {
    append_note(notes, "degenerate norm ratios");
    report.verdict = SharpnessVerdict::Inconclusive;
    report.note = notes;
    return report;
  }
  const FitLine fit = fit_line(lx, ly);
  report.observedSlope = fit.slope;
  report.fitResidual = fit.rms;

  const double span = std::abs(lx.front() - lx.back());
  const double predicted = report.predictedValue;
  if (forcedInconclusive || floorFailed) {
    report.verdict = SharpnessVerdict::Inconclusive;
  } else if (fit.rms > 0.05 * (std::abs(fit.slope) * span + 0.1)) {
    append_note(notes, "ratios deviate from a power law");
    report.verdict = SharpnessVerdict::Inconclusive;
  } else if (std::abs(predicted) < 0.05) {
    append_note(notes, "predicted exponent too flat to test");
    report.verdict = SharpnessVerdict::Inconclusive;
  } else if (fit.slope <= -0.05) {
    if (std::abs(fit.slope - predicted) <= 0.15 * std::abs(predicted)) {
      report.verdict = SharpnessVerdict::GrowthObserved;
    } else {
      append_note(notes, "observed growth disagrees with the predicted rate");
      report.verdict = SharpnessVerdict::Inconclusive;
    }
  } else {
    report.verdict = SharpnessVerdict::NoGrowth;
  }
  report.note = notes;
  return report;
}

}  // namespace polyrad
