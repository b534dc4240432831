#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polyrad/grid.hpp"
#include "polyrad/newton.hpp"
#include "polyrad/polynomial.hpp"
#include "polyrad/rational.hpp"

namespace polyrad {

using KernelFn = std::function<double(const std::vector<double>&)>;

// Smooth cutoff: 1 on [-1,1], 0 outside (-2,2), quintic smoothstep ramps.
double bump(double x);

// Band-limited profile whose spectrum is exp(-1/((xi-1)(2-xi))) on (1,2),
// weighted by xi^s, evaluated by composite Simpson at 4097 nodes.
std::complex<double> band_profile(double x, double s);

// Anchor/floor/width data for the profile: |band_profile(x,s)| stays above
// `floor` and its phase within pi/4 of the anchor's for |x-anchor| < 2*halfWidth.
struct Calibration {
  double anchor = 0.0;
  double floor = 0.0;
  double halfWidth = 0.0;
};
Calibration calibrate_profile(double s);

// Half-extent at which both the s = 0 and the weighted profile have decayed
// below 1e-6 of their peaks; picked from a fixed ladder.
double profile_window(double s);

struct TransportSpec {
  std::vector<double> dims;   // physical scale of each input box axis
  double heightScale = 1.0;   // physical scale of the last input axis
  double amplitude = 1.0;     // multiplies the output
  double kernelRadius = 0.25; // quadrature box half-width per variable
  int baseQuadNodes = 48;
  int maxQuadNodes = 4096;
  bool shear = true;          // subtract the phase height of the column
  int threads = 0;
};

// Pushes a normalized box profile through the averaging operator:
//   out(x', y) = amplitude * integral over t of
//     input((x'-t)/dims, (y + [S(x')] - S(t))/heightScale) K(t) dt
// with t ranging over the kernel box. The bracketed shift is applied when
// spec.shear is set, which flattens the output tube so that a modest grid
// resolves it; the change of variables has unit Jacobian, so norms agree.
GridField transport(const GridField& input, const SparsePolynomial& phase,
                    const KernelFn& kernel, const std::vector<Axis>& outAxes,
                    const TransportSpec& spec);

struct BoxTestConfig {
  std::vector<double> rList;      // box scales, strictly decreasing
  std::vector<int> gridCells;     // n+1 entries, last a power of two
  int initialN = 8;               // cutoff sharpening factor
  int maxDoublings = 3;
  double kernelSupportRadius = 0.25;
  double kernelFloor = 1.0;           // lower bound of K on its support
  std::vector<double> constantDims;   // axis scales where the box exponent is 0
  int baseQuadNodes = 48;
  int maxQuadNodes = 4096;
  int threads = 0;
  std::uint64_t seed = 1;  // recorded only; the harness is deterministic
};

enum class SharpnessVerdict { GrowthObserved, NoGrowth, Inconclusive };

struct SharpnessPoint {
  double r = 0.0;
  double ratio = 0.0;          // dual-norm ratio of the transported box
  double windowLB = 0.0;       // guaranteed floor on the coherence window
  double measuredFloor = 0.0;  // observed minimum over that window
};

struct SharpnessReport {
  std::vector<double> b;  // box exponents; last entry is the height exponent
  int usedN = 0;
  double observedSlope = 0.0;  // d log(ratio) / d log(r)
  double fitResidual = 0.0;
  Rat predictedExponent;       // exact in the inputs
  double predictedValue = 0.0;
  std::vector<SharpnessPoint> points;
  SharpnessVerdict verdict = SharpnessVerdict::Inconclusive;
  std::string note;
};

// Drives the scaled box family through the operator for each r, measures
// ||D^s (T f_r)||_q / ||f_r||_p on a grid, and fits the growth in r.
// pInv and qInv are 1/p and 1/q, both strictly between 0 and 1.
SharpnessReport run_sharpness(const SparsePolynomial& phase,
                              const NewtonPolyhedron& poly,
                              const KernelFn& kernel, const Rat& pInv,
                              const Rat& qInv, const Rat& s,
                              const BoxTestConfig& config);

std::string verdict_name(SharpnessVerdict v);

}  // namespace polyrad
