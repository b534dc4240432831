#include <doctest.h>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "polyrad/sharpness.hpp"

using namespace polyrad;

namespace {

// Independent quadrature of the profile: plain midpoint rule over the
// spectrum support, no shared code with the implementation.
std::complex<double> profile_oracle(double x, double s, int nodes) {
  std::complex<double> acc(0.0, 0.0);
  const double h = 1.0 / nodes;
  for (int j = 0; j < nodes; ++j) {
    const double xi = 1.0 + (j + 0.5) * h;
    const double g = std::exp(-1.0 / ((xi - 1.0) * (2.0 - xi)));
    acc += g * std::pow(xi, s) *
           std::exp(std::complex<double>(0.0, 2.0 * M_PI * x * xi));
  }
  return acc * h;
}

GridField ones_box(int wCells, int uCells) {
  GridField g({Axis{-2.0, 2.0, wCells}, Axis{-1.0, 1.0, uCells}});
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = 1.0;
  return g;
}

// Phase small enough that every shift is far below the grid resolution.
SparsePolynomial flat_phase() {
  return SparsePolynomial::make(1, {{{3}, Rat(1, 1000000000)}});
}

const KernelFn kOne = [](const std::vector<double>&) { return 1.0; };

BoxTestConfig cubic_config() {
  BoxTestConfig cfg;
  cfg.rList = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  cfg.gridCells = {256, 2048};
  cfg.initialN = 8;
  cfg.kernelSupportRadius = 0.25;
  cfg.kernelFloor = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("cutoff bump is 1 on the core, 0 outside, smooth in between") {
  CHECK(bump(0.0) == 1.0);
  CHECK(bump(1.0) == 1.0);
  CHECK(bump(-1.0) == 1.0);
  CHECK(bump(2.0) == 0.0);
  CHECK(bump(-2.0) == 0.0);
  CHECK(bump(3.7) == 0.0);
  CHECK(bump(1.5) == 0.5);
  CHECK(bump(-1.5) == 0.5);
  CHECK(bump(1.25) == doctest::Approx(459.0 / 512.0).epsilon(1e-15));
  double prev = 1.0;
  for (int i = 1; i <= 20; ++i) {
    const double v = bump(1.0 + i * 0.05);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("band profile matches an independent quadrature") {
  const std::complex<double> at0 = band_profile(0.0, 0.0);
  const std::complex<double> ref0 = profile_oracle(0.0, 0.0, 1 << 17);
  CHECK(at0.real() == doctest::Approx(ref0.real()).epsilon(1e-8));
  CHECK(std::abs(at0.imag()) < 1e-12);

  const std::complex<double> atx = band_profile(0.37, 0.0);
  const std::complex<double> refx = profile_oracle(0.37, 0.0, 1 << 17);
  CHECK(std::abs(atx - refx) < 1e-9);

  const std::complex<double> atw = band_profile(0.5, 0.7);
  const std::complex<double> refw = profile_oracle(0.5, 0.7, 1 << 17);
  CHECK(std::abs(atw - refw) < 1e-9);

  // real spectrum: conjugate symmetry in x
  const std::complex<double> plus = band_profile(0.81, -0.3);
  const std::complex<double> minus = band_profile(-0.81, -0.3);
  CHECK(std::abs(plus - std::conj(minus)) < 1e-13);
}

TEST_CASE("differentiating the profile shifts the spectral weight by one") {
  const double x = 0.3, eps = 1e-3;
  const std::complex<double> diff =
      (band_profile(x + eps, 0.0) - band_profile(x - eps, 0.0)) / (2.0 * eps);
  const std::complex<double> weighted =
      std::complex<double>(0.0, 2.0 * M_PI) * band_profile(x, 1.0);
  CHECK(std::abs(diff - weighted) < 1e-4);
}

TEST_CASE("profile calibration lands on the frozen anchor and window") {
  for (double s : {0.0, 0.1, -0.1}) {
    CAPTURE(s);
    const Calibration cal = calibrate_profile(s);
    CHECK(std::abs(cal.anchor) < 1e-4);
    CHECK(cal.halfWidth == 0.03125);
    CHECK(cal.floor > 0.0);
    CHECK(profile_window(s) == 24.0);
  }
  const Calibration c0 = calibrate_profile(0.0);
  CHECK(c0.floor ==
        doctest::Approx(0.5 * std::abs(band_profile(0.0, 0.0))).epsilon(1e-9));
  CHECK(calibrate_profile(0.1).floor == doctest::Approx(0.0036590).epsilon(1e-4));
  CHECK(calibrate_profile(-0.1).floor == doctest::Approx(0.0033769).epsilon(1e-4));
}

TEST_CASE("transport of a constant box reproduces window overlap measure") {
  GridField g = ones_box(32, 64);
  TransportSpec spec;
  spec.dims = {0.1};
  spec.heightScale = 0.05;
  spec.kernelRadius = 0.25;
  const Axis xAxis{-0.5, 0.5, 41};
  GridField out = transport(g, flat_phase(), kOne,
                            {xAxis, Axis{-0.0125, 0.0125, 5}}, spec);
  auto overlap = [](double x) {
    const double lo = std::max(-0.25, x - 0.2);
    const double hi = std::min(0.25, x + 0.2);
    return std::max(0.0, hi - lo);
  };
  for (int i : {20, 24, 30, 37, 39, 2}) {
    CAPTURE(i);
    const double expected = overlap(xAxis.center(i));
    for (int j = 0; j < 5; ++j)
      CHECK(std::abs(std::abs(out.at({i, j})) - expected) < 0.02);
  }
  // fully outside the kernel support: exactly zero
  CHECK(std::abs(out.at({39, 2})) == 0.0);
  CHECK(std::abs(out.at({0, 0})) == 0.0);
}

TEST_CASE("shearing tracks the phase height of each column") {
  GridField g = ones_box(32, 64);
  SparsePolynomial lin = SparsePolynomial::make(1, {{{1}, Rat(1)}});
  TransportSpec spec;
  spec.dims = {0.02};
  spec.heightScale = 0.05;
  spec.kernelRadius = 0.25;
  const std::vector<Axis> axes{Axis{-0.5, 0.5, 41}, Axis{-0.005, 0.005, 1}};

  spec.shear = true;
  GridField sheared = transport(g, lin, kOne, axes, spec);
  spec.shear = false;
  GridField plain = transport(g, lin, kOne, axes, spec);

  // column at x' ~ 0.146: the un-sheared tube has left the output window
  CHECK(std::abs(std::abs(sheared.at({26, 0})) - 0.08) < 0.01);
  CHECK(std::abs(plain.at({26, 0})) == 0.0);
  // sheared output only depends on x' - t, so interior columns agree
  for (int i : {13, 18, 22, 27}) {
    CAPTURE(i);
    CHECK(std::abs(std::abs(sheared.at({i, 0})) - 0.08) < 0.01);
  }
}

TEST_CASE("transport scales linearly in amplitude and kernel weight") {
  GridField g = ones_box(32, 64);
  TransportSpec spec;
  spec.dims = {0.1};
  spec.heightScale = 0.05;
  spec.kernelRadius = 0.25;
  const std::vector<Axis> axes{Axis{-0.5, 0.5, 41}, Axis{-0.0125, 0.0125, 5}};
  GridField base = transport(g, flat_phase(), kOne, axes, spec);
  spec.amplitude = 3.5;
  const KernelFn two = [](const std::vector<double>&) { return 2.0; };
  GridField scaled = transport(g, flat_phase(), two, axes, spec);
  CHECK(std::abs(scaled.at({20, 2})) ==
        doctest::Approx(7.0 * std::abs(base.at({20, 2}))).epsilon(1e-12));
}

TEST_CASE("transport validates its geometry") {
  GridField g = ones_box(32, 64);
  TransportSpec spec;
  spec.dims = {0.1, 0.2};  // wrong rank
  CHECK_THROWS_AS(transport(g, flat_phase(), kOne,
                            {Axis{-1, 1, 8}, Axis{-1, 1, 8}}, spec),
                  std::invalid_argument);
  spec.dims = {0.1};
  CHECK_THROWS_AS(transport(g, flat_phase(), kOne, {Axis{-1, 1, 8}}, spec),
                  std::invalid_argument);
  spec.dims = {-0.1};
  CHECK_THROWS_AS(transport(g, flat_phase(), kOne,
                            {Axis{-1, 1, 8}, Axis{-1, 1, 8}}, spec),
                  std::invalid_argument);
}

TEST_CASE("cubic box family: growth appears exactly on the predicted side") {
  SparsePolynomial cubic = SparsePolynomial::make(1, {{{3}, Rat(1)}});
  NewtonPolyhedron poly = build_polyhedron(cubic);
  const BoxTestConfig cfg = cubic_config();

  SUBCASE("positive smoothing order grows at the predicted rate") {
    SharpnessReport rep =
        run_sharpness(cubic, poly, kOne, Rat(1, 2), Rat(1, 4), Rat(1, 10), cfg);
    REQUIRE(rep.points.size() == 4);
    CHECK(rep.b.size() == 2);
    CHECK(rep.b[0] == doctest::Approx(1.0));
    CHECK(rep.b[1] == doctest::Approx(3.0));
    CHECK(rep.usedN == 8);
    CHECK(rep.predictedExponent == Rat(-3, 10));
    CHECK(rep.predictedValue == doctest::Approx(-0.3));
    CHECK(rep.verdict == SharpnessVerdict::GrowthObserved);
    CHECK(std::abs(rep.observedSlope + 0.3) < 0.03);
    CHECK(rep.fitResidual < 1e-4);
    CHECK(rep.note.empty());
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
      CAPTURE(i);
      CHECK(rep.points[i].ratio > 0.0);
      CHECK(rep.points[i].measuredFloor > 2.0 * rep.points[i].windowLB);
      if (i > 0) CHECK(rep.points[i].ratio > rep.points[i - 1].ratio);
    }
  }

  SUBCASE("negative smoothing order decays, so no growth is claimed") {
    SharpnessReport rep = run_sharpness(cubic, poly, kOne, Rat(1, 2), Rat(1, 4),
                                        Rat(-1, 10), cfg);
    CHECK(rep.predictedExponent == Rat(3, 10));
    CHECK(rep.verdict == SharpnessVerdict::NoGrowth);
    CHECK(std::abs(rep.observedSlope - 0.3) < 0.03);
    for (std::size_t i = 1; i < rep.points.size(); ++i)
      CHECK(rep.points[i].ratio < rep.points[i - 1].ratio);
  }
}

TEST_CASE("cutoff doubles until the phase fits the calibrated window") {
  SparsePolynomial steep = SparsePolynomial::make(1, {{{3}, Rat(2)}});
  NewtonPolyhedron poly = build_polyhedron(steep);
  BoxTestConfig cfg = cubic_config();
  cfg.gridCells = {128, 512};
  cfg.initialN = 4;
  cfg.maxDoublings = 2;
  SharpnessReport rep =
      run_sharpness(steep, poly, kOne, Rat(1, 2), Rat(1, 4), Rat(1, 10), cfg);
  CHECK(rep.usedN == 8);
  CHECK(rep.verdict == SharpnessVerdict::GrowthObserved);
  CHECK(std::abs(rep.observedSlope + 0.3) < 0.05);

  cfg.gridCells = {64, 256};
  cfg.maxDoublings = 0;
  SharpnessReport capped =
      run_sharpness(steep, poly, kOne, Rat(1, 2), Rat(1, 4), Rat(1, 10), cfg);
  CHECK(capped.usedN == 4);
  CHECK(capped.verdict == SharpnessVerdict::Inconclusive);
  CHECK(capped.note.find("cutoff doublings") != std::string::npos);
}

TEST_CASE("box test rejects malformed configurations") {
  SparsePolynomial cubic = SparsePolynomial::make(1, {{{3}, Rat(1)}});
  NewtonPolyhedron poly = build_polyhedron(cubic);
  const auto run = [&](const BoxTestConfig& cfg, Rat pInv = Rat(1, 2),
                       Rat qInv = Rat(1, 4)) {
    return run_sharpness(cubic, poly, kOne, pInv, qInv, Rat(1, 10), cfg);
  };
  BoxTestConfig good = cubic_config();
  good.gridCells = {64, 256};

  BoxTestConfig cfg = good;
  cfg.rList = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = good;
  cfg.rList = {0.5, 0.4, 0.3, 0.25};  // spans only a factor of 2
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = good;
  cfg.rList = {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8};  // increasing
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = good;
  cfg.gridCells = {64, 300};  // not a power of two
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = good;
  cfg.gridCells = {64, 128};  // too short
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = good;
  cfg.gridCells = {64, 256, 512};  // wrong rank
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = good;
  cfg.initialN = 2;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  CHECK_THROWS_AS(run(good, Rat(0), Rat(1, 4)), std::invalid_argument);
  CHECK_THROWS_AS(run(good, Rat(1, 2), Rat(1)), std::invalid_argument);
}
