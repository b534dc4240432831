#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polyrad {

// Cell-centered uniform axis on [lo, hi): sample j sits at lo + (j+1/2)*step.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int n = 1;
  double step() const { return (hi - lo) / n; }
  double center(int j) const { return lo + (j + 0.5) * step(); }
};

// Dense complex field over a product of axes, row-major, last axis contiguous.
class GridField {
 public:
  explicit GridField(std::vector<Axis> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(int k) const { return axes_[static_cast<std::size_t>(k)]; }
  std::size_t size() const { return data_.size(); }
  double cell_measure() const;

  std::complex<double>* data() { return data_.data(); }
  const std::complex<double>* data() const { return data_.data(); }

  std::size_t index(const std::vector<int>& idx) const;
  std::complex<double>& at(const std::vector<int>& idx);
  const std::complex<double>& at(const std::vector<int>& idx) const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::complex<double>> data_;
};

// In-place DFT along the last (contiguous) axis of every row. The last axis
// length must be a power of two.
void fft_last_axis(GridField& f, bool inverse);

// Fractional derivative in the last coordinate: multiplier |xi|^s on the
// last-axis spectrum. The zero mode is dropped whenever s != 0 (it would be
// infinite for s < 0 and vanishes for s > 0); s == 0 is the identity.
void apply_ds(GridField& f, double s);

// (integral of |f|^p)^(1/p) against the cell measure; requires p >= 1.
double lp_norm(const GridField& f, double p);

struct IndexBox {
  std::vector<int> lo, hi;  // half-open per axis
  bool empty = true;
};

// Smallest index box containing every entry with |f| > tol.
IndexBox nonzero_box(const GridField& f, double tol = 0.0);

// Multilinear interpolation at a physical point. Sample corners that fall
// outside the grid count as zero, so the field is extended by zero.
std::complex<double> interpolate(const GridField& f,
                                 const std::vector<double>& x);

}  // namespace polyrad
