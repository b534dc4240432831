#include "polyrad/grid.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace polyrad {

namespace {

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

void fft_inplace(std::complex<double>* a, int m, bool inverse) {
  for (int i = 1, j = 0; i < m; ++i) {
    int bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= m; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / len;
    const std::complex<double> step(std::cos(ang), std::sin(ang));
    for (int base = 0; base < m; base += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[base + k];
        const std::complex<double> v = a[base + k + len / 2] * w;
        a[base + k] = u + v;
        a[base + k + len / 2] = u - v;
        w *= step;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / m;
    for (int i = 0; i < m; ++i) a[i] *= scale;
  }
}

}  // namespace

GridField::GridField(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw std::invalid_argument("grid needs at least one axis");
  std::size_t total = 1;
  for (const Axis& ax : axes_) {
    if (ax.n <= 0) throw std::invalid_argument("axis needs a positive cell count");
    if (!(ax.hi > ax.lo)) throw std::invalid_argument("axis interval is empty");
    total *= static_cast<std::size_t>(ax.n);
  }
  data_.assign(total, std::complex<double>(0.0, 0.0));
}

double GridField::cell_measure() const {
  double m = 1.0;
  for (const Axis& ax : axes_) m *= ax.step();
  return m;
}

std::size_t GridField::index(const std::vector<int>& idx) const {
  if (idx.size() != axes_.size())
    throw std::invalid_argument("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= axes_[k].n)
      throw std::out_of_range("grid index out of range");
    flat = flat * static_cast<std::size_t>(axes_[k].n) +
           static_cast<std::size_t>(idx[k]);
  }
  return flat;
}

std::complex<double>& GridField::at(const std::vector<int>& idx) {
  return data_[index(idx)];
}

const std::complex<double>& GridField::at(const std::vector<int>& idx) const {
  return data_[index(idx)];
}

void fft_last_axis(GridField& f, bool inverse) {
  const int m = f.axis(f.dim() - 1).n;
  if (!power_of_two(m))
    throw std::invalid_argument("last axis length must be a power of two");
  std::complex<double>* d = f.data();
  const std::size_t rows = f.size() / static_cast<std::size_t>(m);
  for (std::size_t r = 0; r < rows; ++r)
    fft_inplace(d + r * static_cast<std::size_t>(m), m, inverse);
}

void apply_ds(GridField& f, double s) {
  if (s == 0.0) return;
  const int m = f.axis(f.dim() - 1).n;
  const double h = f.axis(f.dim() - 1).step();
  fft_last_axis(f, false);
  std::vector<double> w(static_cast<std::size_t>(m), 0.0);
  for (int k = 1; k < m; ++k) {
    const int folded = k <= m / 2 ? k : k - m;
    const double xi = std::abs(static_cast<double>(folded)) / (m * h);
    w[static_cast<std::size_t>(k)] = std::pow(xi, s);
  }
  std::complex<double>* d = f.data();
  const std::size_t rows = f.size() / static_cast<std::size_t>(m);
  for (std::size_t r = 0; r < rows; ++r) {
    std::complex<double>* row = d + r * static_cast<std::size_t>(m);
    for (int k = 0; k < m; ++k) row[k] *= w[static_cast<std::size_t>(k)];
  }
  fft_last_axis(f, true);
}

double lp_norm(const GridField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm needs p >= 1");
  const std::complex<double>* d = f.data();
  double sum = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < f.size(); ++i) sum += std::norm(d[i]);
  } else {
    for (std::size_t i = 0; i < f.size(); ++i)
      sum += std::pow(std::abs(d[i]), p);
  }
  return std::pow(sum * f.cell_measure(), 1.0 / p);
}

IndexBox nonzero_box(const GridField& f, double tol) {
  const int n = f.dim();
  IndexBox box;
  box.lo.assign(static_cast<std::size_t>(n), 0);
  box.hi.assign(static_cast<std::size_t>(n), 0);
  bool any = false;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  const std::complex<double>* d = f.data();
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    if (std::abs(d[flat]) > tol) {
      if (!any) {
        for (int k = 0; k < n; ++k) {
          box.lo[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k)];
          box.hi[static_cast<std::size_t>(k)] =
              idx[static_cast<std::size_t>(k)] + 1;
        }
        any = true;
      } else {
        for (int k = 0; k < n; ++k) {
          const int v = idx[static_cast<std::size_t>(k)];
          if (v < box.lo[static_cast<std::size_t>(k)])
            box.lo[static_cast<std::size_t>(k)] = v;
          if (v + 1 > box.hi[static_cast<std::size_t>(k)])
            box.hi[static_cast<std::size_t>(k)] = v + 1;
        }
      }
    }
    for (int k = n - 1; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < f.axis(k).n) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
  }
  box.empty = !any;
  return box;
}

std::complex<double> interpolate(const GridField& f,
                                 const std::vector<double>& x) {
  const int n = f.dim();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("interpolation point rank mismatch");
  std::vector<int> base(static_cast<std::size_t>(n));
  std::vector<double> frac(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Axis& ax = f.axis(k);
    const double u = (x[static_cast<std::size_t>(k)] - ax.lo) / ax.step() - 0.5;
    const double fl = std::floor(u);
    base[static_cast<std::size_t>(k)] = static_cast<int>(fl);
    frac[static_cast<std::size_t>(k)] = u - fl;
    // Entirely outside the sample range on this axis: both corners missing.
    if (base[static_cast<std::size_t>(k)] < -1 ||
        base[static_cast<std::size_t>(k)] >= ax.n)
      return {0.0, 0.0};
  }
  std::complex<double> acc(0.0, 0.0);
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int corner = 0; corner < (1 << n); ++corner) {
    double weight = 1.0;
    bool inside = true;
    for (int k = 0; k < n; ++k) {
      const int bit = (corner >> k) & 1;
      const int j = base[static_cast<std::size_t>(k)] + bit;
      weight *= bit ? frac[static_cast<std::size_t>(k)]
                    : 1.0 - frac[static_cast<std::size_t>(k)];
      if (j < 0 || j >= f.axis(k).n) {
        inside = false;
        break;
      }
      idx[static_cast<std::size_t>(k)] = j;
    }
    if (inside && weight != 0.0) acc += weight * f.at(idx);
  }
  return acc;
}

}  // namespace polyrad
