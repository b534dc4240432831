#include "polyrad/polynomial.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polyrad {

namespace {

double int_pow(double x, int e) {
  double r = 1.0;
  double base = x;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

SparsePolynomial SparsePolynomial::make(int dim, const std::vector<Term>& terms) {
  if (dim < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  if (terms.empty()) throw std::invalid_argument("polynomial needs at least one term");
  SparsePolynomial p;
  p.dim_ = dim;
  for (const auto& t : terms) {
    if (static_cast<int>(t.exps.size()) != dim)
      throw std::invalid_argument("term exponent vector has wrong dimension");
    for (int e : t.exps)
      if (e < 0) throw std::invalid_argument("negative exponent in term");
    if (t.coeff == 0) throw std::invalid_argument("zero coefficient term");
    auto [it, inserted] = p.terms_.emplace(t.exps, t.coeff);
    if (!inserted) throw std::invalid_argument("duplicate exponent vector in term list");
  }
  return p;
}

Rat SparsePolynomial::evaluate(const std::vector<Rat>& t) const {
  if (static_cast<int>(t.size()) != dim_)
    throw std::invalid_argument("evaluate: point dimension mismatch");
  Rat sum = 0;
  for (const auto& [e, c] : terms_) {
    Rat m = c;
    for (int i = 0; i < dim_; ++i) {
      for (int k = 0; k < e[i]; ++k) m *= t[i];
    }
    sum += m;
  }
  return sum;
}

double SparsePolynomial::evaluate(const std::vector<double>& t) const {
  if (static_cast<int>(t.size()) != dim_)
    throw std::invalid_argument("evaluate: point dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = rat_to_double(c);
    for (int i = 0; i < dim_; ++i) m *= int_pow(t[i], e[i]);
    sum += m;
  }
  return sum;
}

std::vector<double> SparsePolynomial::gradient(const std::vector<double>& t) const {
  if (static_cast<int>(t.size()) != dim_)
    throw std::invalid_argument("gradient: point dimension mismatch");
  std::vector<double> g(dim_, 0.0);
  for (const auto& [e, c] : terms_) {
    double cd = rat_to_double(c);
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      double m = cd * e[i] * int_pow(t[i], e[i] - 1);
      for (int j = 0; j < dim_; ++j) {
        if (j == i) continue;
        m *= int_pow(t[j], e[j]);
      }
      g[i] += m;
    }
  }
  return g;
}

SparsePolynomial SparsePolynomial::partial_derivative(int var) const {
  if (var < 0 || var >= dim_)
    throw std::invalid_argument("partial_derivative: variable index out of range");
  SparsePolynomial out;
  out.dim_ = dim_;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exps de = e;
    de[var] -= 1;
    out.terms_[de] = c * Rat(e[var]);
  }
  return out;
}

int SparsePolynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

bool SparsePolynomial::vanishes_to_second_order() const {
  for (const auto& [e, c] : terms_) {
    if (std::accumulate(e.begin(), e.end(), 0) < 2) return false;
  }
  return true;
}

double SparsePolynomial::magnitude_bound(const std::vector<double>& box) const {
  if (static_cast<int>(box.size()) != dim_)
    throw std::invalid_argument("magnitude_bound: box dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = std::abs(rat_to_double(c));
    for (int i = 0; i < dim_; ++i) m *= int_pow(std::abs(box[i]), e[i]);
    sum += m;
  }
  return sum;
}

std::string SparsePolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rat_to_string(c) << ")";
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      os << "*t" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

double star_evaluate(const std::vector<std::vector<Rat>>& vertices,
                     const std::vector<double>& t) {
  if (vertices.empty())
    throw std::invalid_argument("star_evaluate: empty vertex list");
  const size_t n = t.size();
  double sum = 0.0;
  for (const auto& v : vertices) {
    if (v.size() != n)
      throw std::invalid_argument("star_evaluate: vertex dimension mismatch");
    double m = 1.0;
    for (size_t i = 0; i < n; ++i) {
      if (v[i] < 0)
        throw std::invalid_argument("star_evaluate: negative vertex coordinate");
      if (v[i] == 0) continue;  // |t|^0 = 1, including t = 0
      double a = std::abs(t[i]);
      long vi = 0;
      if (rat_is_int(v[i], &vi))
        m *= int_pow(a, static_cast<int>(vi));
      else
        m *= std::pow(a, rat_to_double(v[i]));
    }
    sum += m;
  }
  return sum;
}

}  // namespace polyrad
