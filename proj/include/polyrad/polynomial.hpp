#pragma once

#include <map>
#include <string>
#include <vector>

#include "polyrad/rational.hpp"

namespace polyrad {

// Exponent vector of one monomial; entries are nonnegative.
using Exps = std::vector<int>;

struct Term {
  Exps exps;
  Rat coeff;
};

// Polynomial with exact rational coefficients, stored sparsely by exponent
// vector. Terms are kept in lexicographic exponent order, which makes every
// derived artifact (JSON, face polynomials) deterministic.
class SparsePolynomial {
 public:
  // Rejects empty term lists, dimension mismatches, zero coefficients,
  // duplicate exponent vectors and negative exponents.
  static SparsePolynomial make(int dim, const std::vector<Term>& terms);

  int dim() const { return dim_; }
  const std::map<Exps, Rat>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  Rat evaluate(const std::vector<Rat>& t) const;
  double evaluate(const std::vector<double>& t) const;
  std::vector<double> gradient(const std::vector<double>& t) const;

  // d/dt_var, with exact coefficients. May be the zero polynomial, which is
  // represented as an empty term map (the only way one can arise).
  SparsePolynomial partial_derivative(int var) const;
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const;

  // True when every term has total degree >= 2 (phase vanishes to second
  // order at the origin, together with its gradient).
  bool vanishes_to_second_order() const;

  // Sum of |coeff| * prod |t_i|^{e_i}; cheap upper bound for |S| on a box
  // given per-coordinate bounds.
  double magnitude_bound(const std::vector<double>& box_halfwidths) const;

  std::string to_string() const;

 private:
  int dim_ = 0;
  std::map<Exps, Rat> terms_;
};

// Star function (sum over polyhedron vertices v of prod_i |t_i|^{v_i}).
// Vertices may have rational entries; all must be nonnegative. Empty vertex
// lists and negative entries raise std::invalid_argument.
double star_evaluate(const std::vector<std::vector<Rat>>& vertices,
                     const std::vector<double>& t);

}  // namespace polyrad
