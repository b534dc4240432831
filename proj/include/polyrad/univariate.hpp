#pragma once

#include <vector>

#include "polyrad/rational.hpp"

namespace polyrad {

// Dense univariate polynomial over Q, coefficient of u^i at index i.
// Normalized form drops trailing zero coefficients; the zero polynomial is
// the empty vector.
using Poly1 = std::vector<Rat>;

Poly1 poly1_trim(Poly1 p);
int poly1_deg(const Poly1& p);  // -1 for the zero polynomial
Poly1 poly1_derivative(const Poly1& p);
Poly1 poly1_mul(const Poly1& a, const Poly1& b);
Poly1 poly1_sub(const Poly1& a, const Poly1& b);
// Euclidean division; quotient and remainder are exact.
void poly1_divmod(const Poly1& a, const Poly1& b, Poly1* q, Poly1* r);
// Monic gcd.
Poly1 poly1_gcd(Poly1 a, Poly1 b);
bool poly1_divides(const Poly1& d, const Poly1& p);
Rat poly1_eval(const Poly1& p, const Rat& x);

// Yun's squarefree decomposition: p = c * prod_i out[i]^(i+1) with each
// out[i] squarefree and pairwise coprime (out[i] == {1} where absent).
std::vector<Poly1> poly1_squarefree_decomposition(const Poly1& p);

// Number of distinct real roots of a squarefree polynomial (Sturm count over
// the whole line).
int poly1_count_real_roots(const Poly1& p);

// Distinct real roots different from zero; assumes p squarefree.
int poly1_count_nonzero_real_roots(const Poly1& p);

// Largest multiplicity among real nonzero roots of an arbitrary p; 0 when
// there are none. Exact.
int poly1_max_real_nonzero_root_multiplicity(const Poly1& p);

}  // namespace polyrad
