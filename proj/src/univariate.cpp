#include "polyrad/univariate.hpp"

#include <stdexcept>

namespace polyrad {

Poly1 poly1_trim(Poly1 p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly1_deg(const Poly1& p) { return static_cast<int>(p.size()) - 1; }

Poly1 poly1_derivative(const Poly1& p) {
  Poly1 d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
  return poly1_trim(d);
}

Poly1 poly1_mul(const Poly1& a, const Poly1& b) {
  if (a.empty() || b.empty()) return {};
  Poly1 out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly1_trim(out);
}

Poly1 poly1_sub(const Poly1& a, const Poly1& b) {
  Poly1 out = a;
  if (b.size() > out.size()) out.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return poly1_trim(out);
}

void poly1_divmod(const Poly1& a, const Poly1& b, Poly1* q, Poly1* r) {
  if (b.empty()) throw std::invalid_argument("poly1_divmod: division by zero");
  Poly1 rem = a;
  Poly1 quot;
  const int db = poly1_deg(b);
  if (poly1_deg(a) >= db) quot.assign(a.size() - b.size() + 1, Rat(0));
  while (poly1_deg(rem) >= db) {
    const int k = poly1_deg(rem) - db;
    const Rat f = rem.back() / b.back();
    quot[k] = f;
    for (int i = 0; i <= db; ++i) rem[k + i] -= f * b[i];
    rem = poly1_trim(rem);
  }
  if (q) *q = poly1_trim(quot);
  if (r) *r = rem;
}

Poly1 poly1_gcd(Poly1 a, Poly1 b) {
  a = poly1_trim(a);
  b = poly1_trim(b);
  while (!b.empty()) {
    Poly1 r;
    poly1_divmod(a, b, nullptr, &r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

bool poly1_divides(const Poly1& d, const Poly1& p) {
  if (d.empty()) return p.empty();
  Poly1 r;
  poly1_divmod(p, d, nullptr, &r);
  return r.empty();
}

Rat poly1_eval(const Poly1& p, const Rat& x) {
  Rat v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

std::vector<Poly1> poly1_squarefree_decomposition(const Poly1& p_in) {
  Poly1 p = poly1_trim(p_in);
  std::vector<Poly1> out;
  if (poly1_deg(p) < 1) return out;
  // Yun's algorithm.
  Poly1 dp = poly1_derivative(p);
  Poly1 a = poly1_gcd(p, dp);
  Poly1 b, c, d;
  poly1_divmod(p, a, &b, nullptr);
  poly1_divmod(dp, a, &c, nullptr);
  d = poly1_sub(c, poly1_derivative(b));
  while (poly1_deg(b) >= 1) {
    Poly1 ai = poly1_gcd(b, d);
    out.push_back(ai);
    Poly1 b2, c2;
    poly1_divmod(b, ai, &b2, nullptr);
    poly1_divmod(d, ai, &c2, nullptr);
    b = b2;
    d = poly1_sub(c2, poly1_derivative(b));
  }
  return out;
}

namespace {

int sign_of(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Sign of p at +infinity (dir=+1) or -infinity (dir=-1).
int sign_at_infinity(const Poly1& p, int dir) {
  if (p.empty()) return 0;
  int s = sign_of(p.back());
  if (dir < 0 && (poly1_deg(p) % 2 == 1)) s = -s;
  return s;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

std::vector<Poly1> sturm_chain(const Poly1& p) {
  std::vector<Poly1> chain;
  chain.push_back(poly1_trim(p));
  chain.push_back(poly1_derivative(p));
  while (!chain.back().empty() && poly1_deg(chain.back()) >= 0) {
    Poly1 r;
    poly1_divmod(chain[chain.size() - 2], chain.back(), nullptr, &r);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

}  // namespace

int poly1_count_real_roots(const Poly1& p_in) {
  Poly1 p = poly1_trim(p_in);
  if (poly1_deg(p) < 1) return 0;
  auto chain = sturm_chain(p);
  std::vector<int> lo, hi;
  for (const auto& q : chain) {
    lo.push_back(sign_at_infinity(q, -1));
    hi.push_back(sign_at_infinity(q, +1));
  }
  return sign_changes(lo) - sign_changes(hi);
}

int poly1_count_nonzero_real_roots(const Poly1& p_in) {
  Poly1 p = poly1_trim(p_in);
  if (poly1_deg(p) < 1) return 0;
  int total = poly1_count_real_roots(p);
  if (!p.empty() && p[0] == 0) --total;  // squarefree => simple root at 0
  return total;
}

int poly1_max_real_nonzero_root_multiplicity(const Poly1& p) {
  auto decomp = poly1_squarefree_decomposition(p);
  int best = 0;
  for (size_t i = 0; i < decomp.size(); ++i) {
    if (poly1_deg(decomp[i]) < 1) continue;
    if (poly1_count_nonzero_real_roots(decomp[i]) > 0)
      best = static_cast<int>(i) + 1;
  }
  return best;
}

}  // namespace polyrad
