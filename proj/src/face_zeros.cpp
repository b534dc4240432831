#include "polyrad/face_zeros.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "polyrad/rng.hpp"
#include "polyrad/univariate.hpp"

namespace polyrad {

const char* zero_method_name(ZeroMethod m) {
  switch (m) {
    case ZeroMethod::MonomialTrivial: return "monomial-trivial";
    case ZeroMethod::ExactUnivariate: return "exact-univariate";
    case ZeroMethod::NumericSampling: return "numeric-sampling";
    case ZeroMethod::UserOverride: return "user-override";
  }
  return "?";
}

namespace {

std::vector<long> integer_vector(const std::vector<Rat>& v, const char* what) {
  std::vector<long> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    long x = 0;
    if (!rat_is_int(v[i], &x)) throw std::invalid_argument(what);
    out[i] = x;
  }
  return out;
}

// Face sub-sum whose exponents lie on a line. Substituting u = t^delta for the
// primitive lattice direction delta turns it into t^base * G(u); at a zero
// with every t_i nonzero the substitution is a submersion and t^base is a
// unit, so the vanishing order equals the multiplicity of the matching root
// of G. A primitive delta has an odd entry, hence both signs of u are realized
// across the sign orthants and every nonzero real root of G corresponds to an
// actual zero.
FaceZeroReport exact_collinear(const SparsePolynomial& f) {
  FaceZeroReport rep;
  rep.method = ZeroMethod::ExactUnivariate;

  std::vector<std::vector<long>> pts;
  std::vector<Rat> coeffs;
  for (const auto& [e, c] : f.terms()) {
    pts.emplace_back(e.begin(), e.end());
    coeffs.push_back(c);
  }
  const auto& base = pts.front();  // lex-smallest exponent
  const auto& last = pts.back();
  const size_t n = base.size();

  std::vector<long> dir(n);
  long g = 0;
  for (size_t i = 0; i < n; ++i) {
    dir[i] = last[i] - base[i];
    g = std::gcd(g, std::abs(dir[i]));
  }
  if (g == 0) throw std::logic_error("collinear reduction on a single point");
  for (auto& d : dir) d /= g;
  size_t pivot = 0;
  while (dir[pivot] == 0) ++pivot;

  int maxj = 0;
  std::vector<int> js(pts.size());
  for (size_t v = 0; v < pts.size(); ++v) {
    const long num = pts[v][pivot] - base[pivot];
    if (num % dir[pivot] != 0)
      throw std::logic_error("face exponents not on the primitive lattice line");
    const long j = num / dir[pivot];
    for (size_t i = 0; i < n; ++i)
      if (pts[v][i] != base[i] + j * dir[i])
        throw std::logic_error("face exponents not collinear");
    if (j < 0) throw std::logic_error("lex base is not the extreme face point");
    js[v] = static_cast<int>(j);
    maxj = std::max(maxj, js[v]);
  }

  Poly1 G(maxj + 1, Rat(0));
  for (size_t v = 0; v < pts.size(); ++v) G[js[v]] = coeffs[v];

  rep.order = poly1_max_real_nonzero_root_multiplicity(G);
  int distinct = 0;
  for (const auto& factor : poly1_squarefree_decomposition(G))
    if (poly1_deg(factor) >= 1) distinct += poly1_count_nonzero_real_roots(factor);
  rep.zerosFound = distinct;
  return rep;
}

// Rescale t along the quasi-homogeneous orbit so max_i |t_i|^{1/w_i} = 1.
// Zeros of the face sub-sum are preserved and iterates stay on a compact set.
void renormalize(std::vector<double>& t, const std::vector<long>& w) {
  double m = 0.0;
  for (size_t i = 0; i < t.size(); ++i)
    m = std::max(m, std::pow(std::abs(t[i]), 1.0 / static_cast<double>(w[i])));
  if (!(m > 0.0)) return;
  for (size_t i = 0; i < t.size(); ++i)
    t[i] /= std::pow(m, static_cast<double>(w[i]));
}

struct OrderProbe {
  int order = 0;
  bool weak = false;
};

// Vanishing order at an approximate zero p: walk derivative levels and accept
// the first whose largest coefficient-normalized magnitude clears 1e-2. The
// position error of a degenerate zero makes lower levels small-but-nonzero,
// which is why the gate is a loose relative threshold rather than a strict
// zero test; thin margins on either side set `weak`.
OrderProbe probe_order(const SparsePolynomial& f, const std::vector<double>& p,
                       int cap) {
  const int n = f.dim();
  std::vector<double> box(n);
  for (int i = 0; i < n; ++i) box[i] = std::max(1.0, std::abs(p[i]));

  std::map<Exps, SparsePolynomial> level;
  level.emplace(Exps(n, 0), f);
  double skipped = 0.0;
  for (int m = 1; m <= cap; ++m) {
    std::map<Exps, SparsePolynomial> next;
    for (const auto& [beta, gp] : level) {
      for (int i = 0; i < n; ++i) {
        Exps nb = beta;
        nb[i] += 1;
        if (next.count(nb)) continue;
        SparsePolynomial d = gp.partial_derivative(i);
        if (!d.is_zero()) next.emplace(std::move(nb), std::move(d));
      }
    }
    double rel = 0.0;
    for (const auto& [beta, gp] : next) {
      const double denom = 1.0 + gp.magnitude_bound(box);
      rel = std::max(rel, std::abs(gp.evaluate(p)) / denom);
    }
    if (rel > 1e-2) return {m, rel < 0.1 || skipped > 1e-4};
    skipped = std::max(skipped, rel);
    if (next.empty()) break;
    level = std::move(next);
  }
  return {cap, true};
}

FaceZeroReport numeric_sampling(const SparsePolynomial& f,
                                const std::vector<long>& w,
                                const ZeroOrderOptions& opt) {
  FaceZeroReport rep;
  rep.method = ZeroMethod::NumericSampling;
  const int n = f.dim();
  const int cap = std::max(1, f.total_degree());
  const double scale = 1.0 + f.magnitude_bound(std::vector<double>(n, 1.0));

  std::vector<std::vector<int>> orthants;
  if (n <= 6) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> s(n);
      for (int i = 0; i < n; ++i) s[i] = ((mask >> i) & 1) ? -1 : 1;
      orthants.push_back(std::move(s));
    }
  } else {
    Rng orng = Rng::substream(opt.seed, 0xFACE);
    for (int k = 0; k < 64; ++k) {
      std::vector<int> s(n);
      for (int i = 0; i < n; ++i) s[i] = (orng.next_u64() & 1) ? -1 : 1;
      orthants.push_back(std::move(s));
    }
  }

  std::vector<std::vector<double>> clusters;
  std::vector<OrderProbe> probes;
  bool missedSignChange = false;
  std::uint64_t stream = 1;
  for (const auto& sgn : orthants) {
    bool pos = false, neg = false, found = false;
    for (int start = 0; start < opt.startsPerOrthant; ++start) {
      Rng rng = Rng::substream(opt.seed, stream++);
      std::vector<double> t(n);
      for (int i = 0; i < n; ++i) t[i] = sgn[i] * rng.uniform(0.25, 1.25);
      renormalize(t, w);
      (f.evaluate(t) > 0 ? pos : neg) = true;

      for (int it = 0; it < opt.newtonIters; ++it) {
        const double fv = f.evaluate(t);
        const auto g = f.gradient(t);
        double g2 = 0.0;
        for (double gi : g) g2 += gi * gi;
        if (g2 < 1e-280) break;
        double coef = fv / g2;
        double smax = 0.0;
        for (double gi : g) smax = std::max(smax, std::abs(coef * gi));
        if (smax > 0.25) coef *= 0.25 / smax;
        for (int i = 0; i < n; ++i) t[i] -= coef * g[i];
        renormalize(t, w);
        if (smax < 1e-14) break;
      }

      const double fv = std::abs(f.evaluate(t));
      double tmin = HUGE_VAL;
      for (double ti : t) tmin = std::min(tmin, std::abs(ti));
      if (fv > 1e-9 * scale || tmin < 1e-3) continue;
      found = true;
      bool fresh = true;
      for (const auto& r : clusters) {
        double d = 0.0;
        for (int i = 0; i < n; ++i) d = std::max(d, std::abs(r[i] - t[i]));
        if (d < 1e-3) {
          fresh = false;
          break;
        }
      }
      if (!fresh) continue;
      clusters.push_back(t);
      probes.push_back(probe_order(f, t, cap));
    }
    // An orthant is a connected product of half-lines, so a sign change with
    // no located zero means one was missed.
    if (pos && neg && !found) missedSignChange = true;
  }

  rep.zerosFound = static_cast<int>(clusters.size());
  bool attainedConfidently = true;
  for (const auto& pr : probes) {
    if (pr.order > rep.order) {
      rep.order = pr.order;
      attainedConfidently = !pr.weak;
    } else if (pr.order == rep.order && !pr.weak) {
      attainedConfidently = true;
    }
  }
  rep.lowConfidence = missedSignChange || (!probes.empty() && !attainedConfidently);
  return rep;
}

}  // namespace

FaceZeroReport zero_order_on_face(const SparsePolynomial& S, const Face& face,
                                  const ZeroOrderOptions& opt) {
  if (opt.overrideOrder) {
    FaceZeroReport rep;
    rep.order = *opt.overrideOrder;
    rep.method = ZeroMethod::UserOverride;
    return rep;
  }
  const SparsePolynomial f = face_polynomial(S, face);
  if (f.term_count() == 1) {
    FaceZeroReport rep;
    rep.method = ZeroMethod::MonomialTrivial;
    return rep;
  }
  if (face.dim <= 1 && !opt.forceNumeric) return exact_collinear(f);
  const auto w = integer_vector(face.normal, "face normal must be integral");
  return numeric_sampling(f, w, opt);
}

ZeroOrderSummary max_zero_order(const SparsePolynomial& S,
                                const std::vector<Face>& faces,
                                const ZeroOrderOptions& opt) {
  ZeroOrderSummary out;
  if (opt.overrideOrder) {
    out.order = *opt.overrideOrder;
    out.method = ZeroMethod::UserOverride;
    return out;
  }
  for (const auto& face : faces)
    out.perFace.push_back(zero_order_on_face(S, face, opt));

  for (const auto& rep : out.perFace) {
    out.order = std::max(out.order, rep.order);
    out.lowConfidence = out.lowConfidence || rep.lowConfidence;
  }
  if (out.order == 0) {
    // Every face contributes to a zero answer, so report the weakest method
    // consulted.
    out.method = ZeroMethod::MonomialTrivial;
    for (const auto& rep : out.perFace) {
      if (rep.method == ZeroMethod::NumericSampling) {
        out.method = ZeroMethod::NumericSampling;
        break;
      }
      if (rep.method == ZeroMethod::ExactUnivariate)
        out.method = ZeroMethod::ExactUnivariate;
    }
  } else {
    // Among the attaining faces an exact reduction outranks sampling.
    out.method = ZeroMethod::NumericSampling;
    for (const auto& rep : out.perFace)
      if (rep.order == out.order && rep.method != ZeroMethod::NumericSampling)
        out.method = rep.method;
  }
  return out;
}

ZeroOrderSummary compute_zero_order(const SparsePolynomial& S,
                                    const ZeroOrderOptions& opt) {
  if (opt.overrideOrder) {
    ZeroOrderSummary out;
    out.order = *opt.overrideOrder;
    out.method = ZeroMethod::UserOverride;
    return out;
  }
  const NewtonPolyhedron N = build_polyhedron(S);
  return max_zero_order(S, enumerate_compact_faces(N), opt);
}

}  // namespace polyrad
