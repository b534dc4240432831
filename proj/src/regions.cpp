#include "polyrad/regions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace polyrad {

Scalar scalar_add(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) return Scalar::of(a.rational + b.rational);
  return Scalar::fitted(a.approx + b.approx);
}

Scalar scalar_sub(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) return Scalar::of(a.rational - b.rational);
  return Scalar::fitted(a.approx - b.approx);
}

Scalar scalar_mul(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) return Scalar::of(a.rational * b.rational);
  return Scalar::fitted(a.approx * b.approx);
}

Scalar scalar_div(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact) {
    if (b.rational == 0) throw std::invalid_argument("division by zero");
    return Scalar::of(a.rational / b.rational);
  }
  return Scalar::fitted(a.approx / b.approx);
}

Scalar scalar_min(const Scalar& a, const Scalar& b) {
  if (a.exact && b.exact)
    return Scalar::of(a.rational < b.rational ? a.rational : b.rational);
  return Scalar::fitted(a.approx < b.approx ? a.approx : b.approx);
}

std::string scalar_to_string(const Scalar& s) {
  if (s.exact) return rat_to_string(s.rational);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", s.approx);
  return buf;
}

int scalar_cmp(const Scalar& a, const Scalar& b, double band) {
  if (a.exact && b.exact) {
    int c = cmp(a.rational, b.rational);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  double diff = a.approx - b.approx;
  if (std::fabs(diff) <= band) return 0;
  return diff < 0 ? -1 : 1;
}

SmoothingProfile build_profile(int dim, const Rat& d, int o, Scalar a0,
                               A0Source a0Source, const BlockStructure& blocks,
                               bool kernelBoundedBelow, bool lowConfidence) {
  blocks.validate();
  if (blocks.dim() != dim)
    throw std::invalid_argument("block sizes do not sum to the dimension");
  if (o < 0) throw std::invalid_argument("negative vanishing order");
  if (a0.exact ? !(a0.rational > 0) : !(a0.approx > 0.0))
    throw std::invalid_argument("growth exponent must be positive");

  SmoothingProfile p;
  p.dim = dim;
  p.d = d;
  p.o = o;
  p.a0 = a0;
  p.a0Source = a0Source;
  p.k = blocks.total_singularity();
  p.lowConfidence = lowConfidence;
  p.kernelBoundedBelow = kernelBoundedBelow;
  p.allAlphaZero = blocks.all_alpha_zero();

  Scalar g = a0;
  for (int i = 0; i < blocks.count(); ++i)
    g = scalar_min(g, Scalar::of(Rat(blocks.sizes[i]) - blocks.alphas[i]));
  p.g = g;

  Scalar crit = Scalar::of(Rat(1, p.oBar()));
  int c = scalar_cmp(p.g, crit);
  p.caseFlag = c < 0 ? CaseFlag::Subcritical
                     : (c == 0 ? CaseFlag::Critical : CaseFlag::Supercritical);
  // Claiming the sharp obstruction needs g <= 1/max(o,2); a fitted g only
  // qualifies when it clears the threshold beyond the comparison band.
  p.gAtMostCritical = p.g.exact ? p.g.rational <= crit.rational
                                : p.g.approx < crit.approx - 1e-9;

  Scalar gain = p.caseFlag == CaseFlag::Subcritical ? p.g : crit;
  Scalar threshold = scalar_sub(Scalar::of(Rat(dim + 1)),
                                scalar_mul(Scalar::of(Rat(2)), gain));
  p.embeddingExtensionPossible = scalar_cmp(Scalar::of(p.k), threshold) > 0;
  return p;
}

RegionSet build_regions(const SmoothingProfile& p) {
  RegionSet rs;
  rs.branch = p.caseFlag;
  rs.k = p.k;
  rs.sharpnessApplies = p.sharpnessApplies();
  rs.embeddingNote = p.embeddingExtensionPossible;
  rs.planeP.slope = scalar_add(p.g, Scalar::of(p.k));
  rs.planeP.rhs = p.g;

  const Scalar zero = Scalar::of(Rat(0));
  const Scalar one = Scalar::of(Rat(1));
  const Scalar half = Scalar::of(Rat(1, 2));
  const Scalar crit = Scalar::of(Rat(1, p.oBar()));
  const Vec3 corner{one, zero, Scalar::of(-p.k)};
  const Vec3 origin{zero, zero, zero};
  const Vec3 topRight{one, one, zero};

  if (p.caseFlag == CaseFlag::Subcritical) {
    Rat halfBar(p.oBar(), 2);
    halfBar.canonicalize();
    Scalar cg = scalar_mul(Scalar::of(halfBar), p.g);
    Scalar omcg = scalar_sub(one, cg);
    Vec3 left{cg, cg, p.g};
    Vec3 right{omcg, omcg, p.g};
    rs.pieces.push_back({"Z", {left, right, corner}});
    rs.pieces.push_back({"Z1", {origin, corner, left}});
    rs.pieces.push_back({"Z2", {topRight, corner, right}});
    rs.diagonalB = {{zero, zero}, {cg, p.g}, {omcg, p.g}, {one, zero}};
  } else {
    Vec3 apex{half, half, crit};
    rs.pieces.push_back({"L", {apex, corner}});
    rs.pieces.push_back({"Z3", {origin, corner, apex}});
    rs.pieces.push_back({"Z4", {topRight, corner, apex}});
    rs.diagonalB = {{half, crit}, {zero, zero}, {one, zero}};
  }
  rs.diagonalA = {{half, crit}, {zero, zero}, {one, zero}};
  return rs;
}

namespace {

struct ShadowHit {
  bool inside = false;
  Scalar height;
};

// Barycentric test of (x, y) against the (x, y)-projection of a triangular
// piece, interpolating the piece height. Exact when the piece is exact.
ShadowHit shadow_height(const Piece& piece, const Scalar& x, const Scalar& y) {
  ShadowHit hit;
  if (piece.vertices.size() != 3) return hit;
  const Vec3& v1 = piece.vertices[0];
  const Vec3& v2 = piece.vertices[1];
  const Vec3& v3 = piece.vertices[2];
  Scalar d1x = scalar_sub(v2.x, v1.x), d1y = scalar_sub(v2.y, v1.y);
  Scalar d2x = scalar_sub(v3.x, v1.x), d2y = scalar_sub(v3.y, v1.y);
  Scalar det =
      scalar_sub(scalar_mul(d1x, d2y), scalar_mul(d2x, d1y));
  if (scalar_cmp(det, Scalar::of(Rat(0))) == 0) return hit;
  Scalar px = scalar_sub(x, v1.x), py = scalar_sub(y, v1.y);
  Scalar l2 = scalar_div(scalar_sub(scalar_mul(px, d2y), scalar_mul(d2x, py)),
                         det);
  Scalar l3 = scalar_div(scalar_sub(scalar_mul(d1x, py), scalar_mul(px, d1y)),
                         det);
  Scalar l1 = scalar_sub(scalar_sub(Scalar::of(Rat(1)), l2), l3);
  Scalar zero = Scalar::of(Rat(0));
  if (scalar_cmp(l1, zero) < 0 || scalar_cmp(l2, zero) < 0 ||
      scalar_cmp(l3, zero) < 0)
    return hit;
  hit.inside = true;
  hit.height = scalar_add(scalar_add(scalar_mul(l1, v1.z), scalar_mul(l2, v2.z)),
                          scalar_mul(l3, v3.z));
  return hit;
}

}  // namespace

Verdict classify(const SmoothingProfile& profile, const RegionSet& regions,
                 const Rat& x, const Rat& y, const Rat& s) {
  if (!(x > 0 && x < 1 && y > 0 && y < 1))
    throw std::domain_error("query needs 0 < x < 1 and 0 < y < 1");

  Verdict v;
  if (regions.embeddingNote)
    v.note =
        "inclusion arguments could enlarge the bounded range for this "
        "profile; no claim is made either way";

  const Scalar ss = Scalar::of(s);
  const Scalar one = Scalar::of(Rat(1));

  if (x == y) {
    if (s <= 0) {
      v.kind = VerdictKind::ProvablyBounded;
      v.witness = "identity estimate (s <= 0 on the diagonal)";
      return v;
    }
    Rat lam;
    if (x <= Rat(1, 2))
      lam = Rat(2) * x / profile.oBar();
    else
      lam = Rat(2) * (1 - x) / profile.oBar();
    if (scalar_cmp(ss, Scalar::of(lam)) < 0 &&
        scalar_cmp(ss, profile.g) < 0) {
      v.kind = VerdictKind::ProvablyBounded;
      v.witness = "diagonal region B";
      return v;
    }
    if (profile.kernelBoundedBelow && scalar_cmp(profile.g, one) < 0 &&
        scalar_cmp(ss, profile.g) > 0) {
      v.kind = VerdictKind::ProvablyUnbounded;
      v.witness = "diagonal obstruction (s > g)";
      return v;
    }
    return v;
  }

  if (y < x) {
    if (s < -regions.k) {
      v.kind = VerdictKind::ProvablyBounded;
      v.witness = "negative-order anchor (s < -k)";
      return v;
    }
    const Scalar sx = Scalar::of(x), sy = Scalar::of(y);
    for (const Piece& piece : regions.pieces) {
      ShadowHit hit = shadow_height(piece, sx, sy);
      if (!hit.inside) continue;
      if (scalar_cmp(ss, hit.height) < 0) {
        v.kind = VerdictKind::ProvablyBounded;
        v.witness = "below piece " + piece.label;
        return v;
      }
      break;  // adjacent pieces agree on shared edges; nothing new to find
    }
  }

  if (regions.sharpnessApplies) {
    Scalar planeH = scalar_sub(
        regions.planeP.rhs,
        scalar_mul(regions.planeP.slope,
                   Scalar::of(x - y)));
    if (scalar_cmp(ss, planeH) > 0) {
      v.kind = VerdictKind::ProvablyUnbounded;
      v.witness = "above plane P";
      return v;
    }
  }
  return v;
}

SliceResult lq_slice(const RegionSet& regions) {
  auto find = [&](const char* label) -> const Piece* {
    for (const Piece& p : regions.pieces)
      if (p.label == label) return &p;
    return nullptr;
  };
  auto cross0 = [](const Vec3& a, const Vec3& b) -> std::array<Scalar, 2> {
    Scalar t = scalar_div(a.z, scalar_sub(a.z, b.z));
    return {scalar_add(a.x, scalar_mul(t, scalar_sub(b.x, a.x))),
            scalar_add(a.y, scalar_mul(t, scalar_sub(b.y, a.y)))};
  };

  SliceResult out;
  const Scalar zero = Scalar::of(Rat(0));
  const Scalar one = Scalar::of(Rat(1));
  if (regions.branch == CaseFlag::Subcritical) {
    const Piece* Z = find("Z");
    if (!Z) throw std::invalid_argument("region set is missing piece Z");
    out.polygon = {{zero, zero},
                   cross0(Z->vertices[0], Z->vertices[2]),
                   cross0(Z->vertices[1], Z->vertices[2]),
                   {one, one}};
  } else {
    const Piece* L = find("L");
    if (!L) throw std::invalid_argument("region set is missing piece L");
    out.polygon = {{zero, zero}, cross0(L->vertices[0], L->vertices[1]),
                   {one, one}};
  }
  out.excludedOffset = scalar_div(regions.planeP.rhs, regions.planeP.slope);
  out.excludedLineApplies = regions.sharpnessApplies;
  return out;
}

}  // namespace polyrad
