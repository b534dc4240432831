#pragma once

#include <array>
#include <string>
#include <vector>

#include "polyrad/blocks.hpp"
#include "polyrad/rational.hpp"

namespace polyrad {

// Dual exact/approximate number: an exact rational whenever the quantity was
// derived symbolically, a double when it came out of a numerical fit. The
// approx field is always usable.
struct Scalar {
  bool exact = false;
  Rat rational = Rat(0);
  double approx = 0.0;

  static Scalar of(const Rat& q) { return {true, q, rat_to_double(q)}; }
  static Scalar fitted(double v) { return {false, Rat(0), v}; }
};

Scalar scalar_add(const Scalar& a, const Scalar& b);
Scalar scalar_sub(const Scalar& a, const Scalar& b);
Scalar scalar_mul(const Scalar& a, const Scalar& b);
Scalar scalar_div(const Scalar& a, const Scalar& b);
Scalar scalar_min(const Scalar& a, const Scalar& b);
std::string scalar_to_string(const Scalar& s);

// Three-way comparison: exact when both sides are exact; otherwise values
// within `band` of each other compare equal, and callers treat that as a
// borderline case (never letting float noise pick a verdict).
int scalar_cmp(const Scalar& a, const Scalar& b, double band = 1e-9);

enum class A0Source { Exact, Fitted, UserOverride };
enum class CaseFlag { Subcritical, Critical, Supercritical };

struct SmoothingProfile {
  int dim = 1;  // number of t variables
  Rat d = Rat(0);
  int o = 0;
  Scalar a0;
  A0Source a0Source = A0Source::Exact;
  int d0 = 0;
  Scalar g;
  Rat k = Rat(1);
  CaseFlag caseFlag = CaseFlag::Subcritical;
  bool allAlphaZero = false;
  bool kernelBoundedBelow = false;
  bool gAtMostCritical = false;
  bool lowConfidence = false;
  // k exceeds the threshold past which inclusion arguments could enlarge the
  // region; no claims are derived from it, but verdicts carry a note.
  bool embeddingExtensionPossible = false;

  int oBar() const { return o > 2 ? o : 2; }
  bool sharpnessApplies() const {
    return allAlphaZero && kernelBoundedBelow && gAtMostCritical;
  }
};

SmoothingProfile build_profile(int dim, const Rat& d, int o, Scalar a0,
                               A0Source a0Source, const BlockStructure& blocks,
                               bool kernelBoundedBelow,
                               bool lowConfidence = false);

struct Vec3 {
  Scalar x, y, z;
};

struct Piece {
  std::string label;            // "Z", "Z1", "Z2", "L", "Z3", "Z4"
  std::vector<Vec3> vertices;   // 3 for triangles, 2 for the segment L
};

// The plane (g+k)(x-y) + z = g; height(x,y) = g - (g+k)(x-y).
struct Plane3 {
  Scalar slope;  // g + k
  Scalar rhs;    // g
};

struct RegionSet {
  CaseFlag branch = CaseFlag::Subcritical;
  std::vector<Piece> pieces;
  Plane3 planeP;
  Rat k = Rat(1);
  bool sharpnessApplies = false;
  bool embeddingNote = false;
  // Diagonal (1/p, s) regions: A is the fixed open triangle, B cuts it at
  // s = g (equal to A when g reaches the apex height).
  std::vector<std::array<Scalar, 2>> diagonalA;
  std::vector<std::array<Scalar, 2>> diagonalB;
};

RegionSet build_regions(const SmoothingProfile& profile);

enum class VerdictKind { ProvablyBounded, ProvablyUnbounded, Unknown };

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::string witness;  // which piece or obstruction decided
  std::string note;
};

// Decide (x, y, s) = (1/p, 1/q, s). Bounded verdicts need the point strictly
// below the region surface over the open shadow {0 < y < x < 1} (or the
// diagonal rules at x = y); unbounded verdicts need s strictly above the
// plane P with all sharpness hypotheses, or the diagonal obstruction s > g.
// Everything else, including borderline bands, is Unknown. Throws
// std::domain_error unless 0 < x, y < 1.
Verdict classify(const SmoothingProfile& profile, const RegionSet& regions,
                 const Rat& x, const Rat& y, const Rat& s);

struct SliceResult {
  // Boundary polygon of the s = 0 cross-section of the bounded region:
  // (0,0), X1, X2, (1,1) in the subcritical branch, (0,0), M, (1,1)
  // otherwise. Boundedness holds in the interior.
  std::vector<std::array<Scalar, 2>> polygon;
  // The line y = x - offset cut by the plane P at s = 0; below it (smaller y)
  // nothing is bounded when the sharpness hypotheses hold.
  Scalar excludedOffset;
  bool excludedLineApplies = false;
};

SliceResult lq_slice(const RegionSet& regions);

}  // namespace polyrad
