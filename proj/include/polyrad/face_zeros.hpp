#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyrad/newton.hpp"
#include "polyrad/polynomial.hpp"

namespace polyrad {

enum class ZeroMethod {
  MonomialTrivial,   // single-term face sub-sum, no zeros away from the axes
  ExactUnivariate,   // face exponents collinear: reduced to one-variable root
                     // multiplicities, computed exactly
  NumericSampling,   // Newton sampling over sign orthants + derivative probe
  UserOverride,      // caller supplied the order
};

const char* zero_method_name(ZeroMethod m);

struct FaceZeroReport {
  int order = 0;  // max vanishing order of the face sub-sum on (R\0)^n
  ZeroMethod method = ZeroMethod::MonomialTrivial;
  bool lowConfidence = false;  // sampling path with thin margins
  int zerosFound = 0;          // distinct zero loci located (clusters for the
                               // sampling path, distinct roots for the exact one)
};

struct ZeroOrderOptions {
  std::optional<int> overrideOrder;  // trust the caller, skip the analysis
  bool forceNumeric = false;  // use the sampling path even where the exact
                              // reduction applies (cross-checks)
  std::uint64_t seed = 1;
  int startsPerOrthant = 40;
  int newtonIters = 800;
};

// Vanishing order of the face sub-sum of S on (R\0)^n for one compact face.
// Exponents of S must be integers (they are; the rescaled polyhedron is never
// a valid input here).
FaceZeroReport zero_order_on_face(const SparsePolynomial& S, const Face& face,
                                  const ZeroOrderOptions& opt = {});

struct ZeroOrderSummary {
  int order = 0;  // max over the supplied faces
  ZeroMethod method = ZeroMethod::MonomialTrivial;  // method of an attaining
                                                    // face, exact preferred
  bool lowConfidence = false;
  std::vector<FaceZeroReport> perFace;  // aligned with the input face list;
                                        // empty when overridden
};

ZeroOrderSummary max_zero_order(const SparsePolynomial& S,
                                const std::vector<Face>& faces,
                                const ZeroOrderOptions& opt = {});

// Convenience wrapper: build the polyhedron, enumerate compact faces, take
// the max.
ZeroOrderSummary compute_zero_order(const SparsePolynomial& S,
                                    const ZeroOrderOptions& opt = {});

}  // namespace polyrad
