#pragma once

#include <vector>

#include "polyrad/blocks.hpp"
#include "polyrad/polynomial.hpp"
#include "polyrad/rational.hpp"

namespace polyrad {

// Compact face of the unbounded polyhedron conv(union of translated positive
// octants). Only faces with a strictly positive supporting normal are
// compact, and those are the ones enumerated here.
struct Face {
  std::vector<Rat> normal;  // primitive, strictly positive integer entries
  Rat value;                // min of normal.x over the polyhedron
  std::vector<std::vector<Rat>> members;  // generator points on the face
  std::vector<int> vertex_ids;            // indices into vertices()
  int dim = 0;                             // affine dimension of the face
};

struct NewtonPolyhedron {
  int dim = 0;
  // Deduplicated generator points (exponent vectors of the source
  // polynomial, or their rescaled images). Entries are nonnegative.
  std::vector<std::vector<Rat>> generators;
  // Indices of generators that are vertices of the polyhedron, sorted
  // lexicographically by coordinates.
  std::vector<int> vertex_ids;

  std::vector<std::vector<Rat>> vertices() const {
    std::vector<std::vector<Rat>> out;
    out.reserve(vertex_ids.size());
    for (int id : vertex_ids) out.push_back(generators[id]);
    return out;
  }
};

NewtonPolyhedron build_polyhedron(const SparsePolynomial& S);
NewtonPolyhedron build_polyhedron_from_points(int dim,
                                              std::vector<std::vector<Rat>> pts);

// Smallest t with (t,...,t) in the polyhedron.
Rat newton_distance(const NewtonPolyhedron& N);

struct DiagonalSupport {
  std::vector<Rat> b;  // nonnegative, sums to 1; lexicographically smallest
                       // among the optimal supporting normals
  Rat value;           // min over vertices of b.v, equals d * sum(b)
};

DiagonalSupport diagonal_support(const NewtonPolyhedron& N);

// All compact faces, sorted by (dim, members). Deterministic and exact in
// dimension <= 3; in higher dimension candidate maximal faces come from a
// fixed-seed batch of positive normals plus intersection closure, and every
// reported face is still certified exactly.
std::vector<Face> enumerate_compact_faces(const NewtonPolyhedron& N);

// Sub-sum of S over the exponents lying on the face.
SparsePolynomial face_polynomial(const SparsePolynomial& S, const Face& F);

// Image of the polyhedron under beta_i -> beta_i / (1 - alpha_i). Requires
// every block to be one-dimensional.
NewtonPolyhedron rescale_polyhedron(const NewtonPolyhedron& N,
                                    const BlockStructure& blocks);

// Affine rank helper (dimension of the affine hull of a point set).
int affine_rank(const std::vector<std::vector<Rat>>& pts);

}  // namespace polyrad
