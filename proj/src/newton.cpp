#include "polyrad/newton.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "polyrad/lp.hpp"
#include "polyrad/rng.hpp"

namespace polyrad {

namespace {

// Is p inside conv(pts) + positive octant? Exact feasibility LP.
bool octant_hull_contains(const std::vector<std::vector<Rat>>& pts,
                          const std::vector<Rat>& p) {
  if (pts.empty()) return false;
  const int n = static_cast<int>(p.size());
  lp::Problem lpb;
  std::vector<int> lambda;
  for (size_t j = 0; j < pts.size(); ++j) lambda.push_back(lpb.add_var());
  // sum lambda = 1
  {
    std::vector<std::pair<int, Rat>> row;
    for (int v : lambda) row.push_back({v, Rat(1)});
    lpb.add_constraint(row, lp::Rel::Eq, Rat(1));
  }
  // sum lambda_j pts[j][i] <= p[i]
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, Rat>> row;
    for (size_t j = 0; j < pts.size(); ++j) row.push_back({lambda[j], pts[j][i]});
    lpb.add_constraint(row, lp::Rel::Le, p[i]);
  }
  lpb.set_objective({});
  return lpb.solve().status == lp::Status::Optimal;
}

// Scale a strictly positive rational vector to the primitive integer vector
// pointing the same way.
std::vector<Rat> primitive_positive(const std::vector<Rat>& w) {
  mpz_class l = 1;
  for (const auto& q : w) l = l / gcd(l, q.get_den()) * q.get_den();
  mpz_class g = 0;
  std::vector<mpz_class> ints;
  for (const auto& q : w) {
    mpz_class v = q.get_num() * (l / q.get_den());
    ints.push_back(v);
    g = gcd(g, v);
  }
  std::vector<Rat> out;
  for (auto& v : ints) out.emplace_back(v / g);
  return out;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Max-slack certification: does the vertex-id set M appear as the exact
// argmin of some strictly positive functional? Returns the witness normal
// when it does.
bool certify_face(const std::vector<std::vector<Rat>>& verts,
                  const std::vector<int>& M, std::vector<Rat>* normal_out) {
  const int n = static_cast<int>(verts[0].size());
  lp::Problem lpb;
  std::vector<int> wtil;  // w_i = 1 + wtil_i
  for (int i = 0; i < n; ++i) wtil.push_back(lpb.add_var());
  const int s = lpb.add_free_var();

  std::set<int> mem(M.begin(), M.end());
  const auto& v0 = verts[M[0]];
  auto diff_row = [&](const std::vector<Rat>& v) {
    std::vector<std::pair<int, Rat>> row;
    Rat const_part = 0;  // contribution of the fixed +1 in w_i = 1 + wtil_i
    for (int i = 0; i < n; ++i) {
      Rat d = v[i] - v0[i];
      if (d != 0) row.push_back({wtil[i], d});
      const_part += d;
    }
    return std::make_pair(row, const_part);
  };

  for (int id : M) {
    if (id == M[0]) continue;
    auto [row, cpart] = diff_row(verts[id]);
    lpb.add_constraint(row, lp::Rel::Eq, -cpart);
  }
  for (size_t id = 0; id < verts.size(); ++id) {
    if (mem.count(static_cast<int>(id))) continue;
    auto [row, cpart] = diff_row(verts[id]);
    row.push_back({s, Rat(-1)});
    lpb.add_constraint(row, lp::Rel::Ge, -cpart);
  }
  lpb.add_constraint({{s, Rat(1)}}, lp::Rel::Le, Rat(1));
  lpb.set_objective({{s, Rat(1)}}, /*maximize=*/true);

  auto res = lpb.solve();
  if (res.status != lp::Status::Optimal) return false;
  if (res.x[s] <= 0) return false;
  std::vector<Rat> w(n);
  for (int i = 0; i < n; ++i) w[i] = Rat(1) + res.x[wtil[i]];
  *normal_out = primitive_positive(w);
  return true;
}

std::vector<int> argmin_set(const std::vector<std::vector<Rat>>& verts,
                            const std::vector<Rat>& w) {
  Rat best;
  bool first = true;
  for (const auto& v : verts) {
    Rat d = dot(w, v);
    if (first || d < best) {
      best = d;
      first = false;
    }
  }
  std::vector<int> ids;
  for (size_t i = 0; i < verts.size(); ++i)
    if (dot(w, verts[i]) == best) ids.push_back(static_cast<int>(i));
  return ids;
}

}  // namespace

int affine_rank(const std::vector<std::vector<Rat>>& pts) {
  if (pts.size() <= 1) return 0;
  const size_t n = pts[0].size();
  std::vector<std::vector<Rat>> rows;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rat> r(n);
    for (size_t j = 0; j < n; ++j) r[j] = pts[i][j] - pts[0][j];
    rows.push_back(std::move(r));
  }
  // Gaussian elimination over Q.
  int rank = 0;
  size_t col = 0;
  while (col < n && rank < static_cast<int>(rows.size())) {
    int piv = -1;
    for (size_t i = rank; i < rows.size(); ++i) {
      if (rows[i][col] != 0) {
        piv = static_cast<int>(i);
        break;
      }
    }
    if (piv < 0) {
      ++col;
      continue;
    }
    std::swap(rows[rank], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == rank) continue;
      if (rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[rank][col];
      for (size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
    ++col;
  }
  return rank;
}

NewtonPolyhedron build_polyhedron_from_points(
    int dim, std::vector<std::vector<Rat>> pts) {
  if (pts.empty()) throw std::invalid_argument("polyhedron needs points");
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("point dimension mismatch");
    for (const auto& c : p)
      if (c < 0) throw std::invalid_argument("negative point coordinate");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  NewtonPolyhedron N;
  N.dim = dim;
  N.generators = std::move(pts);
  for (size_t i = 0; i < N.generators.size(); ++i) {
    std::vector<std::vector<Rat>> others;
    for (size_t j = 0; j < N.generators.size(); ++j)
      if (j != i) others.push_back(N.generators[j]);
    if (others.empty() || !octant_hull_contains(others, N.generators[i]))
      N.vertex_ids.push_back(static_cast<int>(i));
  }
  return N;
}

NewtonPolyhedron build_polyhedron(const SparsePolynomial& S) {
  std::vector<std::vector<Rat>> pts;
  for (const auto& [e, c] : S.terms()) pts.push_back(rats_from_ints(e));
  return build_polyhedron_from_points(S.dim(), std::move(pts));
}

Rat newton_distance(const NewtonPolyhedron& N) {
  const auto verts = N.vertices();
  const int n = N.dim;
  lp::Problem lpb;
  const int t = lpb.add_var();
  std::vector<int> lambda;
  for (size_t j = 0; j < verts.size(); ++j) lambda.push_back(lpb.add_var());
  {
    std::vector<std::pair<int, Rat>> row;
    for (int v : lambda) row.push_back({v, Rat(1)});
    lpb.add_constraint(row, lp::Rel::Eq, Rat(1));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, Rat>> row;
    row.push_back({t, Rat(1)});
    for (size_t j = 0; j < verts.size(); ++j)
      row.push_back({lambda[j], -verts[j][i]});
    lpb.add_constraint(row, lp::Rel::Ge, Rat(0));
  }
  lpb.set_objective({{t, Rat(1)}});
  auto res = lpb.solve();
  if (res.status != lp::Status::Optimal)
    throw std::logic_error("newton_distance: LP did not solve");
  return res.x[t];
}

DiagonalSupport diagonal_support(const NewtonPolyhedron& N) {
  const Rat d = newton_distance(N);
  const auto verts = N.vertices();
  const int n = N.dim;

  // Feasible set: b >= 0, sum b = 1, b.v >= d for all vertices. Every point
  // of it is an optimal dual of the distance LP. Lexicographically smallest
  // element via sequential minimization.
  std::vector<Rat> fixed;
  for (int k = 0; k < n; ++k) {
    lp::Problem lpb;
    std::vector<int> b;
    for (int i = 0; i < n; ++i) b.push_back(lpb.add_var());
    {
      std::vector<std::pair<int, Rat>> row;
      for (int v : b) row.push_back({v, Rat(1)});
      lpb.add_constraint(row, lp::Rel::Eq, Rat(1));
    }
    for (const auto& v : verts) {
      std::vector<std::pair<int, Rat>> row;
      for (int i = 0; i < n; ++i) row.push_back({b[i], v[i]});
      lpb.add_constraint(row, lp::Rel::Ge, d);
    }
    for (size_t i = 0; i < fixed.size(); ++i)
      lpb.add_constraint({{b[static_cast<int>(i)], Rat(1)}}, lp::Rel::Eq,
                         fixed[i]);
    lpb.set_objective({{b[k], Rat(1)}});
    auto res = lpb.solve();
    if (res.status != lp::Status::Optimal)
      throw std::logic_error("diagonal_support: LP did not solve");
    fixed.push_back(res.x[b[k]]);
  }

  DiagonalSupport out;
  out.b = fixed;
  Rat mn;
  bool first = true;
  for (const auto& v : verts) {
    Rat dv = dot(out.b, v);
    if (first || dv < mn) {
      mn = dv;
      first = false;
    }
  }
  out.value = mn;
  return out;
}

std::vector<Face> enumerate_compact_faces(const NewtonPolyhedron& N) {
  const auto verts = N.vertices();
  const int n = N.dim;
  const int nv = static_cast<int>(verts.size());

  std::set<std::vector<int>> candidates;
  for (int i = 0; i < nv; ++i) candidates.insert({i});
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) candidates.insert({i, j});

  if (n == 3 && nv >= 3) {
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j) {
        for (int k = j + 1; k < nv; ++k) {
          // Normal of the plane through three points via exact cross product.
          std::vector<Rat> u(3), v(3);
          for (int c = 0; c < 3; ++c) {
            u[c] = verts[j][c] - verts[i][c];
            v[c] = verts[k][c] - verts[i][c];
          }
          std::vector<Rat> w = {u[1] * v[2] - u[2] * v[1],
                                u[2] * v[0] - u[0] * v[2],
                                u[0] * v[1] - u[1] * v[0]};
          if (w[0] == 0 && w[1] == 0 && w[2] == 0) continue;
          if (w[0] < 0 || w[1] < 0 || w[2] < 0) {
            bool all_nonpos = w[0] <= 0 && w[1] <= 0 && w[2] <= 0;
            if (!all_nonpos) continue;
            for (auto& c : w) c = -c;
          }
          if (w[0] <= 0 || w[1] <= 0 || w[2] <= 0) continue;
          const Rat cval = dot(w, verts[i]);
          bool supports = true;
          for (const auto& p : verts) {
            if (dot(w, p) < cval) {
              supports = false;
              break;
            }
          }
          if (supports) candidates.insert(argmin_set(verts, w));
        }
      }
    }
  } else if (n >= 4) {
    // Randomized positive normals with a fixed seed; the certification pass
    // below keeps only exact faces, and intersection closure fills in lower
    // dimensional ones.
    Rng rng(0x706F6C79726164ULL);
    for (int trial = 0; trial < 800; ++trial) {
      std::vector<Rat> w(n);
      for (int i = 0; i < n; ++i)
        w[i] = Rat(static_cast<long>(1 + rng.below(10000)));
      candidates.insert(argmin_set(verts, w));
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<int>> cur(candidates.begin(), candidates.end());
      for (size_t a = 0; a < cur.size(); ++a) {
        for (size_t b = a + 1; b < cur.size(); ++b) {
          std::vector<int> inter;
          std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(),
                                cur[b].end(), std::back_inserter(inter));
          if (!inter.empty() && candidates.insert(inter).second) grew = true;
        }
      }
    }
  }

  std::vector<Face> faces;
  std::set<std::vector<int>> seen;
  for (const auto& M : candidates) {
    std::vector<Rat> w;
    if (!certify_face(verts, M, &w)) continue;
    if (!seen.insert(M).second) continue;
    Face f;
    f.normal = w;
    f.value = dot(w, verts[M[0]]);
    f.vertex_ids = M;
    for (const auto& g : N.generators)
      if (dot(w, g) == f.value) f.members.push_back(g);
    f.dim = affine_rank(f.members);
    faces.push_back(std::move(f));
  }

  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.members < b.members;
  });
  return faces;
}

SparsePolynomial face_polynomial(const SparsePolynomial& S, const Face& F) {
  std::vector<Term> terms;
  for (const auto& [e, c] : S.terms()) {
    const auto re = rats_from_ints(e);
    for (const auto& m : F.members) {
      if (m == re) {
        terms.push_back({e, c});
        break;
      }
    }
  }
  if (terms.empty())
    throw std::logic_error("face_polynomial: face has no members in S");
  return SparsePolynomial::make(S.dim(), terms);
}

NewtonPolyhedron rescale_polyhedron(const NewtonPolyhedron& N,
                                    const BlockStructure& blocks) {
  blocks.validate();
  if (!blocks.all_singleton())
    throw std::invalid_argument(
        "rescale_polyhedron requires one-dimensional blocks");
  if (blocks.dim() != N.dim)
    throw std::invalid_argument("rescale_polyhedron: block dimension mismatch");
  const auto alphas = blocks.per_variable_alphas();
  std::vector<std::vector<Rat>> pts;
  for (const auto& g : N.generators) {
    std::vector<Rat> p(g.size());
    for (size_t i = 0; i < g.size(); ++i) p[i] = g[i] / (Rat(1) - alphas[i]);
    pts.push_back(std::move(p));
  }
  return build_polyhedron_from_points(N.dim, std::move(pts));
}

}  // namespace polyrad
