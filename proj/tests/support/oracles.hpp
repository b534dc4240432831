#pragma once

// Brute-force rational oracles used to cross-check the simplex-backed
// production code. Everything here enumerates basic solutions of small
// systems directly (subset choice + Gaussian elimination), so it is
// exponential but exact and independent of the code under test.

#include <functional>
#include <optional>
#include <vector>

#include "polyrad/rational.hpp"

namespace oracles {

using polyrad::Rat;
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

// Exact solve of A x = b when A has full column rank and the system is
// consistent; nullopt otherwise.
inline std::optional<Vec> solve_exact(Mat A, Vec b) {
  const size_t m = A.size();
  const size_t n = m ? A[0].size() : 0;
  std::vector<int> pivot_row_of_col(n, -1);
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t sel = row;
    while (sel < m && A[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(A[sel], A[row]);
    std::swap(b[sel], b[row]);
    const Rat piv = A[row][col];
    for (size_t j = col; j < n; ++j) A[row][j] /= piv;
    b[row] /= piv;
    for (size_t r = 0; r < m; ++r) {
      if (r == row) continue;
      const Rat f = A[r][col];
      if (f == 0) continue;
      for (size_t j = col; j < n; ++j) A[r][j] -= f * A[row][j];
      b[r] -= f * b[row];
    }
    pivot_row_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (size_t col = 0; col < n; ++col)
    if (pivot_row_of_col[col] < 0) return std::nullopt;
  for (size_t r = row; r < m; ++r)
    if (b[r] != 0) return std::nullopt;
  Vec x(n, Rat(0));
  for (size_t col = 0; col < n; ++col) x[col] = b[pivot_row_of_col[col]];
  return x;
}

// Enumerate basic feasible solutions of {x >= 0 : A x = b}. Every vertex of
// the feasible set appears (supports are independent column subsets of size
// <= m, and we try all subsets of size <= m). Returns whether any exists.
inline bool for_each_bfs(const Mat& A, const Vec& b,
                         const std::function<void(const Vec&)>& fn) {
  const size_t m = A.size();
  const size_t n = m ? A[0].size() : 0;
  bool any = false;

  bool b_zero = true;
  for (const auto& v : b)
    if (v != 0) b_zero = false;
  if (b_zero) {
    any = true;
    fn(Vec(n, Rat(0)));
  }

  std::vector<size_t> pick;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (!pick.empty()) {
      Mat Asub(m, Vec(pick.size()));
      for (size_t r = 0; r < m; ++r)
        for (size_t k = 0; k < pick.size(); ++k) Asub[r][k] = A[r][pick[k]];
      if (auto sol = solve_exact(Asub, b)) {
        bool nonneg = true;
        for (const auto& v : *sol)
          if (v < 0) nonneg = false;
        if (nonneg) {
          Vec full(n, Rat(0));
          for (size_t k = 0; k < pick.size(); ++k) full[pick[k]] = (*sol)[k];
          any = true;
          fn(full);
        }
      }
    }
    if (pick.size() == m) return;
    for (size_t c = start; c < n; ++c) {
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return any;
}

// min c.x over {x >= 0 : A x = b}, by enumeration; nullopt when infeasible.
// (The true LP optimum when it is attained; enumeration cannot see rays.)
inline std::optional<Rat> min_over_bfs(const Mat& A, const Vec& b,
                                       const Vec& c) {
  std::optional<Rat> best;
  for_each_bfs(A, b, [&](const Vec& x) {
    Rat obj = 0;
    for (size_t i = 0; i < c.size(); ++i) obj += c[i] * x[i];
    if (!best || obj < *best) best = obj;
  });
  return best;
}

// Membership of p in conv(pts) + R^n_+.
inline bool in_hull_plus_octant(const std::vector<Vec>& pts, const Vec& p) {
  const size_t n = p.size();
  const size_t N = pts.size();
  Mat A(n + 1, Vec(N + n, Rat(0)));
  Vec b(n + 1, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < N; ++j) A[i][j] = pts[j][i];
    A[i][N + i] = 1;  // slack: sum lambda_j v_j + s = p
    b[i] = p[i];
  }
  for (size_t j = 0; j < N; ++j) A[n][j] = 1;
  b[n] = 1;
  return for_each_bfs(A, b, [](const Vec&) {});
}

// Smallest t with (t,...,t) in conv(pts) + R^n_+.
inline Rat distance(const std::vector<Vec>& pts) {
  const size_t n = pts[0].size();
  const size_t N = pts.size();
  // variables: t, lambda_1..N, s_1..n
  Mat A(n + 1, Vec(1 + N + n, Rat(0)));
  Vec b(n + 1, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    A[i][0] = 1;
    for (size_t j = 0; j < N; ++j) A[i][1 + j] = -pts[j][i];
    A[i][1 + N + i] = -1;  // t - sum lambda v_i - s_i = 0
  }
  for (size_t j = 0; j < N; ++j) A[n][1 + j] = 1;
  b[n] = 1;
  Vec c(1 + N + n, Rat(0));
  c[0] = 1;
  auto best = min_over_bfs(A, b, c);
  return *best;  // always feasible: t large enough covers any generator
}

// Lexicographically smallest b with b >= 0, sum b = 1, b.v >= d for every
// vertex v. The lex-min is attained at a vertex of the lifted polytope, so
// enumerating basic feasible solutions and taking the lex-min projection is
// exact.
inline Vec lex_min_support(const std::vector<Vec>& verts, const Rat& d) {
  const size_t n = verts[0].size();
  const size_t N = verts.size();
  // variables: b_1..n, u_1..N (surplus)
  Mat A(N + 1, Vec(n + N, Rat(0)));
  Vec b(N + 1, Rat(0));
  for (size_t v = 0; v < N; ++v) {
    for (size_t i = 0; i < n; ++i) A[v][i] = verts[v][i];
    A[v][n + v] = -1;  // b.v - u_v = d
    b[v] = d;
  }
  for (size_t i = 0; i < n; ++i) A[N][i] = 1;
  b[N] = 1;

  std::optional<Vec> best;
  for_each_bfs(A, b, [&](const Vec& x) {
    Vec proj(x.begin(), x.begin() + n);
    if (!best) {
      best = proj;
      return;
    }
    for (size_t i = 0; i < n; ++i) {
      if (proj[i] < (*best)[i]) {
        best = proj;
        return;
      }
      if (proj[i] > (*best)[i]) return;
    }
  });
  return *best;
}

}  // namespace oracles
