#include "polyrad/lp.hpp"

#include <stdexcept>

namespace polyrad::lp {

namespace {

// Full-tableau simplex core. Rows 0..m-1 hold the constraints, row m holds
// reduced costs; column n holds the right hand side, with tab[m][n] equal to
// minus the current objective value.
struct Tableau {
  int m = 0;
  int n = 0;
  std::vector<std::vector<Rat>> tab;
  std::vector<int> basis;

  void pivot(int r, int c) {
    const Rat piv = tab[r][c];
    for (int j = 0; j <= n; ++j) tab[r][j] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      if (tab[i][c] == 0) continue;
      const Rat f = tab[i][c];
      for (int j = 0; j <= n; ++j) tab[i][j] -= f * tab[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost
  // (restricted to columns < limit), leaving = min ratio with lowest basis
  // index tie-break. Returns false when optimal, throws on unbounded.
  bool step(int limit) {
    int enter = -1;
    for (int j = 0; j < limit; ++j) {
      if (tab[m][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      Rat ratio = tab[i][n] / tab[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw Status::Unbounded;
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

Result solve_standard(std::vector<std::vector<Rat>> A, std::vector<Rat> b,
                      std::vector<Rat> c) {
  const int m = static_cast<int>(A.size());
  const int n = m == 0 ? static_cast<int>(c.size())
                       : static_cast<int>(A[0].size());
  if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n)
    throw std::invalid_argument("lp: inconsistent system dimensions");

  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != n)
      throw std::invalid_argument("lp: ragged constraint matrix");
    if (b[i] < 0) {
      for (auto& v : A[i]) v = -v;
      b[i] = -b[i];
    }
  }

  Tableau t;
  t.m = m;
  t.n = n + m;  // artificials occupy columns n..n+m-1
  t.tab.assign(m + 1, std::vector<Rat>(t.n + 1, Rat(0)));
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.tab[i][j] = A[i][j];
    t.tab[i][n + i] = 1;
    t.tab[i][t.n] = b[i];
    t.basis[i] = n + i;
  }
  // Phase 1 cost row: minimize the sum of artificials.
  for (int j = 0; j < n; ++j) {
    Rat s = 0;
    for (int i = 0; i < m; ++i) s += t.tab[i][j];
    t.tab[m][j] = -s;
  }
  {
    Rat s = 0;
    for (int i = 0; i < m; ++i) s += t.tab[i][t.n];
    t.tab[m][t.n] = -s;
  }

  Result res;
  try {
    while (t.step(t.n)) {
    }
  } catch (Status) {
    throw std::logic_error("lp: phase 1 reported unbounded");
  }
  if (t.tab[m][t.n] != 0) {
    res.status = Status::Infeasible;
    return res;
  }
  // Remove artificials from the basis where possible; rows that cannot be
  // repaired are redundant and stay inert (zero row, zero rhs).
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (t.tab[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col >= 0) t.pivot(i, col);
  }

  // Phase 2 cost row.
  for (int j = 0; j <= t.n; ++j) t.tab[m][j] = 0;
  for (int j = 0; j < n; ++j) t.tab[m][j] = c[j];
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] >= n) continue;
    const Rat cb = c[t.basis[i]];
    if (cb == 0) continue;
    for (int j = 0; j <= t.n; ++j) t.tab[m][j] -= cb * t.tab[i][j];
  }
  try {
    while (t.step(n)) {  // artificial columns barred from re-entering
    }
  } catch (Status) {
    res.status = Status::Unbounded;
    return res;
  }

  res.status = Status::Optimal;
  res.x.assign(n, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) res.x[t.basis[i]] = t.tab[i][t.n];
  }
  res.objective = -t.tab[m][t.n];
  return res;
}

int Problem::add_var() {
  VarInfo v;
  v.col_plus = ncols_++;
  vars_.push_back(v);
  return static_cast<int>(vars_.size()) - 1;
}

int Problem::add_free_var() {
  VarInfo v;
  v.col_plus = ncols_++;
  v.col_minus = ncols_++;
  vars_.push_back(v);
  return static_cast<int>(vars_.size()) - 1;
}

void Problem::add_constraint(const std::vector<std::pair<int, Rat>>& terms,
                             Rel rel, const Rat& rhs) {
  rows_.push_back(Row{terms, rel, rhs});
}

void Problem::set_objective(const std::vector<std::pair<int, Rat>>& terms,
                            bool maximize) {
  objective_ = terms;
  maximize_ = maximize;
}

Result Problem::solve() const {
  const int m = static_cast<int>(rows_.size());
  int slack = 0;
  for (const auto& r : rows_)
    if (r.rel != Rel::Eq) ++slack;
  const int n = ncols_ + slack;

  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> b(m, Rat(0));
  std::vector<Rat> c(n, Rat(0));

  int next_slack = ncols_;
  for (int i = 0; i < m; ++i) {
    const auto& r = rows_[i];
    for (const auto& [var, coef] : r.terms) {
      const auto& info = vars_.at(var);
      A[i][info.col_plus] += coef;
      if (info.col_minus >= 0) A[i][info.col_minus] -= coef;
    }
    if (r.rel == Rel::Le)
      A[i][next_slack++] = 1;
    else if (r.rel == Rel::Ge)
      A[i][next_slack++] = -1;
    b[i] = r.rhs;
  }
  for (const auto& [var, coef] : objective_) {
    const auto& info = vars_.at(var);
    const Rat eff = maximize_ ? -coef : coef;
    c[info.col_plus] += eff;
    if (info.col_minus >= 0) c[info.col_minus] -= eff;
  }

  Result inner = solve_standard(std::move(A), std::move(b), std::move(c));
  Result out;
  out.status = inner.status;
  if (inner.status != Status::Optimal) return out;
  out.x.reserve(vars_.size());
  for (const auto& info : vars_) {
    Rat v = inner.x[info.col_plus];
    if (info.col_minus >= 0) v -= inner.x[info.col_minus];
    out.x.push_back(v);
  }
  out.objective = maximize_ ? -inner.objective : inner.objective;
  return out;
}

}  // namespace polyrad::lp
