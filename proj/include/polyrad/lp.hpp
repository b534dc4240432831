#pragma once

#include <utility>
#include <vector>

#include "polyrad/rational.hpp"

namespace polyrad::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<Rat> x;  // values of the caller's variables
  Rat objective = 0;
};

// Exact two-phase dense simplex with Bland's rule: minimize c.x subject to
// A x = b, x >= 0. Sized for the small systems produced by the polyhedral
// code (tens of rows/columns).
Result solve_standard(std::vector<std::vector<Rat>> A, std::vector<Rat> b,
                      std::vector<Rat> c);

enum class Rel { Le, Eq, Ge };

// Incremental builder over nonnegative and free variables; free variables are
// split into differences of nonnegative pairs internally.
class Problem {
 public:
  int add_var();       // x >= 0
  int add_free_var();  // unconstrained sign

  void add_constraint(const std::vector<std::pair<int, Rat>>& terms, Rel rel,
                      const Rat& rhs);

  // Defaults to minimization; pass maximize=true to flip.
  void set_objective(const std::vector<std::pair<int, Rat>>& terms,
                     bool maximize = false);

  Result solve() const;

 private:
  struct VarInfo {
    int col_plus = -1;
    int col_minus = -1;  // >= 0 only for free variables
  };
  struct Row {
    std::vector<std::pair<int, Rat>> terms;
    Rel rel = Rel::Eq;
    Rat rhs = 0;
  };
  std::vector<VarInfo> vars_;
  std::vector<Row> rows_;
  std::vector<std::pair<int, Rat>> objective_;
  bool maximize_ = false;
  int ncols_ = 0;
};

}  // namespace polyrad::lp
