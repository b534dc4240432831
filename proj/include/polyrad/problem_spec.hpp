#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyrad/blocks.hpp"
#include "polyrad/polynomial.hpp"
#include "polyrad/rational.hpp"

namespace polyrad {

// K(t) = (product over blocks of |t_i|^{-alpha_i}) * kappa(t) with kappa
// bounded. WeightOnly means kappa == 1; then the floor is exactly 1.
struct KernelSpec {
  enum class Kind { WeightOnly, WeightTimesBounded };
  Kind kind = Kind::WeightOnly;
  Rat radius = Rat(1, 4);  // support box half-width
  Rat floor = Rat(1);      // kappa >= floor on the box; 0 = no bound known
};

struct SublevelConfig {
  double r = 0.25;
  double epsMin = 1e-8;
  double epsMax = 1e-2;
  int epsCount = 13;
  long long budget = 1000000;
  std::uint64_t seed = 1;
};

struct SharpnessJob {
  Rat pInv = Rat(1, 2);
  Rat qInv = Rat(1, 4);
  Rat s = Rat(1, 10);
  std::vector<double> rList = {0.125, 0.0625, 0.03125, 0.015625};
  std::vector<int> gridCells;  // n+1 entries; default set by the loader
  int cutoff = 8;              // initial window sharpening factor
  std::uint64_t seed = 1;
};

struct ProblemSpec {
  std::string name;
  int dimension = 1;
  SparsePolynomial phase;
  BlockStructure blocks;
  KernelSpec kernel;
  std::optional<int> oOverride;
  std::optional<Rat> a0Override;
  Rat r0 = Rat(1, 4);  // box radius below which the growth law is trusted
  SublevelConfig sublevel;
  SharpnessJob sharpness;
};

struct ParseDiagnostic {
  int line = 0;
  std::string field;
  std::string message;
};

class SpecError : public std::runtime_error {
 public:
  SpecError(std::string summary, std::vector<ParseDiagnostic> diags);
  const std::vector<ParseDiagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<ParseDiagnostic> diags_;
};

// Parses and fully validates the declarative problem document. Grammar:
// `key = value` lines, `#` comments, values are integers, floats, quoted
// strings ("1/2" for exact rationals), arrays [a, b, ...], or one-level
// inline tables { k = v, ... }. `term` and `block` may repeat. Collects
// every violation and throws SpecError carrying (line, field, message).
ProblemSpec parse_spec(const std::string& text);

// parse_spec on the contents of `path`; file errors become SpecError.
ProblemSpec load_spec(const std::string& path);

}  // namespace polyrad
