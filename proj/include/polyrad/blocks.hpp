#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "polyrad/rational.hpp"

namespace polyrad {

// Partition of the t-variables into consecutive blocks t = (t_1,...,t_m),
// block i of size sizes[i], with a singular weight |t_i|^{-alphas[i]} on each
// block. Requires 0 <= alphas[i] < sizes[i] so that the weight stays locally
// integrable.
struct BlockStructure {
  std::vector<int> sizes;
  std::vector<Rat> alphas;

  int dim() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }
  int count() const { return static_cast<int>(sizes.size()); }

  void validate() const {
    if (sizes.empty() || sizes.size() != alphas.size())
      throw std::invalid_argument("block sizes/alphas mismatch");
    for (size_t i = 0; i < sizes.size(); ++i) {
      if (sizes[i] < 1) throw std::invalid_argument("block size must be >= 1");
      if (alphas[i] < 0 || alphas[i] >= Rat(sizes[i]))
        throw std::invalid_argument(
            "block weight exponent must satisfy 0 <= alpha < block size");
    }
  }

  bool all_alpha_zero() const {
    for (const auto& a : alphas)
      if (a != 0) return false;
    return true;
  }

  bool all_singleton() const {
    for (int s : sizes)
      if (s != 1) return false;
    return true;
  }

  // k = 1 + sum of the alphas.
  Rat total_singularity() const {
    Rat k = 1;
    for (const auto& a : alphas) k += a;
    return k;
  }

  // min over blocks of (size - alpha); feeds the g = min(a0, ...) formula.
  Rat min_block_margin() const {
    Rat m = Rat(sizes[0]) - alphas[0];
    for (size_t i = 1; i < sizes.size(); ++i)
      m = rat_min(m, Rat(sizes[i]) - alphas[i]);
    return m;
  }

  // Per-variable alpha (first variable of each block carries the block's
  // alpha when blocks are singletons; only valid query in that case).
  std::vector<Rat> per_variable_alphas() const {
    std::vector<Rat> out;
    for (size_t i = 0; i < sizes.size(); ++i)
      for (int j = 0; j < sizes[i]; ++j) out.push_back(alphas[i]);
    return out;
  }

  static BlockStructure all_ones(int n) {
    BlockStructure b;
    b.sizes.assign(n, 1);
    b.alphas.assign(n, Rat(0));
    return b;
  }
};

}  // namespace polyrad
