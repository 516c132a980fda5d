#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "pautom/numbers.hpp"
#include "pautom/rng.hpp"
#include "pautom/wreath.hpp"

namespace pautom {

enum class SampleMode {
  /// Big-integer categorical draws; exactly uniform at every level.
  Exact,
  /// Double-precision weights. Branch probabilities of order 2^(-2^k)
  /// underflow, so partial and empty tops essentially never appear at deep
  /// nodes. Only meant for levels where exact arithmetic gets expensive.
  FloatApprox,
};

/// Exact uniform sampler over the level-n partial wreath power.
///
/// At each node of level k the top I2Element is drawn with probability
/// N_{k-1}^{|dom|} / N_k via one uniform big integer below N_k, then the
/// defined branches are filled recursively (branch 1 first).
class UniformSampler {
 public:
  explicit UniformSampler(int level, SampleMode mode = SampleMode::Exact);

  int level() const { return level_; }
  SampleMode mode() const { return mode_; }

  WreathElement sample(std::mt19937_64& eng) const;

  /// Deterministic per-index draw: derives the engine from
  /// (seed, index, tag). Same triple, same element, on any worker.
  WreathElement sample_indexed(std::uint64_t seed, std::uint64_t index,
                               std::uint64_t tag) const;

 private:
  WreathElement::Ptr sample_node(int k, std::mt19937_64& eng) const;

  int level_;
  SampleMode mode_;
  std::vector<BigCount> totals_;                      // totals_[k] = N_k
  std::vector<std::array<BigCount, 7>> cumulative_;   // per level, canonical order
  std::vector<std::array<double, 7>> cumulative_approx_;
};

}  // namespace pautom
