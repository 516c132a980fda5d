#pragma once

#include <cstdint>
#include <random>

#include "pautom/numbers.hpp"

namespace pautom {

/// Engine derived from (seed, sample index, stream tag). Every Monte Carlo
/// sample owns its engine, so results do not depend on how work is split
/// across workers.
inline std::mt19937_64 make_sample_engine(std::uint64_t seed, std::uint64_t index,
                                          std::uint64_t tag = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag),
                    static_cast<std::uint32_t>(tag >> 32)};
  return std::mt19937_64(seq);
}

/// Exact uniform draw from [0, bound) by rejection on the top bit window.
BigCount uniform_below(std::mt19937_64& eng, const BigCount& bound);

/// Uniform double in [0,1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace pautom
