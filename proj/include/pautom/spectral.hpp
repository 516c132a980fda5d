#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "pautom/numbers.hpp"
#include "pautom/tree_action.hpp"
#include "pautom/wreath.hpp"

namespace pautom {

/// Orbit structure of the leaf-level partial injection. Injectivity rules
/// out tails feeding into a cycle, so every leaf either lies on a cycle or
/// on a path that dies; cycle lengths sum with the transient count to 2^n.
struct CycleDecomposition {
  std::vector<std::uint64_t> cycle_lengths;  // sorted ascending
  std::uint64_t transient_count = 0;
};

/// Exact eigenvalue multiset of an action matrix: 0 with the stated
/// multiplicity plus, for each cycle of length k, all k-th roots of unity.
struct SpectralMeasure {
  int depth = 0;
  std::uint64_t zero_multiplicity = 0;
  std::vector<std::uint64_t> cycle_lengths;  // sorted ascending

  std::uint64_t dim() const { return 1ULL << depth; }

  bool operator==(const SpectralMeasure& o) const {
    return depth == o.depth && zero_multiplicity == o.zero_multiplicity &&
           cycle_lengths == o.cycle_lengths;
  }
};

/// Leaves that stay in the domain of every power of x, computed from the
/// definition: intersect dom(x^m) for m = 1..2^n. A dying orbit visits
/// distinct leaves, so nothing changes past m = 2^n. Returned sorted,
/// 1-based.
std::vector<std::uint64_t> surviving_set(const WreathElement& x);
std::vector<std::uint64_t> surviving_set(const ActionMatrix& a);

CycleDecomposition cycle_decomposition(const WreathElement& x);
CycleDecomposition cycle_decomposition(const ActionMatrix& a);

/// |surviving set| = total length of all cycles. Computed via cycles.
std::uint64_t ultimate_rank(const WreathElement& x);
std::uint64_t ultimate_rank(const ActionMatrix& a);

SpectralMeasure spectral_measure(const WreathElement& x);
SpectralMeasure spectral_measure(const ActionMatrix& a);

/// k-th moment: sum of eigenvalue k-th powers over 2^n. Real and rational:
/// a length-L cycle contributes L exactly when L divides k.
BigRational moment(const SpectralMeasure& m, std::uint64_t k);

/// trace(A^k) via sparse iteration; cross-check for moment.
std::uint64_t trace_of_power(const ActionMatrix& a, std::uint64_t k);

/// traces of A^1..A^k_max in one sweep of sparse powers.
std::vector<std::uint64_t> traces_of_powers(const ActionMatrix& a, std::uint64_t k_max);

/// Integral of a continuous function on the closed unit disc against the
/// measure: (1/2^n) [zeros * f(0) + sum over cycles of f at roots of unity].
std::complex<double> integrate(
    const SpectralMeasure& m,
    const std::function<std::complex<double>(std::complex<double>)>& f);

/// Explicit eigenvalue list, sorted by (modulus, argument folded to [0,2pi)).
std::vector<std::complex<double>> exact_eigenvalues(const SpectralMeasure& m);

inline constexpr int kDenseOracleMaxDepth = 6;

/// Numeric eigenvalues of the dense 0/1 matrix, an eigensolver route that is
/// independent of the cycle bookkeeping. Refuses depth > 6 (matrix > 64x64).
std::vector<std::complex<double>> eigenvalues_dense_oracle(const WreathElement& x);
std::vector<std::complex<double>> eigenvalues_dense_oracle(const ActionMatrix& a);

/// Multiset comparison by nearest-unused pairing. Distinct exact eigenvalues
/// here are separated by at least 2*pi/(64*63), far above the tolerance, so
/// greedy nearest matching is the optimal assignment.
bool eigenvalues_match(const std::vector<std::complex<double>>& exact,
                       const std::vector<std::complex<double>>& numeric,
                       double tolerance = 1e-9);

}  // namespace pautom
