#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pautom/numbers.hpp"
#include "pautom/sampling.hpp"
#include "pautom/wreath.hpp"

namespace pautom {

/// Exact per-level aggregates over the whole semigroup.
struct RankTotals {
  int level = 0;
  BigCount element_count;        // N_n
  BigCount total_rank;           // sum of leaf-domain sizes
  BigCount total_ultimate_rank;  // sum of ultimate ranks
  BigRational p;                 // total ultimate rank / (2^n N_n)
};

/// Exhaustive totals; refuses level > 3 (use Monte Carlo instead). The total
/// rank is cross-checked against the branch recursion and the closed form,
/// which must agree with the enumeration.
RankTotals totals_exact(int level);

inline constexpr int kExhaustiveTotalsCap = 3;

/// 2^(n-1)(1 + N_n) = 2^(2^(n+1) + n - 2).
BigCount closed_form_total_rank(int level);

/// Seeded with R'_1 = 8: R'_k = 4 R'_{k-1} (1 + N_{k-1}).
BigCount recursive_total_rank(int level);

/// 2^(2^n + n - 2). Fails its own base case (gives 2 instead of 8 at n=1);
/// kept only so the verification report can flag it.
BigCount printed_total_rank_form(int level);

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo mean of ultimate_rank(x)/2^n over uniform x; an unbiased
/// estimator of p_n. Per-sample engines derive from (seed, index, level), so
/// the result is independent of the worker count.
Estimate p_estimate(int level, std::uint64_t samples, std::uint64_t seed,
                    int workers = 1, SampleMode mode = SampleMode::Exact);

struct ConvergenceRow {
  int level = 0;
  std::uint64_t samples = 0;
  double mean_norm_ult_rank = 0.0;  // mean of ultimate rank / 2^n; also the
                                    // mean of the |z|^2 functional
  double standard_error = 0.0;      // of mean_norm_ult_rank
  double mass_at_zero = 0.0;        // 1 - mean_norm_ult_rank, per sample
  double f_id = 0.0;                // mean |integral of z|
  double f_re_z = 0.0;              // mean |integral of Re z|
  double f_re_z2 = 0.0;             // mean |integral of Re z^2|
  double bound = 0.0;               // (3/4)^(n-1) * 3/7
};

struct ConvergenceConfig {
  int level_min = 1;
  int level_max = 1;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  bool exhaustive = false;  // enumerate instead of sampling; level <= 3
  SampleMode mode = SampleMode::Exact;
};

/// One row per level. Per-sample functionals are exact dyadic rationals
/// accumulated as integers, so output is bit-identical for a given
/// (seed, parameters) whatever the worker count.
std::vector<ConvergenceRow> convergence_experiment(const ConvergenceConfig& cfg);

/// CSV with the mandatory header
/// n,samples,mean_norm_ult_rank,stderr,mass_at_zero,f_id,f_re_z,f_re_z2,bound
/// preceded by a seed comment line. Decimals carry 12 significant digits.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows,
                            const ConvergenceConfig& cfg);

struct Claim {
  std::string claim;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  int level_cap = 0;
  std::vector<Claim> claims;
  bool all_pass() const;
};

/// Exhaustively checks the counting and rank laws up to level_cap (<= 3):
/// cardinality closed form vs recursion vs enumeration, total rank three
/// ways, ultimate rank bounds, the p-decay chain, the nonzero-eigenvalue
/// count against the dense oracle at level 2, and the erratum flag for the
/// printed total-rank exponent.
VerificationReport verify_suite(int level_cap);

// --- goodness-of-fit utilities -----------------------------------------

double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected);

/// Upper tail P(X > x) for chi-square with df degrees of freedom.
double chi_square_survival(double x, double df);

/// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

}  // namespace pautom
